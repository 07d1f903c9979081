#ifndef SOCIALH_SIMULATE_HPP
#define SOCIALH_SIMULATE_HPP

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "socialh/corpus.hpp"
#include "socialh/types.hpp"

namespace socialh {

/// Lifetime citations of a paper whose authors have quality factors qs:
/// the l2-norm sqrt(sum q^2).
inline double joint_citation_total(std::span<const double> qs) {
    if (qs.empty()) {
        throw std::invalid_argument("joint_citation_total needs at least one quality factor");
    }
    double sum = 0.0;
    for (double q : qs) {
        if (!std::isfinite(q) || q < 0.0) {
            throw std::invalid_argument("quality factors must be finite and non-negative");
        }
        sum += q * q;
    }
    return std::sqrt(sum);
}

/// Integer citation total: nearest integer, halves rounded up.
inline Count round_citation_total(double total) {
    return static_cast<Count>(std::floor(total + 0.5));
}

/// Yearly citation counts of one paper under the triangular peak-decay model.
/// yearly[i] covers the (i+1)-th year of the citation window.
struct CitationSchedule {
    Count total = 0;
    int peak_offset = 1;
    int end_offset = 2;
    std::vector<Count> yearly;

    bool operator==(const CitationSchedule&) const = default;
};

/// The citation rate rises linearly from 0 to a peak at t = peak_offset and
/// falls linearly back to 0 at t = end_offset, with area `total`. Year k gets
/// the exact area over [k-1, k]; the areas are integerized by largest
/// remainder, ties going to the earlier year, so the sum is exactly `total`.
inline CitationSchedule triangular_schedule(Count total, int peak_offset, int end_offset) {
    if (total < 0) {
        throw std::invalid_argument("citation total must be non-negative");
    }
    if (peak_offset < 1 || end_offset <= peak_offset) {
        throw std::invalid_argument("triangular schedule needs 1 <= peak_offset < end_offset");
    }

    using Wide = __int128;
    const Wide end = end_offset;
    const Wide peak = peak_offset;
    const Wide rise_den = end * peak;
    const Wide fall_den = end * (end - peak);

    struct Share {
        Wide floor;
        Wide remainder;
        Wide denominator;
        int position;
    };
    std::vector<Share> shares;
    shares.reserve(static_cast<std::size_t>(end_offset));
    Wide assigned = 0;
    for (int k = 1; k <= end_offset; ++k) {
        // Area over [k-1, k], as num / den.
        const Wide num = k <= peak_offset ? Wide(total) * (2 * Wide(k) - 1)
                                          : Wide(total) * (2 * (end - k) + 1);
        const Wide den = k <= peak_offset ? rise_den : fall_den;
        shares.push_back({num / den, num % den, den, k - 1});
        assigned += num / den;
    }

    std::vector<const Share*> order;
    order.reserve(shares.size());
    for (const Share& s : shares) {
        order.push_back(&s);
    }
    std::stable_sort(order.begin(), order.end(), [](const Share* a, const Share* b) {
        return a->remainder * b->denominator > b->remainder * a->denominator;
    });

    CitationSchedule out{total, peak_offset, end_offset, {}};
    out.yearly.reserve(shares.size());
    for (const Share& s : shares) {
        out.yearly.push_back(static_cast<Count>(s.floor));
    }
    const auto leftover = static_cast<std::size_t>(Wide(total) - assigned);
    for (std::size_t i = 0; i < leftover; ++i) {
        ++out.yearly[static_cast<std::size_t>(order[i]->position)];
    }
    return out;
}

struct SimAuthor {
    std::string id;
    double q = 0.0;

    bool operator==(const SimAuthor&) const = default;
};

/// One endpoint: solo papers. Two endpoints: joint papers of that pair.
struct CollabEdge {
    std::vector<std::string> endpoints;
    Count papers_per_year = 1;

    bool operator==(const CollabEdge&) const = default;
};

struct CollabGraph {
    std::vector<SimAuthor> authors;
    std::vector<CollabEdge> edges;

    bool operator==(const CollabGraph&) const = default;
};

struct PeakDecayModel {
    int peak_offset = 3;
    int end_offset = 10;
};

class GraphError : public std::invalid_argument {
public:
    GraphError(std::size_t line, const std::string& what)
        : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline const SimAuthor* find_sim_author(const CollabGraph& g, std::string_view id) {
    auto it = std::find_if(g.authors.begin(), g.authors.end(),
                           [&](const SimAuthor& a) { return a.id == id; });
    return it == g.authors.end() ? nullptr : &*it;
}

inline void validate_graph(const CollabGraph& g) {
    std::set<std::string_view> ids;
    for (const SimAuthor& a : g.authors) {
        if (a.id.empty()) {
            throw GraphError(0, "author id must be non-empty");
        }
        if (!ids.insert(a.id).second) {
            throw GraphError(0, "duplicate author '" + a.id + "'");
        }
        if (!std::isfinite(a.q) || a.q < 0.0) {
            throw GraphError(0, "author '" + a.id + "' has an invalid quality factor");
        }
    }
    for (const CollabEdge& e : g.edges) {
        if (e.endpoints.empty() || e.endpoints.size() > 2) {
            throw GraphError(0, "an edge has one endpoint (self-loop) or two");
        }
        if (e.endpoints.size() == 2 && e.endpoints[0] == e.endpoints[1]) {
            throw GraphError(0, "edge joins '" + e.endpoints[0] +
                                    "' to itself; write solo papers as a one-endpoint edge");
        }
        for (const std::string& id : e.endpoints) {
            if (!ids.count(id)) {
                throw GraphError(0, "edge endpoint '" + id + "' is not a declared author");
            }
        }
        if (e.papers_per_year < 1) {
            throw GraphError(0, "papers_per_year must be at least 1");
        }
    }
}

/// Papers per year the author takes part in.
inline Count papers_per_year(const CollabGraph& g, std::string_view author) {
    Count total = 0;
    for (const CollabEdge& e : g.edges) {
        if (std::find(e.endpoints.begin(), e.endpoints.end(), author) != e.endpoints.end()) {
            total += e.papers_per_year;
        }
    }
    return total;
}

/// Same author, same q, same yearly output, but every paper written alone.
inline CollabGraph solo_ablation(const CollabGraph& g, std::string_view author) {
    const SimAuthor* a = find_sim_author(g, author);
    if (!a) {
        throw GraphError(0, "unknown author '" + std::string(author) + "'");
    }
    const Count papers = papers_per_year(g, author);
    CollabGraph out{{*a}, {}};
    if (papers > 0) {
        out.edges.push_back({{a->id}, papers});
    }
    return out;
}

/// Four authors with every author on exactly three papers a year. A1 writes
/// alone (q = 20); A2 (q = 17) only collaborates with A3 and A4, whose q is
/// sqrt(72) so that each joint paper with A2 totals sqrt(17^2 + 72) = 19.
inline CollabGraph fig3_fixture() {
    const double junior = std::sqrt(72.0);
    return CollabGraph{
        {{"A1", 20.0}, {"A2", 17.0}, {"A3", junior}, {"A4", junior}},
        {
            {{"A1"}, 3},
            {{"A2", "A3"}, 2},
            {{"A2", "A4"}, 1},
            {{"A3"}, 1},
            {{"A4"}, 2},
        },
    };
}

/// Paper ids follow sim-<year>-<edge index>-<k>. Simulated years run 1..years;
/// citations start the year after publication.
inline Corpus run_simulation(const CollabGraph& graph, int years,
                             const PeakDecayModel& model = {}) {
    if (years < 1) {
        throw std::invalid_argument("simulation needs at least one year");
    }
    validate_graph(graph);

    std::vector<CitationSchedule> schedules;
    schedules.reserve(graph.edges.size());
    for (const CollabEdge& e : graph.edges) {
        std::vector<double> qs;
        for (const std::string& id : e.endpoints) {
            qs.push_back(find_sim_author(graph, id)->q);
        }
        schedules.push_back(triangular_schedule(round_citation_total(joint_citation_total(qs)),
                                                model.peak_offset, model.end_offset));
    }

    CorpusBuilder builder;
    for (int y = 1; y <= years; ++y) {
        for (std::size_t e = 0; e < graph.edges.size(); ++e) {
            const CollabEdge& edge = graph.edges[e];
            for (Count k = 0; k < edge.papers_per_year; ++k) {
                PaperRecord r;
                r.id = "sim-" + std::to_string(y) + "-" + std::to_string(e) + "-" +
                       std::to_string(k);
                r.authors = edge.endpoints;
                r.year = y;
                const auto& yearly = schedules[e].yearly;
                for (std::size_t i = 0; i < yearly.size(); ++i) {
                    if (yearly[i] > 0) {
                        r.citations.emplace(y + 1 + static_cast<Year>(i), yearly[i]);
                    }
                }
                builder.add(r);
            }
        }
    }
    return std::move(builder).finish();
}

// ---------------------------------------------------------------------------
// Graph file: one JSON object per line, either
//   {"author":"A1","q":20.0}   or   {"edge":["A2","A3"],"papers_per_year":2}

inline CollabGraph read_graph(std::istream& in) {
    using nlohmann::json;
    CollabGraph g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw GraphError(line_no, "malformed JSON object");
        }
        const bool is_author = j.contains("author");
        const bool is_edge = j.contains("edge");
        if (is_author == is_edge) {
            throw GraphError(line_no, "line must hold exactly one of 'author' or 'edge'");
        }
        if (is_author) {
            if (!j["author"].is_string() || !j.contains("q") || !j["q"].is_number()) {
                throw GraphError(line_no, "author lines need a string 'author' and numeric 'q'");
            }
            g.authors.push_back({j["author"].get<std::string>(), j["q"].get<double>()});
        } else {
            const json& ends = j["edge"];
            if (!ends.is_array() || !j.contains("papers_per_year") ||
                !j["papers_per_year"].is_number_integer()) {
                throw GraphError(line_no,
                                 "edge lines need an 'edge' array and integer 'papers_per_year'");
            }
            CollabEdge e;
            for (const json& id : ends) {
                if (!id.is_string()) {
                    throw GraphError(line_no, "edge endpoints must be strings");
                }
                e.endpoints.push_back(id.get<std::string>());
            }
            e.papers_per_year = j["papers_per_year"].get<Count>();
            g.edges.push_back(std::move(e));
        }
    }
    try {
        validate_graph(g);
    } catch (const GraphError& err) {
        throw GraphError(0, err.what());
    }
    return g;
}

inline void write_graph(std::ostream& out, const CollabGraph& g) {
    using nlohmann::json;
    for (const SimAuthor& a : g.authors) {
        out << "{\"author\":" << json(a.id).dump() << ",\"q\":" << json(a.q).dump() << "}\n";
    }
    for (const CollabEdge& e : g.edges) {
        out << "{\"edge\":" << json(e.endpoints).dump()
            << ",\"papers_per_year\":" << e.papers_per_year << "}\n";
    }
}

} // namespace socialh

#endif // SOCIALH_SIMULATE_HPP
