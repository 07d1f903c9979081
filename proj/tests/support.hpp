// Shared fixtures, random generators and brute-force oracles for the test suites.
// The oracles work on plain PaperRecord lists with GMP rationals and never call
// into the library's metric code.
#ifndef SOCIALH_TESTS_SUPPORT_HPP
#define SOCIALH_TESTS_SUPPORT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "socialh/socialh.hpp"

namespace socialh::testing {

inline PaperRecord paper(std::string id, std::vector<std::string> authors, Year year,
                         std::map<Year, Count> citations) {
    return PaperRecord{std::move(id), std::move(authors), year, std::move(citations), std::nullopt};
}

/// p1: {X}, 5 cites; p2: {X,Y}, 5 cites; p3: {Y}, 1 cite.
inline std::vector<PaperRecord> fixture_f1() {
    return {
        paper("p1", {"X"}, 2000, {{2001, 5}}),
        paper("p2", {"X", "Y"}, 2000, {{2001, 5}}),
        paper("p3", {"Y"}, 2000, {{2001, 1}}),
    };
}

/// F1 up to 2001; in 2002 Y publishes six solo papers cited 10 times each in
/// 2003, which lifts h(Y) to 6 and pushes p2 out of H(Y).
inline std::vector<PaperRecord> fixture_decreasing_soc_h() {
    auto records = fixture_f1();
    for (int i = 0; i < 6; ++i) {
        records.push_back(paper("y" + std::to_string(i), {"Y"}, 2002, {{2003, 10}}));
    }
    return records;
}

/// Single author whose papers carry the given lifetime citation counts.
inline std::vector<PaperRecord> author_with_citations(const std::string& author,
                                                      const std::vector<Count>& counts) {
    std::vector<PaperRecord> out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        std::map<Year, Count> cites;
        if (counts[i] > 0) {
            cites[2001] = counts[i];
        }
        out.push_back(paper(author + "-p" + std::to_string(i), {author}, 2000, cites));
    }
    return out;
}

inline std::string to_lines(const std::vector<PaperRecord>& records) {
    std::ostringstream out;
    for (const PaperRecord& r : records) {
        write_record(out, r);
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Random corpora

struct RandomCorpusShape {
    int max_papers = 200;
    int max_authors = 50;
    int max_authors_per_paper = 6;
    Year first_year = 1990;
    Year last_year = 2010;
    Count max_yearly_citations = 12;
    int max_citation_years = 6;
};

inline std::vector<PaperRecord> random_records(std::mt19937_64& rng,
                                               const RandomCorpusShape& shape = {}) {
    auto pick = [&](auto lo, auto hi) {
        return std::uniform_int_distribution<decltype(hi)>(lo, hi)(rng);
    };
    const int papers = pick(0, shape.max_papers);
    const int authors = pick(1, shape.max_authors);
    std::vector<PaperRecord> out;
    out.reserve(static_cast<std::size_t>(papers));
    for (int i = 0; i < papers; ++i) {
        PaperRecord r;
        r.id = "p" + std::to_string(i);
        const int n = pick(1, std::min(shape.max_authors_per_paper, authors));
        std::set<int> chosen;
        while (static_cast<int>(chosen.size()) < n) {
            chosen.insert(pick(0, authors - 1));
        }
        for (int a : chosen) {
            r.authors.push_back("a" + std::to_string(a));
        }
        std::shuffle(r.authors.begin(), r.authors.end(), rng);
        r.year = pick(shape.first_year, shape.last_year);
        const int spans = pick(0, shape.max_citation_years);
        for (int k = 0; k < spans; ++k) {
            const Count c = pick(Count{0}, shape.max_yearly_citations);
            if (c > 0) {
                r.citations[r.year + pick(0, 8)] += c;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Oracles

namespace oracle {

/// max{h : |{c : c >= h}| >= h}, by trying every candidate.
inline Count h_index(const std::vector<Count>& counts) {
    Count best = 0;
    for (Count h = 0; h <= static_cast<Count>(counts.size()); ++h) {
        const auto at_least = std::count_if(counts.begin(), counts.end(),
                                            [h](Count c) { return c >= h; });
        if (at_least >= h) {
            best = h;
        }
    }
    return best;
}

/// Records restricted to a snapshot, with lifetime citations as of that year.
struct SnapPaper {
    std::string id;
    std::vector<std::string> authors;
    Count citations = 0;
};

inline std::vector<SnapPaper> snap(const std::vector<PaperRecord>& records,
                                   std::optional<Year> as_of) {
    std::vector<SnapPaper> out;
    for (const PaperRecord& r : records) {
        if (as_of && r.year > *as_of) {
            continue;
        }
        Count c = 0;
        for (const auto& [year, count] : r.citations) {
            if (!as_of || year <= *as_of) {
                c += count;
            }
        }
        out.push_back({r.id, r.authors, c});
    }
    return out;
}

inline std::vector<const SnapPaper*> papers_of(const std::vector<SnapPaper>& papers,
                                               const std::string& author) {
    std::vector<const SnapPaper*> out;
    for (const SnapPaper& p : papers) {
        if (std::find(p.authors.begin(), p.authors.end(), author) != p.authors.end()) {
            out.push_back(&p);
        }
    }
    return out;
}

inline Count h_of(const std::vector<SnapPaper>& papers, const std::string& author) {
    std::vector<Count> counts;
    for (const SnapPaper* p : papers_of(papers, author)) {
        counts.push_back(p->citations);
    }
    return h_index(counts);
}

/// contrib(p, a) straight from the definition: h(a)/|H(a)| for p in H(a).
inline mpq_class contrib(const std::vector<SnapPaper>& papers, const SnapPaper& p,
                         const std::string& author) {
    const Count h = h_of(papers, author);
    if (h == 0) {
        return 0;
    }
    long support = 0;
    bool in_core = false;
    for (const SnapPaper* q : papers_of(papers, author)) {
        if (q->citations >= h) {
            ++support;
            in_core = in_core || q == &p;
        }
    }
    if (!in_core) {
        return 0;
    }
    mpq_class v(static_cast<long>(h), support);
    v.canonicalize();
    return v;
}

/// Literal double sum: sum over p in P(a) of 1/|A(p)| * sum over a' in A(p) of contrib(p, a').
inline mpq_class social_h_index(const std::vector<PaperRecord>& records, const std::string& author,
                                std::optional<Year> as_of = std::nullopt) {
    const auto papers = snap(records, as_of);
    mpq_class total = 0;
    for (const SnapPaper* p : papers_of(papers, author)) {
        mpq_class inner = 0;
        for (const std::string& coauthor : p->authors) {
            inner += contrib(papers, *p, coauthor);
        }
        total += inner / static_cast<long>(p->authors.size());
    }
    return total;
}

inline std::set<std::string> authors(const std::vector<PaperRecord>& records,
                                     std::optional<Year> as_of = std::nullopt) {
    std::set<std::string> out;
    for (const PaperRecord& r : records) {
        if (!as_of || r.year <= *as_of) {
            out.insert(r.authors.begin(), r.authors.end());
        }
    }
    return out;
}

inline bool equal(const Rational& lib, const mpq_class& ref) {
    return to_fraction_string(lib) == ref.get_str();
}

} // namespace oracle

} // namespace socialh::testing

#endif // SOCIALH_TESTS_SUPPORT_HPP
