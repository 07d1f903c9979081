#ifndef SOCIALH_REPORT_HPP
#define SOCIALH_REPORT_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "socialh/corpus.hpp"
#include "socialh/metrics.hpp"
#include "socialh/rational.hpp"
#include "socialh/temporal.hpp"
#include "socialh/types.hpp"

namespace socialh {

// ---------------------------------------------------------------------------
// Measures

/// Per-author quantities a report can plot or bin.
enum class Measure { h, soc_h, count, citations, coauthors };

inline std::string_view to_string(Measure m) {
    switch (m) {
    case Measure::h: return "h";
    case Measure::soc_h: return "soc_h";
    case Measure::count: return "count";
    case Measure::citations: return "citations";
    case Measure::coauthors: return "coauthors";
    }
    return "h";
}

inline Measure parse_measure(std::string_view name) {
    for (Measure m : {Measure::h, Measure::soc_h, Measure::count, Measure::citations,
                      Measure::coauthors}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw std::invalid_argument("unknown measure '" + std::string(name) +
                                "' (expected h, soc_h, count, citations or coauthors)");
}

inline Rational measure_of(const MetricRow& row, Measure m) {
    switch (m) {
    case Measure::h: return row.h;
    case Measure::soc_h: return row.soc_h;
    case Measure::count: return row.paper_count;
    case Measure::citations: return row.citation_sum;
    case Measure::coauthors: return row.distinct_coauthors;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Group histograms

struct HistogramBin {
    double lower = 0.0;
    std::size_t count = 0;

    bool operator==(const HistogramBin&) const = default;
};

/// Non-empty bins only, ascending by lower edge.
struct Histogram {
    std::string metric;
    std::string group;
    double bin_width = 1.0;
    std::vector<HistogramBin> bins;

    std::size_t total() const {
        std::size_t n = 0;
        for (const HistogramBin& b : bins) {
            n += b.count;
        }
        return n;
    }
};

inline double bin_lower(const Rational& value, double bin_width) {
    return std::floor(to_double(value) / bin_width) * bin_width;
}

inline Histogram make_histogram(std::string metric, std::string group,
                                const std::vector<Rational>& values, double bin_width) {
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
        throw std::invalid_argument("bin_width must be a positive number");
    }
    std::vector<double> lowers;
    lowers.reserve(values.size());
    for (const Rational& v : values) {
        lowers.push_back(bin_lower(v, bin_width));
    }
    std::sort(lowers.begin(), lowers.end());
    Histogram h{std::move(metric), std::move(group), bin_width, {}};
    for (double lower : lowers) {
        if (h.bins.empty() || h.bins.back().lower != lower) {
            h.bins.push_back({lower, 0});
        }
        ++h.bins.back().count;
    }
    return h;
}

/// Six histograms, {h, soc_h, count} x {elitists, mentors}, in that order.
inline std::vector<Histogram> group_histograms(const MetricsTable& table,
                                               const GroupMembers& groups, double bin_width) {
    auto row_of = [&](const std::string& author) -> const MetricRow& {
        auto it = std::lower_bound(table.begin(), table.end(), author,
                                   [](const MetricRow& r, const std::string& id) {
                                       return r.author < id;
                                   });
        if (it == table.end() || it->author != author) {
            throw UnknownAuthor(author);
        }
        return *it;
    };

    std::vector<Histogram> out;
    for (Measure m : {Measure::h, Measure::soc_h, Measure::count}) {
        for (const auto& [name, members] :
             {std::pair<std::string, const std::vector<std::string>*>{"elitists", &groups.elitists},
              std::pair<std::string, const std::vector<std::string>*>{"mentors", &groups.mentors}}) {
            std::vector<Rational> values;
            for (const std::string& author : *members) {
                values.push_back(measure_of(row_of(author), m));
            }
            out.push_back(make_histogram(std::string(to_string(m)), name, values, bin_width));
        }
    }
    return out;
}

inline std::vector<Histogram> group_histograms(const Corpus& corpus, Count min_h,
                                               double bin_width, unsigned threads = 0) {
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
        throw std::invalid_argument("bin_width must be a positive number");
    }
    return group_histograms(all_metrics(corpus, unbounded, threads),
                            group_members(corpus, min_h, threads), bin_width);
}

// ---------------------------------------------------------------------------
// Scatter + Spearman

struct ScatterPoint {
    std::string author;
    Rational x;
    Rational y;
};

struct Scatter {
    Measure x_measure = Measure::h;
    Measure y_measure = Measure::soc_h;
    std::vector<ScatterPoint> points;
    double spearman = std::numeric_limits<double>::quiet_NaN();
};

/// 1-based ranks with ties sharing the average of the positions they span.
inline std::vector<double> average_ranks(const std::vector<Rational>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

/// Pearson correlation of the average ranks. NaN with fewer than two points or
/// when either side is constant.
inline double spearman(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("spearman needs paired samples");
    }
    const std::size_t n = xs.size();
    if (n < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    const double mean = (static_cast<double>(n) + 1.0) / 2.0;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mean) * (ry[i] - mean);
        sxx += (rx[i] - mean) * (rx[i] - mean);
        syy += (ry[i] - mean) * (ry[i] - mean);
    }
    if (sxx == 0.0 || syy == 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return sxy / std::sqrt(sxx * syy);
}

inline Scatter scatter(const MetricsTable& table, Measure x, Measure y) {
    Scatter s{x, y, {}, 0.0};
    std::vector<Rational> xs;
    std::vector<Rational> ys;
    s.points.reserve(table.size());
    for (const MetricRow& row : table) {
        s.points.push_back({row.author, measure_of(row, x), measure_of(row, y)});
        xs.push_back(s.points.back().x);
        ys.push_back(s.points.back().y);
    }
    s.spearman = spearman(xs, ys);
    return s;
}

// ---------------------------------------------------------------------------
// Top-k ranking

struct RankedRow {
    std::size_t rank_soc_h = 0;
    std::size_t rank_h = 0;
    std::string author;
    Rational soc_h;          // exact; ordering uses this
    BigInt soc_h_rounded;    // display value
    Count h = 0;
    Count paper_count = 0;
    Count citation_sum = 0;
    Count distinct_coauthors = 0;

    bool operator==(const RankedRow&) const = default;
};

/// Order: exact soc_h descending, then h descending, then author id ascending.
/// rank_h uses h descending, then soc_h descending, then author id.
inline std::vector<RankedRow> top_k(const MetricsTable& table, std::size_t k) {
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    std::vector<std::size_t> by_soc(table.size());
    std::iota(by_soc.begin(), by_soc.end(), std::size_t{0});
    std::vector<std::size_t> by_h = by_soc;

    std::sort(by_soc.begin(), by_soc.end(), [&](std::size_t a, std::size_t b) {
        const MetricRow& ra = table[a];
        const MetricRow& rb = table[b];
        if (ra.soc_h != rb.soc_h) return ra.soc_h > rb.soc_h;
        if (ra.h != rb.h) return ra.h > rb.h;
        return ra.author < rb.author;
    });
    std::sort(by_h.begin(), by_h.end(), [&](std::size_t a, std::size_t b) {
        const MetricRow& ra = table[a];
        const MetricRow& rb = table[b];
        if (ra.h != rb.h) return ra.h > rb.h;
        if (ra.soc_h != rb.soc_h) return ra.soc_h > rb.soc_h;
        return ra.author < rb.author;
    });
    std::vector<std::size_t> rank_h(table.size());
    for (std::size_t i = 0; i < by_h.size(); ++i) {
        rank_h[by_h[i]] = i + 1;
    }

    std::vector<RankedRow> out;
    const std::size_t n = std::min(k, table.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const MetricRow& row = table[by_soc[i]];
        out.push_back({i + 1, rank_h[by_soc[i]], row.author, row.soc_h, round_half_up(row.soc_h),
                       row.h, row.paper_count, row.citation_sum, row.distinct_coauthors});
    }
    return out;
}

// ---------------------------------------------------------------------------
// h-core inflation

struct HCoreInflationStats {
    std::size_t authors = 0;
    Rational exact_core_fraction{1};      // share of authors with |H(a)| = h(a)
    std::size_t authors_h_at_least_5 = 0;
    Rational core_within_125_fraction{1}; // among h >= 5: share with |H(a)| <= 1.25 h(a)
    Rational mean_distinct_coauthors{0};
};

/// |H(a)| <= 1.25 h(a), in integers.
inline bool core_within_125(const HSummary& s) {
    return 4 * s.support <= 5 * s.h;
}

/// Fractions are 1 when their population is empty.
inline HCoreInflationStats h_core_inflation_stats(const Corpus& corpus, unsigned threads = 0) {
    const detail::MetricPass pass(corpus, unbounded, threads);
    std::vector<Count> coauthors(corpus.author_count(), 0);
    parallel_for(corpus.author_count(), threads, [&](std::size_t i) {
        thread_local std::vector<AuthorIdx> scratch;
        coauthors[i] = detail::distinct_coauthors(corpus, AuthorIdx(static_cast<std::uint32_t>(i)),
                                                  unbounded, scratch);
    });

    HCoreInflationStats s;
    s.authors = corpus.author_count();
    Count exact = 0;
    Count within = 0;
    Count coauthor_total = 0;
    for (std::size_t i = 0; i < corpus.author_count(); ++i) {
        const HSummary& h = pass.summary[i];
        if (h.support == h.h) {
            ++exact;
        }
        if (h.h >= 5) {
            ++s.authors_h_at_least_5;
            if (core_within_125(h)) {
                ++within;
            }
        }
        coauthor_total += coauthors[i];
    }
    if (s.authors > 0) {
        s.exact_core_fraction = Rational(exact, static_cast<Count>(s.authors));
        s.mean_distinct_coauthors = Rational(coauthor_total, static_cast<Count>(s.authors));
    }
    if (s.authors_h_at_least_5 > 0) {
        s.core_within_125_fraction = Rational(within, static_cast<Count>(s.authors_h_at_least_5));
    }
    return s;
}

// ---------------------------------------------------------------------------
// CSV output: header row, UTF-8, '\n' line endings.

inline std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(text);
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

/// Shortest round-trip form; "nan" for NaN.
inline std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc() ? std::string(buf.data(), ptr) : std::to_string(v);
}

inline void write_metrics_csv(std::ostream& out, const MetricsTable& table) {
    out << "author,h,soc_h,soc_h_exact,paper_count,citation_sum,distinct_coauthors\n";
    for (const MetricRow& r : table) {
        out << csv_field(r.author) << ',' << r.h << ',' << to_decimal(r.soc_h) << ','
            << to_fraction_string(r.soc_h) << ',' << r.paper_count << ',' << r.citation_sum << ','
            << r.distinct_coauthors << '\n';
    }
}

inline void write_histograms_csv(std::ostream& out, const std::vector<Histogram>& hists) {
    out << "metric,group,bin_lower,count\n";
    for (const Histogram& h : hists) {
        for (const HistogramBin& b : h.bins) {
            out << h.metric << ',' << h.group << ',' << format_double(b.lower) << ',' << b.count
                << '\n';
        }
    }
}

inline void write_scatter_csv(std::ostream& out, const Scatter& s) {
    out << "author,x,y\n";
    for (const ScatterPoint& p : s.points) {
        out << csv_field(p.author) << ',' << to_decimal(p.x) << ',' << to_decimal(p.y) << '\n';
    }
}

inline void write_spearman_sidecar(std::ostream& out, const Scatter& s) {
    out << "spearman=" << format_double(s.spearman) << '\n';
}

inline void write_topk_csv(std::ostream& out, const std::vector<RankedRow>& rows) {
    out << "rank_soc_h,rank_h,author,soc_h,h,paper_count,citation_sum,distinct_coauthors\n";
    for (const RankedRow& r : rows) {
        out << r.rank_soc_h << ',' << r.rank_h << ',' << csv_field(r.author) << ','
            << r.soc_h_rounded << ',' << r.h << ',' << r.paper_count << ',' << r.citation_sum
            << ',' << r.distinct_coauthors << '\n';
    }
}

inline void write_stats_csv(std::ostream& out, const HCoreInflationStats& s) {
    out << "key,value\n"
        << "authors," << s.authors << '\n'
        << "exact_core_fraction," << to_decimal(s.exact_core_fraction) << '\n'
        << "authors_h_at_least_5," << s.authors_h_at_least_5 << '\n'
        << "core_within_1.25h_fraction," << to_decimal(s.core_within_125_fraction) << '\n'
        << "mean_distinct_coauthors," << to_decimal(s.mean_distinct_coauthors) << '\n';
}

inline void write_classification_csv(std::ostream& out,
                                     const std::vector<ClassifiedAuthor>& rows) {
    out << "author,h,kind,novice_coauthor_fraction,coauthor_count\n";
    for (const ClassifiedAuthor& c : rows) {
        out << csv_field(c.classification.author) << ',' << c.h << ','
            << to_string(c.classification.kind) << ','
            << to_decimal(c.classification.novice_coauthor_fraction) << ','
            << c.classification.coauthor_count << '\n';
    }
}

inline void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
    out << "year," << to_string(t.metric) << '\n';
    for (const TrajectoryPoint& p : t.points) {
        out << p.year << ',' << to_decimal(p.value) << '\n';
    }
}

} // namespace socialh

#endif // SOCIALH_REPORT_HPP
