#ifndef SOCIALH_METRICS_HPP
#define SOCIALH_METRICS_HPP

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "socialh/corpus.hpp"
#include "socialh/parallel.hpp"
#include "socialh/rational.hpp"
#include "socialh/types.hpp"

namespace socialh {

/// Largest h such that at least h of the counts are >= h. O(n).
inline Count h_index(std::span<const Count> counts) {
    const std::size_t n = counts.size();
    std::vector<std::size_t> at_least(n + 1, 0);
    for (Count c : counts) {
        if (c > 0) {
            ++at_least[std::min<std::size_t>(static_cast<std::size_t>(c), n)];
        }
    }
    std::size_t cumulative = 0;
    for (std::size_t h = n; h > 0; --h) {
        cumulative += at_least[h];
        if (cumulative >= h) {
            return static_cast<Count>(h);
        }
    }
    return 0;
}

/// h(a) with its supporting set H(a): the author's papers with at least h
/// citations. H(a) is empty when h = 0.
struct HCore {
    Count h = 0;
    std::vector<PaperIdx> supporting;

    bool operator==(const HCore&) const = default;
};

/// h and |H| without materializing the supporting set.
struct HSummary {
    Count h = 0;
    Count support = 0;

    bool operator==(const HSummary&) const = default;
};

struct BasicStats {
    Count paper_count = 0;
    Count citation_sum = 0;
    Count distinct_coauthors = 0;

    bool operator==(const BasicStats&) const = default;
};

struct MetricRow {
    std::string author;
    Count h = 0;
    Rational soc_h;
    Count paper_count = 0;
    Count citation_sum = 0;
    Count distinct_coauthors = 0;

    bool operator==(const MetricRow&) const = default;
};

using MetricsTable = std::vector<MetricRow>;

namespace detail {

inline HSummary summarize(const Corpus& corpus, AuthorIdx a, AsOf as_of,
                          std::vector<Count>& scratch) {
    scratch.clear();
    for (PaperIdx p : corpus.papers_of(a)) {
        const Corpus::Paper& paper = corpus.paper(p);
        if (within(paper.year, as_of)) {
            scratch.push_back(paper.citations_as_of(as_of));
        }
    }
    HSummary s;
    s.h = h_index(scratch);
    if (s.h > 0) {
        s.support = std::count_if(scratch.begin(), scratch.end(),
                                  [h = s.h](Count c) { return c >= h; });
    }
    return s;
}

/// contrib value once h(a), |H(a)| and the paper's citations are known.
inline Rational contrib_value(const HSummary& s, Count paper_citations) {
    if (s.h == 0 || paper_citations < s.h) {
        return Rational(0);
    }
    return Rational(s.h, s.support);
}

/// Everything all_metrics needs, computed once per (corpus, as_of).
struct MetricPass {
    std::vector<Count> citations;   // per paper, as of the snapshot
    std::vector<HSummary> summary;  // per author
    std::vector<Rational> share;    // per paper: (1/|A(p)|) * sum contrib(p, a')

    MetricPass(const Corpus& corpus, AsOf as_of, unsigned threads) {
        const auto& papers = corpus.papers();
        citations.assign(papers.size(), 0);
        parallel_for(papers.size(), threads, [&](std::size_t i) {
            if (within(papers[i].year, as_of)) {
                citations[i] = papers[i].citations_as_of(as_of);
            }
        });

        summary.assign(corpus.author_count(), HSummary{});
        parallel_for(corpus.author_count(), threads, [&](std::size_t a) {
            thread_local std::vector<Count> scratch;
            scratch.clear();
            for (PaperIdx p : corpus.papers_of(AuthorIdx(static_cast<std::uint32_t>(a)))) {
                if (within(papers[index_of(p)].year, as_of)) {
                    scratch.push_back(citations[index_of(p)]);
                }
            }
            HSummary& s = summary[a];
            s.h = h_index(scratch);
            if (s.h > 0) {
                s.support = std::count_if(scratch.begin(), scratch.end(),
                                          [h = s.h](Count c) { return c >= h; });
            }
        });

        share.assign(papers.size(), Rational(0));
        parallel_for(papers.size(), threads, [&](std::size_t i) {
            const Corpus::Paper& paper = papers[i];
            if (!within(paper.year, as_of) || paper.authors.empty()) {
                return;
            }
            Rational total(0);
            bool any = false;
            for (AuthorIdx a : paper.authors) {
                const HSummary& s = summary[index_of(a)];
                if (s.h > 0 && citations[i] >= s.h) {
                    total += Rational(s.h, s.support);
                    any = true;
                }
            }
            if (any) {
                share[i] = total / static_cast<Count>(paper.authors.size());
            }
        });
    }
};

inline Count distinct_coauthors(const Corpus& corpus, AuthorIdx a, AsOf as_of,
                                std::vector<AuthorIdx>& scratch) {
    scratch.clear();
    for (PaperIdx p : corpus.papers_of(a)) {
        const Corpus::Paper& paper = corpus.paper(p);
        if (!within(paper.year, as_of)) {
            continue;
        }
        for (AuthorIdx c : paper.authors) {
            if (c != a) {
                scratch.push_back(c);
            }
        }
    }
    std::sort(scratch.begin(), scratch.end());
    return std::unique(scratch.begin(), scratch.end()) - scratch.begin();
}

} // namespace detail

inline HCore h_core(const Corpus& corpus, AuthorIdx a, AsOf as_of = unbounded) {
    std::vector<std::pair<PaperIdx, Count>> cited;
    std::vector<Count> counts;
    for (PaperIdx p : corpus.papers_of(a)) {
        const Corpus::Paper& paper = corpus.paper(p);
        if (within(paper.year, as_of)) {
            cited.emplace_back(p, paper.citations_as_of(as_of));
            counts.push_back(cited.back().second);
        }
    }
    HCore core;
    core.h = h_index(counts);
    if (core.h > 0) {
        for (const auto& [p, c] : cited) {
            if (c >= core.h) {
                core.supporting.push_back(p);
            }
        }
    }
    return core;
}

inline HCore h_core(const Corpus& corpus, std::string_view author, AsOf as_of = unbounded) {
    return h_core(corpus, corpus.author(author), as_of);
}

/// Share of a's h-index credited to paper p: h(a)/|H(a)| when p is in H(a),
/// otherwise 0. A paper published after as_of contributes 0.
inline Rational contrib(const Corpus& corpus, PaperIdx p, AuthorIdx a, AsOf as_of = unbounded) {
    const Corpus::Paper& paper = corpus.paper(p);
    if (!paper.has_author(a)) {
        throw NotAnAuthor(corpus.author_name(a), paper.id);
    }
    if (!within(paper.year, as_of)) {
        return Rational(0);
    }
    std::vector<Count> scratch;
    const HSummary s = detail::summarize(corpus, a, as_of, scratch);
    return detail::contrib_value(s, paper.citations_as_of(as_of));
}

inline Rational contrib(const Corpus& corpus, std::string_view paper, std::string_view author,
                        AsOf as_of = unbounded) {
    const PaperIdx p = corpus.paper_index(paper);
    const auto a = corpus.find_author(author);
    if (!a) {
        throw NotAnAuthor(std::string(author), std::string(paper));
    }
    return contrib(corpus, p, *a, as_of);
}

/// soc^h(a) = sum over p in P(a) of (1/|A(p)|) * sum over a' in A(p) of contrib(p, a').
inline Rational social_h_index(const Corpus& corpus, AuthorIdx a, AsOf as_of = unbounded) {
    std::unordered_map<std::uint32_t, HSummary> cache;
    std::vector<Count> scratch;
    auto summary_of = [&](AuthorIdx who) -> const HSummary& {
        auto it = cache.find(static_cast<std::uint32_t>(who));
        if (it == cache.end()) {
            it = cache.emplace(static_cast<std::uint32_t>(who),
                               detail::summarize(corpus, who, as_of, scratch))
                     .first;
        }
        return it->second;
    };

    Rational total(0);
    for (PaperIdx p : corpus.papers_of(a)) {
        const Corpus::Paper& paper = corpus.paper(p);
        if (!within(paper.year, as_of)) {
            continue;
        }
        const Count cites = paper.citations_as_of(as_of);
        Rational inner(0);
        for (AuthorIdx coauthor : paper.authors) {
            inner += detail::contrib_value(summary_of(coauthor), cites);
        }
        total += inner / static_cast<Count>(paper.authors.size());
    }
    return total;
}

inline Rational social_h_index(const Corpus& corpus, std::string_view author,
                               AsOf as_of = unbounded) {
    return social_h_index(corpus, corpus.author(author), as_of);
}

inline BasicStats basic_stats(const Corpus& corpus, AuthorIdx a, AsOf as_of = unbounded) {
    BasicStats s;
    for (PaperIdx p : corpus.papers_of(a)) {
        const Corpus::Paper& paper = corpus.paper(p);
        if (within(paper.year, as_of)) {
            ++s.paper_count;
            s.citation_sum += paper.citations_as_of(as_of);
        }
    }
    std::vector<AuthorIdx> scratch;
    s.distinct_coauthors = detail::distinct_coauthors(corpus, a, as_of, scratch);
    return s;
}

inline BasicStats basic_stats(const Corpus& corpus, std::string_view author,
                              AsOf as_of = unbounded) {
    return basic_stats(corpus, corpus.author(author), as_of);
}

/// One row per author with at least one paper in the snapshot, ascending by
/// author id. Deterministic for any thread count (0 = hardware concurrency).
inline MetricsTable all_metrics(const Corpus& corpus, AsOf as_of = unbounded,
                                unsigned threads = 0) {
    const detail::MetricPass pass(corpus, as_of, threads);
    const auto& papers = corpus.papers();

    std::vector<MetricRow> rows(corpus.author_count());
    std::vector<char> present(corpus.author_count(), 0);
    parallel_for(corpus.author_count(), threads, [&](std::size_t i) {
        const AuthorIdx a{static_cast<std::uint32_t>(i)};
        MetricRow& row = rows[i];
        for (PaperIdx p : corpus.papers_of(a)) {
            if (!within(papers[index_of(p)].year, as_of)) {
                continue;
            }
            ++row.paper_count;
            row.citation_sum += pass.citations[index_of(p)];
            row.soc_h += pass.share[index_of(p)];
        }
        if (row.paper_count == 0) {
            return;
        }
        present[i] = 1;
        row.author = corpus.author_name(a);
        row.h = pass.summary[i].h;
        thread_local std::vector<AuthorIdx> scratch;
        row.distinct_coauthors = detail::distinct_coauthors(corpus, a, as_of, scratch);
    });

    MetricsTable table;
    table.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (present[i]) {
            table.push_back(std::move(rows[i]));
        }
    }
    return table;
}

/// sum of soc^h minus sum of h over a metrics table.
inline Rational conservation_residual(const MetricsTable& table) {
    Rational soc(0);
    BigInt h = 0;
    for (const MetricRow& row : table) {
        soc += row.soc_h;
        h += row.h;
    }
    return soc - Rational(h);
}

/// Exactly zero for every corpus and snapshot.
inline Rational verify_conservation(const Corpus& corpus, AsOf as_of = unbounded,
                                    unsigned threads = 0) {
    return conservation_residual(all_metrics(corpus, as_of, threads));
}

} // namespace socialh

#endif // SOCIALH_METRICS_HPP
