#ifndef SOCIALH_TEMPORAL_HPP
#define SOCIALH_TEMPORAL_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "socialh/corpus.hpp"
#include "socialh/metrics.hpp"
#include "socialh/parallel.hpp"
#include "socialh/types.hpp"

namespace socialh {

/// The corpus as it stood at the end of `year`: papers published <= year with
/// histories truncated to years <= year. Authors left without papers vanish.
inline Corpus snapshot(const Corpus& corpus, Year year) {
    CorpusBuilder builder(LoadMode::lenient);
    for (std::size_t i = 0; i < corpus.paper_count(); ++i) {
        const Corpus::Paper& paper = corpus.papers()[i];
        if (paper.year > year) {
            continue;
        }
        if (paper.citations_total) {
            throw UndatedCitations(paper.id);
        }
        PaperRecord r = corpus.record(PaperIdx(static_cast<std::uint32_t>(i)));
        r.citations.erase(r.citations.upper_bound(year), r.citations.end());
        builder.add(r);
    }
    return std::move(builder).finish();
}

/// h(author) over everything strictly before `year`.
inline Count h_before(const Corpus& corpus, AuthorIdx author, Year year) {
    std::vector<Count> scratch;
    return detail::summarize(corpus, author, year - 1, scratch).h;
}

/// True iff the author had h = 0 counting only papers and citations from years
/// strictly before the paper's publication year.
inline bool is_novice(const Corpus& corpus, AuthorIdx author, PaperIdx paper) {
    const Corpus::Paper& p = corpus.paper(paper);
    if (!p.has_author(author)) {
        throw NotAnAuthor(corpus.author_name(author), p.id);
    }
    return h_before(corpus, author, p.year) == 0;
}

inline bool is_novice(const Corpus& corpus, std::string_view author, std::string_view paper) {
    const PaperIdx p = corpus.paper_index(paper);
    const auto a = corpus.find_author(author);
    if (!a) {
        throw NotAnAuthor(std::string(author), std::string(paper));
    }
    return is_novice(corpus, *a, p);
}

enum class CollaborationStyle { elitist, mentor, neither };

inline std::string_view to_string(CollaborationStyle s) {
    switch (s) {
    case CollaborationStyle::elitist: return "elitist";
    case CollaborationStyle::mentor: return "mentor";
    case CollaborationStyle::neither: return "neither";
    }
    return "neither";
}

struct Classification {
    std::string author;
    CollaborationStyle kind = CollaborationStyle::neither;
    Rational novice_coauthor_fraction;
    Count coauthor_count = 0;

    bool operator==(const Classification&) const = default;
};

/// A coauthor is a novice coauthor when they were a novice on their earliest
/// joint paper with `author`. Elitist: no novice coauthors. Mentor: at least
/// half of the distinct coauthors were novices. No coauthors: neither.
inline Classification classify_author(const Corpus& corpus, AuthorIdx author) {
    std::map<AuthorIdx, Year> first_joint;
    for (PaperIdx p : corpus.papers_of(author)) {
        const Corpus::Paper& paper = corpus.paper(p);
        for (AuthorIdx c : paper.authors) {
            if (c == author) {
                continue;
            }
            auto [it, inserted] = first_joint.try_emplace(c, paper.year);
            if (!inserted) {
                it->second = std::min(it->second, paper.year);
            }
        }
    }

    Classification out;
    out.author = corpus.author_name(author);
    out.coauthor_count = static_cast<Count>(first_joint.size());
    if (first_joint.empty()) {
        out.novice_coauthor_fraction = 0;
        return out;
    }

    std::vector<Count> scratch;
    Count novices = 0;
    for (const auto& [c, year] : first_joint) {
        if (detail::summarize(corpus, c, year - 1, scratch).h == 0) {
            ++novices;
        }
    }
    out.novice_coauthor_fraction = Rational(novices, out.coauthor_count);
    if (novices == 0) {
        out.kind = CollaborationStyle::elitist;
    } else if (2 * novices >= out.coauthor_count) {
        out.kind = CollaborationStyle::mentor;
    }
    return out;
}

inline Classification classify_author(const Corpus& corpus, std::string_view author) {
    return classify_author(corpus, corpus.author(author));
}

/// Classification of every author whose current h is at least min_h, in
/// ascending author-id order, paired with that h.
struct ClassifiedAuthor {
    Classification classification;
    Count h = 0;
};

inline std::vector<ClassifiedAuthor> classify_authors(const Corpus& corpus, Count min_h = 10,
                                                      unsigned threads = 0) {
    if (min_h < 0) {
        throw std::invalid_argument("min_h must be non-negative");
    }
    std::vector<ClassifiedAuthor> slots(corpus.author_count());
    std::vector<char> keep(corpus.author_count(), 0);
    parallel_for(corpus.author_count(), threads, [&](std::size_t i) {
        const AuthorIdx a{static_cast<std::uint32_t>(i)};
        thread_local std::vector<Count> scratch;
        const Count h = detail::summarize(corpus, a, unbounded, scratch).h;
        if (h < min_h) {
            return;
        }
        slots[i] = {classify_author(corpus, a), h};
        keep[i] = 1;
    });
    std::vector<ClassifiedAuthor> out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (keep[i]) {
            out.push_back(std::move(slots[i]));
        }
    }
    return out;
}

struct GroupMembers {
    std::vector<std::string> elitists; // ascending author id
    std::vector<std::string> mentors;
};

inline GroupMembers group_members(const Corpus& corpus, Count min_h = 10, unsigned threads = 0) {
    GroupMembers g;
    for (const ClassifiedAuthor& c : classify_authors(corpus, min_h, threads)) {
        if (c.classification.kind == CollaborationStyle::elitist) {
            g.elitists.push_back(c.classification.author);
        } else if (c.classification.kind == CollaborationStyle::mentor) {
            g.mentors.push_back(c.classification.author);
        }
    }
    return g;
}

enum class TrajectoryMetric { h, soc_h, count };

inline std::string_view to_string(TrajectoryMetric m) {
    switch (m) {
    case TrajectoryMetric::h: return "h";
    case TrajectoryMetric::soc_h: return "soc_h";
    case TrajectoryMetric::count: return "count";
    }
    return "h";
}

struct TrajectoryPoint {
    Year year{};
    Rational value;

    bool operator==(const TrajectoryPoint&) const = default;
};

struct Trajectory {
    std::string author;
    TrajectoryMetric metric = TrajectoryMetric::h;
    std::vector<TrajectoryPoint> points; // consecutive years

    bool operator==(const Trajectory&) const = default;
};

/// Metric value at year y is the metric on snapshot(corpus, y); before the
/// author's first paper every metric is 0.
inline Trajectory trajectory(const Corpus& corpus, AuthorIdx author, TrajectoryMetric metric,
                             Year from, Year to) {
    if (from > to) {
        throw std::invalid_argument("trajectory range is empty: from " + std::to_string(from) +
                                    " > to " + std::to_string(to));
    }
    Trajectory t;
    t.author = corpus.author_name(author);
    t.metric = metric;
    t.points.reserve(static_cast<std::size_t>(to - from) + 1);
    std::vector<Count> scratch;
    for (Year y = from;; ++y) {
        Rational value;
        switch (metric) {
        case TrajectoryMetric::h:
            value = detail::summarize(corpus, author, y, scratch).h;
            break;
        case TrajectoryMetric::soc_h:
            value = social_h_index(corpus, author, y);
            break;
        case TrajectoryMetric::count: {
            auto papers = corpus.papers_of(author);
            value = std::count_if(papers.begin(), papers.end(),
                                  [&](PaperIdx p) { return corpus.paper(p).year <= y; });
            break;
        }
        }
        t.points.push_back({y, std::move(value)});
        if (y == to) {
            break;
        }
    }
    return t;
}

inline Trajectory trajectory(const Corpus& corpus, std::string_view author,
                             TrajectoryMetric metric, Year from, Year to) {
    return trajectory(corpus, corpus.author(author), metric, from, to);
}

} // namespace socialh

#endif // SOCIALH_TEMPORAL_HPP
