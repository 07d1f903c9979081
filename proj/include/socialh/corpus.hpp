#ifndef SOCIALH_CORPUS_HPP
#define SOCIALH_CORPUS_HPP

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "socialh/types.hpp"

namespace socialh {

struct CitationEntry {
    Year year{};
    Count count{};
    bool operator==(const CitationEntry&) const = default;
};

/// One line of the corpus format: a paper, its ordered author list and either a
/// per-year citation history (increments, not running totals) or a bare total.
struct PaperRecord {
    std::string id;
    std::vector<std::string> authors;
    Year year{};
    std::map<Year, Count> citations;
    std::optional<Count> citations_total;

    bool operator==(const PaperRecord&) const = default;
};

namespace detail {

template <typename Entries>
Count sum_citations(const Entries& entries, AsOf as_of) {
    Count total = 0;
    for (const auto& [year, count] : entries) {
        if (!within(year, as_of)) {
            break;
        }
        total += count;
    }
    return total;
}

} // namespace detail

/// Citations received in years <= as_of (all years when unbounded).
/// A paper that only carries `citations_total` answers unbounded queries only.
inline Count total_citations(const PaperRecord& paper, AsOf as_of = unbounded) {
    if (paper.citations_total) {
        if (as_of) {
            throw UndatedCitations(paper.id);
        }
        return *paper.citations_total;
    }
    return detail::sum_citations(paper.citations, as_of);
}

/// Load or parse failure. line() is 1-based, 0 when no line applies.
class CorpusError : public std::runtime_error {
public:
    CorpusError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// strict: every record invariant is enforced while loading.
/// lenient: only syntax and id uniqueness are enforced, so that validate()
/// can report the remaining violations as data.
enum class LoadMode { strict, lenient };

class CorpusBuilder;

/// Immutable paper collection with an author -> papers index. Author ids are
/// interned in ascending order, so AuthorIdx order is author-id order.
class Corpus {
public:
    struct Paper {
        std::string id;
        std::vector<AuthorIdx> authors;
        Year year{};
        std::vector<CitationEntry> citations; // ascending by year
        std::optional<Count> citations_total;

        Count citations_as_of(AsOf as_of) const {
            if (citations_total) {
                if (as_of) {
                    throw UndatedCitations(id);
                }
                return *citations_total;
            }
            Count total = 0;
            for (const CitationEntry& e : citations) {
                if (!within(e.year, as_of)) {
                    break;
                }
                total += e.count;
            }
            return total;
        }

        bool has_author(AuthorIdx a) const {
            return std::find(authors.begin(), authors.end(), a) != authors.end();
        }

        bool operator==(const Paper&) const = default;
    };

    Corpus() = default;

    static Corpus from_records(std::vector<PaperRecord> records, LoadMode mode = LoadMode::strict);

    std::size_t paper_count() const noexcept { return papers_.size(); }
    std::size_t author_count() const noexcept { return author_names_.size(); }
    bool empty() const noexcept { return papers_.empty(); }

    const std::vector<Paper>& papers() const noexcept { return papers_; }
    const Paper& paper(PaperIdx p) const { return papers_.at(index_of(p)); }

    const std::vector<std::string>& author_names() const noexcept { return author_names_; }
    const std::string& author_name(AuthorIdx a) const { return author_names_.at(index_of(a)); }

    std::optional<AuthorIdx> find_author(std::string_view id) const {
        auto it = std::lower_bound(author_names_.begin(), author_names_.end(), id);
        if (it == author_names_.end() || *it != id) {
            return std::nullopt;
        }
        return AuthorIdx(static_cast<std::uint32_t>(it - author_names_.begin()));
    }

    AuthorIdx author(std::string_view id) const {
        if (auto a = find_author(id)) {
            return *a;
        }
        throw UnknownAuthor(std::string(id));
    }

    std::optional<PaperIdx> find_paper(std::string_view id) const {
        auto it = std::lower_bound(by_id_.begin(), by_id_.end(), id,
                                   [this](PaperIdx p, std::string_view key) {
                                       return papers_[index_of(p)].id < key;
                                   });
        if (it == by_id_.end() || papers_[index_of(*it)].id != id) {
            return std::nullopt;
        }
        return *it;
    }

    PaperIdx paper_index(std::string_view id) const {
        if (auto p = find_paper(id)) {
            return *p;
        }
        throw UnknownPaper(std::string(id));
    }

    /// P(a), ascending PaperIdx.
    std::span<const PaperIdx> papers_of(AuthorIdx a) const {
        return author_papers_.at(index_of(a));
    }

    PaperRecord record(PaperIdx p) const {
        const Paper& src = paper(p);
        PaperRecord out;
        out.id = src.id;
        out.year = src.year;
        out.authors.reserve(src.authors.size());
        for (AuthorIdx a : src.authors) {
            out.authors.push_back(author_names_[index_of(a)]);
        }
        for (const CitationEntry& e : src.citations) {
            out.citations.emplace(e.year, e.count);
        }
        out.citations_total = src.citations_total;
        return out;
    }

    std::vector<PaperRecord> records() const {
        std::vector<PaperRecord> out;
        out.reserve(papers_.size());
        for (std::size_t i = 0; i < papers_.size(); ++i) {
            out.push_back(record(PaperIdx(static_cast<std::uint32_t>(i))));
        }
        return out;
    }

    /// True when every paper carries a dated history, i.e. as-of queries work.
    bool fully_dated() const noexcept {
        return std::none_of(papers_.begin(), papers_.end(),
                            [](const Paper& p) { return p.citations_total.has_value(); });
    }

    std::optional<Year> first_year() const {
        if (papers_.empty()) {
            return std::nullopt;
        }
        return std::min_element(papers_.begin(), papers_.end(),
                                [](const Paper& a, const Paper& b) { return a.year < b.year; })
            ->year;
    }

    std::optional<Year> last_year() const {
        if (papers_.empty()) {
            return std::nullopt;
        }
        return std::max_element(papers_.begin(), papers_.end(),
                                [](const Paper& a, const Paper& b) { return a.year < b.year; })
            ->year;
    }

    bool operator==(const Corpus& other) const {
        return papers_ == other.papers_ && author_names_ == other.author_names_ &&
               author_papers_ == other.author_papers_;
    }

private:
    friend class CorpusBuilder;

    std::vector<Paper> papers_;
    std::vector<std::string> author_names_;
    std::vector<std::vector<PaperIdx>> author_papers_;
    std::vector<PaperIdx> by_id_;
};

/// Streaming construction: records are interned as they arrive so the loader
/// never holds string author lists for the whole corpus.
class CorpusBuilder {
public:
    explicit CorpusBuilder(LoadMode mode = LoadMode::strict) : mode_(mode) {}

    void reserve(std::size_t papers) {
        papers_.reserve(papers);
        lines_.reserve(papers);
    }

    void add(const PaperRecord& record, std::size_t line = 0) {
        if (mode_ == LoadMode::strict) {
            check(record, line);
        }
        Corpus::Paper paper;
        paper.id = record.id;
        paper.year = record.year;
        paper.citations_total = record.citations_total;
        paper.authors.reserve(record.authors.size());
        for (const std::string& name : record.authors) {
            auto [it, inserted] =
                intern_.try_emplace(name, static_cast<std::uint32_t>(names_.size()));
            if (inserted) {
                names_.push_back(name);
            }
            paper.authors.push_back(AuthorIdx(it->second));
        }
        paper.citations.reserve(record.citations.size());
        for (const auto& [year, count] : record.citations) {
            paper.citations.push_back({year, count});
        }
        papers_.push_back(std::move(paper));
        lines_.push_back(line);
    }

    Corpus finish() && {
        Corpus out;

        std::vector<PaperIdx> by_id(papers_.size());
        for (std::size_t i = 0; i < by_id.size(); ++i) {
            by_id[i] = PaperIdx(static_cast<std::uint32_t>(i));
        }
        std::sort(by_id.begin(), by_id.end(), [this](PaperIdx a, PaperIdx b) {
            const auto& ia = papers_[index_of(a)].id;
            const auto& ib = papers_[index_of(b)].id;
            return ia != ib ? ia < ib : a < b;
        });
        for (std::size_t i = 1; i < by_id.size(); ++i) {
            const std::size_t prev = index_of(by_id[i - 1]);
            const std::size_t cur = index_of(by_id[i]);
            if (papers_[prev].id == papers_[cur].id) {
                std::string where = lines_[prev] ? " (first seen on line " +
                                                       std::to_string(lines_[prev]) + ")"
                                                 : "";
                throw CorpusError(lines_[cur],
                                  "duplicate paper id '" + papers_[cur].id + "'" + where);
            }
        }

        // Renumber authors into ascending id order.
        std::vector<std::uint32_t> order(names_.size());
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(),
                  [this](std::uint32_t a, std::uint32_t b) { return names_[a] < names_[b]; });
        std::vector<std::uint32_t> remap(names_.size());
        out.author_names_.reserve(names_.size());
        for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
            remap[order[rank]] = rank;
            out.author_names_.push_back(std::move(names_[order[rank]]));
        }
        intern_.clear();
        names_.clear();

        out.author_papers_.resize(out.author_names_.size());
        for (std::size_t i = 0; i < papers_.size(); ++i) {
            for (AuthorIdx& a : papers_[i].authors) {
                a = AuthorIdx(remap[index_of(a)]);
                auto& list = out.author_papers_[index_of(a)];
                const PaperIdx p{static_cast<std::uint32_t>(i)};
                // Duplicate authors on one paper (lenient mode) index it once.
                if (list.empty() || list.back() != p) {
                    list.push_back(p);
                }
            }
        }
        for (auto& list : out.author_papers_) {
            list.shrink_to_fit();
        }

        out.papers_ = std::move(papers_);
        out.by_id_ = std::move(by_id);
        lines_.clear();
        return out;
    }

private:
    static void check(const PaperRecord& r, std::size_t line) {
        if (r.authors.empty()) {
            throw CorpusError(line, "paper '" + r.id + "' has no authors");
        }
        std::vector<std::string_view> seen(r.authors.begin(), r.authors.end());
        std::sort(seen.begin(), seen.end());
        if (seen.front().empty()) {
            throw CorpusError(line, "paper '" + r.id + "' has an empty author id");
        }
        if (auto dup = std::adjacent_find(seen.begin(), seen.end()); dup != seen.end()) {
            throw CorpusError(line,
                              "paper '" + r.id + "' lists author '" + std::string(*dup) + "' twice");
        }
        for (const auto& [year, count] : r.citations) {
            if (year < r.year) {
                throw CorpusError(line, "paper '" + r.id + "' has citations in " +
                                            std::to_string(year) + ", before its publication year " +
                                            std::to_string(r.year));
            }
            if (count < 0) {
                throw CorpusError(line, "paper '" + r.id + "' has a negative citation count in " +
                                            std::to_string(year));
            }
        }
        if (r.citations_total && *r.citations_total < 0) {
            throw CorpusError(line, "paper '" + r.id + "' has a negative citations_total");
        }
    }

    LoadMode mode_;
    std::vector<Corpus::Paper> papers_;
    std::vector<std::size_t> lines_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> intern_;
};

inline Corpus Corpus::from_records(std::vector<PaperRecord> records, LoadMode mode) {
    CorpusBuilder builder(mode);
    builder.reserve(records.size());
    for (const PaperRecord& r : records) {
        builder.add(r);
    }
    return std::move(builder).finish();
}

// ---------------------------------------------------------------------------
// Line format

namespace detail {

using nlohmann::json;

inline Year parse_year_key(const std::string& key, std::size_t line) {
    Year year{};
    const char* first = key.data();
    const char* last = key.data() + key.size();
    auto [ptr, ec] = std::from_chars(first, last, year);
    if (ec != std::errc() || ptr != last || key.empty()) {
        throw CorpusError(line, "citation year key '" + key + "' is not an integer");
    }
    return year;
}

inline std::int64_t require_integer(const json& v, const char* what, std::size_t line) {
    if (v.is_number_integer()) {
        return v.get<std::int64_t>();
    }
    throw CorpusError(line, std::string("field '") + what + "' must be an integer");
}

inline Year require_year(const json& v, const char* what, std::size_t line) {
    const std::int64_t raw = require_integer(v, what, line);
    if (raw < std::numeric_limits<Year>::min() || raw > std::numeric_limits<Year>::max()) {
        throw CorpusError(line, std::string("field '") + what + "' is out of range");
    }
    return static_cast<Year>(raw);
}

} // namespace detail

/// Parses one line of the corpus format. Unknown fields are ignored.
inline PaperRecord parse_record(std::string_view text, std::size_t line = 0) {
    using detail::json;
    json j = json::parse(text.begin(), text.end(), nullptr, false);
    if (j.is_discarded()) {
        throw CorpusError(line, "malformed JSON");
    }
    if (!j.is_object()) {
        throw CorpusError(line, "record must be a JSON object");
    }

    PaperRecord r;
    auto id = j.find("id");
    if (id == j.end() || !id->is_string()) {
        throw CorpusError(line, "field 'id' must be a string");
    }
    r.id = id->get<std::string>();

    auto authors = j.find("authors");
    if (authors == j.end() || !authors->is_array()) {
        throw CorpusError(line, "field 'authors' must be an array of strings");
    }
    r.authors.reserve(authors->size());
    for (const json& a : *authors) {
        if (!a.is_string()) {
            throw CorpusError(line, "field 'authors' must be an array of strings");
        }
        r.authors.push_back(a.get<std::string>());
    }

    auto year = j.find("year");
    if (year == j.end()) {
        throw CorpusError(line, "missing field 'year'");
    }
    r.year = detail::require_year(*year, "year", line);

    auto cites = j.find("citations");
    auto total = j.find("citations_total");
    if ((cites == j.end()) == (total == j.end())) {
        throw CorpusError(line, "exactly one of 'citations' or 'citations_total' is required");
    }
    if (cites != j.end()) {
        if (!cites->is_object()) {
            throw CorpusError(line, "field 'citations' must be an object");
        }
        for (auto it = cites->begin(); it != cites->end(); ++it) {
            r.citations[detail::parse_year_key(it.key(), line)] =
                detail::require_integer(it.value(), "citations", line);
        }
    } else {
        r.citations_total = detail::require_integer(*total, "citations_total", line);
    }
    return r;
}

/// Reads a whole line-delimited stream. Blank lines are skipped.
inline Corpus load_corpus(std::istream& in, LoadMode mode = LoadMode::strict) {
    CorpusBuilder builder(mode);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        builder.add(parse_record(line, line_no), line_no);
    }
    if (in.bad()) {
        throw std::ios_base::failure("read error on corpus stream");
    }
    return std::move(builder).finish();
}

inline void write_record(std::ostream& out, const PaperRecord& r) {
    using detail::json;
    out << "{\"id\":" << json(r.id).dump() << ",\"authors\":[";
    for (std::size_t i = 0; i < r.authors.size(); ++i) {
        out << (i ? "," : "") << json(r.authors[i]).dump();
    }
    out << "],\"year\":" << r.year;
    if (r.citations_total) {
        out << ",\"citations_total\":" << *r.citations_total;
    } else {
        out << ",\"citations\":{";
        bool first = true;
        for (const auto& [year, count] : r.citations) {
            out << (first ? "" : ",") << '"' << year << "\":" << count;
            first = false;
        }
        out << '}';
    }
    out << "}\n";
}

/// Writes papers in stored order; load_corpus() of the output equals `corpus`.
inline void write_corpus(std::ostream& out, const Corpus& corpus) {
    for (std::size_t i = 0; i < corpus.paper_count(); ++i) {
        write_record(out, corpus.record(PaperIdx(static_cast<std::uint32_t>(i))));
    }
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    std::string paper; // empty for corpus-level violations
    std::string message;
    std::optional<Year> year;

    bool operator==(const Violation&) const = default;
};

/// Empty iff every record and index invariant holds.
inline std::vector<Violation> validate(const Corpus& corpus) {
    std::vector<Violation> out;
    const auto& names = corpus.author_names();

    for (std::size_t i = 0; i < corpus.paper_count(); ++i) {
        const Corpus::Paper& p = corpus.papers()[i];
        const PaperIdx pi{static_cast<std::uint32_t>(i)};
        if (p.authors.empty()) {
            out.push_back({p.id, "paper has no authors", std::nullopt});
        }
        std::vector<AuthorIdx> sorted(p.authors);
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 1; k < sorted.size(); ++k) {
            if (sorted[k] == sorted[k - 1] && (k == 1 || sorted[k - 2] != sorted[k])) {
                out.push_back({p.id, "duplicate author '" + names[index_of(sorted[k])] + "'",
                               std::nullopt});
            }
        }
        for (AuthorIdx a : sorted) {
            if (names[index_of(a)].empty()) {
                out.push_back({p.id, "empty author id", std::nullopt});
                break;
            }
        }
        for (const CitationEntry& e : p.citations) {
            if (e.year < p.year) {
                out.push_back({p.id,
                               "citation year " + std::to_string(e.year) +
                                   " precedes publication year " + std::to_string(p.year),
                               e.year});
            }
            if (e.count < 0) {
                out.push_back({p.id, "negative citation count", e.year});
            }
        }
        if (p.citations_total && *p.citations_total < 0) {
            out.push_back({p.id, "negative citations_total", std::nullopt});
        }
        for (AuthorIdx a : p.authors) {
            auto list = corpus.papers_of(a);
            if (!std::binary_search(list.begin(), list.end(), pi)) {
                out.push_back({p.id, "author index is missing '" + names[index_of(a)] + "'",
                               std::nullopt});
            }
        }
    }

    for (std::size_t a = 0; a < corpus.author_count(); ++a) {
        const AuthorIdx ai{static_cast<std::uint32_t>(a)};
        auto list = corpus.papers_of(ai);
        if (list.empty()) {
            out.push_back({"", "author '" + names[a] + "' has no papers", std::nullopt});
        }
        for (PaperIdx p : list) {
            if (!corpus.paper(p).has_author(ai)) {
                out.push_back({corpus.paper(p).id,
                               "author index lists '" + names[a] + "' but the paper does not",
                               std::nullopt});
            }
        }
    }
    return out;
}

} // namespace socialh

#endif // SOCIALH_CORPUS_HPP
