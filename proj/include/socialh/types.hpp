#ifndef SOCIALH_TYPES_HPP
#define SOCIALH_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace socialh {

/// Calendar year. All temporal reasoning is done at year granularity.
using Year = std::int32_t;

/// Citation and paper counts.
using Count = std::int64_t;

/// Exact rational used for contrib and Social h-index values.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Snapshot bound: a year, or std::nullopt for "end of corpus".
using AsOf = std::optional<Year>;
inline constexpr AsOf unbounded = std::nullopt;

constexpr bool within(Year year, AsOf as_of) noexcept {
    return !as_of || year <= *as_of;
}

enum class AuthorIdx : std::uint32_t {};
enum class PaperIdx : std::uint32_t {};

constexpr std::size_t index_of(AuthorIdx a) noexcept { return static_cast<std::size_t>(a); }
constexpr std::size_t index_of(PaperIdx p) noexcept { return static_cast<std::size_t>(p); }

/// Raised when a query names an author id that is not in the corpus.
class UnknownAuthor : public std::out_of_range {
public:
    explicit UnknownAuthor(const std::string& id)
        : std::out_of_range("unknown author id '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class UnknownPaper : public std::out_of_range {
public:
    explicit UnknownPaper(const std::string& id)
        : std::out_of_range("unknown paper id '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

/// Raised when an author-on-paper precondition fails.
class NotAnAuthor : public std::invalid_argument {
public:
    NotAnAuthor(const std::string& author, const std::string& paper)
        : std::invalid_argument("author '" + author + "' is not on paper '" + paper + "'") {}
};

/// Raised when a snapshot query hits a paper that only carries a citation total.
class UndatedCitations : public std::domain_error {
public:
    explicit UndatedCitations(const std::string& paper)
        : std::domain_error("paper '" + paper +
                            "' has only a citation total; as-of queries need dated histories") {}
};

} // namespace socialh

#endif // SOCIALH_TYPES_HPP
