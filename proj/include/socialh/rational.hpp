#ifndef SOCIALH_RATIONAL_HPP
#define SOCIALH_RATIONAL_HPP

#include <string>

#include "socialh/types.hpp"

namespace socialh {

inline BigInt floor_of(const Rational& r) {
    const BigInt& num = boost::multiprecision::numerator(r);
    const BigInt& den = boost::multiprecision::denominator(r); // always > 0
    BigInt q = num / den;
    if (num < 0 && q * den != num) {
        --q;
    }
    return q;
}

/// Nearest integer, halves rounded toward +infinity (1.5 -> 2, 7/4 -> 2).
inline BigInt round_half_up(const Rational& r) {
    return floor_of(r + Rational(1, 2));
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

/// Fixed-point rendering with at most `places` fractional digits, trailing zeros
/// dropped: 7/4 -> "1.75", 1/3 -> "0.333333", 2 -> "2".
inline std::string to_decimal(const Rational& r, int places = 6) {
    const bool negative = r < 0;
    BigInt scale = 1;
    for (int i = 0; i < places; ++i) {
        scale *= 10;
    }
    const BigInt scaled = round_half_up((negative ? Rational(-r) : r) * scale);
    std::string digits = scaled.str();
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places)) {
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(places), 1, '.');
        while (digits.back() == '0') {
            digits.pop_back();
        }
        if (digits.back() == '.') {
            digits.pop_back();
        }
    }
    if (negative && digits != "0") {
        digits.insert(0, 1, '-');
    }
    return digits;
}

/// "7/4", or "2" when the denominator is one.
inline std::string to_fraction_string(const Rational& r) {
    const BigInt& den = boost::multiprecision::denominator(r);
    if (den == 1) {
        return boost::multiprecision::numerator(r).str();
    }
    return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

} // namespace socialh

#endif // SOCIALH_RATIONAL_HPP
