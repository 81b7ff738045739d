#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace ghz {

// Exact fraction, always kept in canonical form (positive denominator,
// coprime parts). The only scalar type used outside of tests.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

// Boost's two-argument constructor mishandles a negative denominator, so
// divide instead.
inline Rational make_rational(long long num, long long den = 1) { return Rational(num) / Rational(den); }

inline bool is_zero(const Rational& x) { return x.is_zero(); }

inline Rational abs(const Rational& x) { return x.sign() < 0 ? Rational(-x) : x; }

// "num/den", or just "num" when the denominator is one.
std::string to_string(const Rational& x);

// Accepts "p", "-p", "p/q"; throws ParseError otherwise or on q == 0.
Rational parse_rational(std::string_view text);

}  // namespace ghz
