#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ocs {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// "p/q" with q > 0, always with the slash.
inline std::string to_pq(const Rational& r)
{
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p/q" or a plain integer.
Rational parse_rational(const std::string& s);

// Throws ocs::Error if r is not an integer fitting in 64 bits.
std::int64_t to_int64(const Rational& r);
std::int64_t to_int64(const Integer& z);

Integer factorial(int n);

} // namespace ocs
