#ifndef MLOOP_RATIONAL_HPP
#define MLOOP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace mloop {

// Exact arithmetic base types. cpp_rational keeps values normalized
// (gcd(num, den) = 1, den > 0), which is exactly the invariant we need.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline std::string to_string(const Rational& q) { return q.str(); }

inline long to_long(const Integer& n) { return static_cast<long>(n); }

}  // namespace mloop

#endif
