#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

// Under C++20 the reversed-operand rewrite turns boost's templated
// `integer == rational` into a self-call. Exact non-template overloads win
// overload resolution and stop the recursion.
namespace boost {
inline constexpr bool operator==(const rational<std::int64_t>& a, int b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline constexpr bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
}  // namespace boost

namespace sbs {

using Rational = boost::rational<std::int64_t>;

/// "3/2", "-1", "0".
std::string to_string(const Rational& r);

/// Accepts integers, "p/q" and finite decimals such as "0.5" or "-1.25".
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

std::int64_t factorial(int n);

}  // namespace sbs
