#pragma once
// Exact rational scalars. Thin aliases over boost cpp_rational so the rest of
// the library never spells the backend type.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pwl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// canonical text form: "3", "-3", "1/2", "-1/2" (denominator always positive,
// always reduced; both are invariants of cpp_rational itself)
inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational parse_rational(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty");
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(BigInt(std::string(s)));
  BigInt num{std::string(s.substr(0, slash))};
  BigInt den{std::string(s.substr(slash + 1))};
  if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
  return Rational(num, den);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace pwl
