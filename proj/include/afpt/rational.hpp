#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace afpt {

using Rational = boost::rational<std::int64_t>;

/// Largest integer <= r.
std::int64_t floor(const Rational& r);
/// Smallest integer >= r.
std::int64_t ceil(const Rational& r);

/// "p/q", or just "p" for integers.
std::string to_string(const Rational& r);
/// Accepts "p", "p/q" and finite decimals such as "0.5".
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace afpt
