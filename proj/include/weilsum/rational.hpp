#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace weilsum {

using Rational = boost::rational<std::int64_t>;

/// Representative of r mod 1 in [0, 1).
Rational frac_part(const Rational& r);
/// floor(r)
std::int64_t floor_div(const Rational& r);
bool is_integer(const Rational& r);
/// "p/q" or "p" when q == 1.
std::string to_string(const Rational& r);
/// Parses "p", "-p", "p/q".
Rational parse_rational(const std::string& s);

/// Mathematical modulus: result in [0, |n|).
inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  if (n < 0) n = -n;
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace weilsum
