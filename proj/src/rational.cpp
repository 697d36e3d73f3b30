#include "weilsum/rational.hpp"

#include <charconv>

#include "weilsum/error.hpp"

namespace weilsum {

std::int64_t floor_div(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

Rational frac_part(const Rational& r) { return r - Rational(floor_div(r)); }

bool is_integer(const Rational& r) { return r.denominator() == 1; }

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {
std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw DomainError("not an integer: '" + s + "'");
  }
  return v;
}
}  // namespace

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  std::int64_t den = parse_int(s.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator in '" + s + "'");
  return Rational(parse_int(s.substr(0, slash)), den);
}

}  // namespace weilsum
