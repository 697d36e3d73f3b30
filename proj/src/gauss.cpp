#include "weilsum/gauss.hpp"

#include <numeric>

#include "weilsum/error.hpp"
#include "weilsum/numth.hpp"

namespace weilsum {

namespace {

constexpr std::int64_t kBruteBudget = 100'000'000;

AlgValue real_value(const Real& x) { return AlgValue(x, Real(x.prec())); }

// e_c of each value in the list, summed.
AlgValue sum_roots(std::int64_t den, const std::vector<std::int64_t>& counts, int prec_bits) {
  auto roots = roots_of_unity(den, prec_bits);
  AlgValue s(prec_bits);
  Real scratch(prec_bits);
  for (std::int64_t k = 0; k < den; ++k) {
    if (counts[static_cast<std::size_t>(k)] != 0) s.add_scaled((*roots)(k), counts[static_cast<std::size_t>(k)], scratch);
  }
  return s;
}

AlgValue gauss_plain_closed(std::int64_t c, int prec_bits) {
  const Real rc = sqrt_pos(Rational(c), prec_bits);
  switch (c % 4) {
    case 1: return real_value(rc);
    case 3: return AlgValue(Real(prec_bits), rc);
    case 2: return AlgValue(prec_bits);
    default: return AlgValue(rc, rc);  // (1 + i) sqrt(c)
  }
}

}  // namespace

AlgValue gauss_plain(std::int64_t c, GaussMode mode, int prec_bits) {
  if (c < 1) throw DomainError("gauss_plain: c must be positive");
  if (mode == GaussMode::closed_form) return gauss_plain_closed(c, prec_bits);
  if (c > kBruteBudget) throw BudgetExceeded("gauss_plain: modulus too large for enumeration");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(c), 0);
  for (std::int64_t x = 0; x < c; ++x) ++counts[static_cast<std::size_t>(x * x % c)];
  return sum_roots(c, counts, prec_bits);
}

AlgValue gauss_scaled(std::int64_t a, std::int64_t c, GaussMode mode, int prec_bits) {
  if (c < 1 || c % 2 == 0) throw DomainError("gauss_scaled: c must be odd and positive");
  if (std::gcd(a, c) != 1) throw DomainError("gauss_scaled: (a, c) must be 1");
  if (mode == GaussMode::closed_form) {
    return gauss_plain_closed(c, prec_bits) * static_cast<long>(kronecker(a, c));
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(c), 0);
  const std::int64_t ar = mod(a, c);
  for (std::int64_t x = 0; x < c; ++x) ++counts[static_cast<std::size_t>(ar * (x * x % c) % c)];
  return sum_roots(c, counts, prec_bits);
}

AlgValue gauss_pow2(std::int64_t a, std::int64_t b, int lambda, GaussMode mode, int prec_bits) {
  if (a % 2 == 0) throw DomainError("gauss_pow2: a must be odd");
  if (lambda < 1 || lambda > 40) throw DomainError("gauss_pow2: lambda out of range");
  const std::int64_t q = std::int64_t{1} << lambda;
  if (mode == GaussMode::brute_force) {
    if (q > kBruteBudget) throw BudgetExceeded("gauss_pow2: modulus too large for enumeration");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(q), 0);
    const std::int64_t ar = mod(a, q), br = mod(b, q);
    for (std::int64_t x = 0; x < q; ++x) {
      const __int128 v = static_cast<__int128>(ar) * x * x + static_cast<__int128>(br) * x;
      ++counts[static_cast<std::size_t>(v % q)];
    }
    return sum_roots(q, counts, prec_bits);
  }
  if (lambda == 1) return AlgValue::from_int(mod(b, 2) == 1 ? 2 : 0, 0, prec_bits);
  if (mod(b, 2) == 1) return AlgValue(prec_bits);
  // e_{2^lambda}(-abar (b/2)^2) (1 + i) eps_a^{-1} (2/a)^lambda 2^{lambda/2}
  const std::int64_t abar = inv_mod(a, q);
  const std::int64_t h = mod(b / 2, q);
  const std::int64_t phase = mod(-static_cast<std::int64_t>(static_cast<__int128>(abar) * h % q * h % q), q);
  AlgValue r = e_frac(Rational(phase, q), prec_bits);
  r *= AlgValue::from_int(1, 1, prec_bits);
  r /= eps(a, prec_bits);
  int kr = kronecker(2, a);
  if (lambda % 2 == 0) kr = 1;
  r *= static_cast<long>(kr);
  r *= sqrt_pos(Rational(q), prec_bits);
  return r;
}

AlgValue gauss_quadratic_form(const EvenLattice& L, std::int64_t c, GaussMode mode, int prec_bits) {
  if (c < 1) throw DomainError("gauss_quadratic_form: c must be positive");
  const int g = L.rank();
  if (mode == GaussMode::closed_form) {
    if (c % 2 == 0) throw DomainError("gauss_quadratic_form: closed form needs odd c");
    if (std::gcd(L.abs_det(), c) != 1) throw DomainError("gauss_quadratic_form: closed form needs (det, c) = 1");
    // (2bar^g det / c) G(c)^g
    const std::int64_t two_bar = c == 1 ? 0 : inv_mod(2, c);
    std::int64_t top = mod(L.det(), c);
    for (int i = 0; i < g; ++i) top = top * two_bar % c;
    AlgValue gc = gauss_plain_closed(c, prec_bits);
    AlgValue r = AlgValue::one(prec_bits);
    for (int i = 0; i < g; ++i) r *= gc;
    return r * static_cast<long>(c == 1 ? 1 : kronecker(top, c));
  }
  double points = 1;
  for (int i = 0; i < g; ++i) points *= static_cast<double>(c);
  if (points > static_cast<double>(kBruteBudget)) throw BudgetExceeded("gauss_quadratic_form: c^g exceeds budget");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(c), 0);
  IntVector x(static_cast<std::size_t>(g), 0);
  while (true) {
    ++counts[static_cast<std::size_t>(mod(L.quadratic(x), c))];
    int i = 0;
    while (i < g && ++x[static_cast<std::size_t>(i)] == c) x[static_cast<std::size_t>(i++)] = 0;
    if (i == g) break;
  }
  return sum_roots(c, counts, prec_bits);
}

AlgValue twisted_sum_odd(std::int64_t n, std::int64_t p, int lambda, GaussMode mode, int prec_bits) {
  if (p < 3 || !is_prime(p)) throw DomainError("twisted_sum_odd: p must be an odd prime");
  if (lambda < 1) throw DomainError("twisted_sum_odd: lambda must be positive");
  const std::int64_t q = ipow(p, lambda);
  if (mode == GaussMode::brute_force) {
    if (q > kBruteBudget) throw BudgetExceeded("twisted_sum_odd: modulus too large");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(q), 0);
    const std::int64_t nr = mod(n, q);
    for (std::int64_t d = 1; d < q; ++d) {
      const int chi = kronecker(d, p);
      if (chi != 0) counts[static_cast<std::size_t>(nr * d % q)] += chi;
    }
    return sum_roots(q, counts, prec_bits);
  }
  const std::int64_t pl1 = q / p;
  if (mod(n, pl1) != 0) return AlgValue(prec_bits);
  // eps_p p^{lambda - 1/2} ((n / p^{lambda-1}) / p)
  AlgValue r = eps(p, prec_bits);
  r *= sqrt_pos(Rational(q) * Rational(q, p), prec_bits);
  return r * static_cast<long>(kronecker(n / pl1, p));
}

AlgValue twisted_sum_pow2(std::int64_t n, int lambda, GaussMode mode, int prec_bits) {
  if (lambda < 2 || lambda > 40) throw DomainError("twisted_sum_pow2: lambda must be at least 2");
  const std::int64_t q = std::int64_t{1} << lambda;
  if (mode == GaussMode::brute_force) {
    if (q > kBruteBudget) throw BudgetExceeded("twisted_sum_pow2: modulus too large");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(q), 0);
    const std::int64_t nr = mod(n, q);
    for (std::int64_t d = 1; d < q; d += 2) {
      counts[static_cast<std::size_t>(static_cast<__int128>(nr) * d % q)] += kronecker(-4, d);
    }
    return sum_roots(q, counts, prec_bits);
  }
  const std::int64_t s = q / 4;
  if (mod(n, s) != 0) return AlgValue(prec_bits);
  // 2^{lambda-1} i (-4 / (n / 2^{lambda-2}))
  const long k = kronecker(-4, n / s);
  return AlgValue::from_int(0, (q / 2) * k, prec_bits);
}

std::string GaussSumQuery::kind_name() const {
  switch (kind) {
    case GaussKind::plain: return "plain";
    case GaussKind::scaled: return "scaled";
    case GaussKind::shifted_binary_pow2: return "shifted_binary_pow2";
    case GaussKind::quadratic_form: return "quadratic_form";
    case GaussKind::twisted_odd: return "twisted_odd";
    case GaussKind::twisted_pow2: return "twisted_pow2";
  }
  return "unknown";
}

std::string GaussSumQuery::params() const {
  auto s = [](std::int64_t x) { return std::to_string(x); };
  switch (kind) {
    case GaussKind::plain: return "c=" + s(c);
    case GaussKind::scaled: return "a=" + s(a) + ";c=" + s(c);
    case GaussKind::shifted_binary_pow2: return "a=" + s(a) + ";b=" + s(b) + ";lambda=" + s(lambda);
    case GaussKind::quadratic_form: return "lattice=" + EvenLattice(gram).describe() + ";c=" + s(c);
    case GaussKind::twisted_odd: return "n=" + s(n) + ";p=" + s(p) + ";lambda=" + s(lambda);
    case GaussKind::twisted_pow2: return "n=" + s(n) + ";lambda=" + s(lambda);
  }
  return "";
}

AlgValue evaluate(const GaussSumQuery& q, GaussMode mode, int prec_bits) {
  switch (q.kind) {
    case GaussKind::plain: return gauss_plain(q.c, mode, prec_bits);
    case GaussKind::scaled: return gauss_scaled(q.a, q.c, mode, prec_bits);
    case GaussKind::shifted_binary_pow2: return gauss_pow2(q.a, q.b, q.lambda, mode, prec_bits);
    case GaussKind::quadratic_form: return gauss_quadratic_form(EvenLattice(q.gram), q.c, mode, prec_bits);
    case GaussKind::twisted_odd: return twisted_sum_odd(q.n, q.p, q.lambda, mode, prec_bits);
    case GaussKind::twisted_pow2: return twisted_sum_pow2(q.n, q.lambda, mode, prec_bits);
  }
  throw InternalError("evaluate: unknown Gauss sum kind");
}

GaussKind parse_gauss_kind(const std::string& name) {
  if (name == "plain") return GaussKind::plain;
  if (name == "scaled") return GaussKind::scaled;
  if (name == "shifted_binary_pow2" || name == "pow2") return GaussKind::shifted_binary_pow2;
  if (name == "quadratic_form") return GaussKind::quadratic_form;
  if (name == "twisted_odd") return GaussKind::twisted_odd;
  if (name == "twisted_pow2") return GaussKind::twisted_pow2;
  throw DomainError("unknown Gauss sum kind '" + name + "'");
}

}  // namespace weilsum
