#include "weilsum/identity.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "weilsum/error.hpp"
#include "weilsum/numth.hpp"

namespace weilsum {

namespace {

constexpr double kCountBudget = 1e8;

std::int64_t gcd4(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return std::gcd(std::gcd(a, b), std::gcd(c, d));
}

std::int64_t narrow(__int128 x, const char* what) {
  if (x > INT64_MAX || x < INT64_MIN) throw BudgetExceeded(std::string(what) + ": value exceeds 64 bits");
  return static_cast<std::int64_t>(x);
}

std::int64_t mod128(__int128 x, std::int64_t n) {
  __int128 r = x % n;
  if (r < 0) r += n;
  return static_cast<std::int64_t>(r);
}

// First value r = a N1 x^2 + B x y + C N2 y^2 with (r, m) = 1 on the square shell of radius R.
std::optional<std::int64_t> shell_search(std::int64_t m, std::int64_t a, std::int64_t B, std::int64_t C,
                                       std::int64_t N1, std::int64_t N2, std::int64_t R) {
  auto value = [&](std::int64_t x, std::int64_t y) -> std::optional<std::int64_t> {
    const __int128 r = static_cast<__int128>(a) * N1 * x * x + static_cast<__int128>(B) * x * y +
                       static_cast<__int128>(C) * N2 * y * y;
    if (r == 0) return std::nullopt;
    if (std::gcd(mod128(r, m), std::abs(m)) != 1) return std::nullopt;
    return narrow(r, "chi_m");
  };
  for (std::int64_t x = -R; x <= R; ++x) {
    for (std::int64_t y : {-R, R}) {
      if (auto r = value(x, y)) return r;
    }
  }
  for (std::int64_t y = -R + 1; y <= R - 1; ++y) {
    for (std::int64_t x : {-R, R}) {
      if (auto r = value(x, y)) return r;
    }
  }
  return std::nullopt;
}

std::int64_t search_bound(std::int64_t m, std::int64_t A) { return 4 * std::abs(m) * std::abs(A) + 16; }

int chi_definition(std::int64_t m, const QuadFormTriple& t, std::int64_t N) {
  if (t.A % N != 0) throw DomainError("chi_m: A must be divisible by N");
  const std::int64_t a = t.A / N;
  if (gcd4(a, t.B, t.C, m) != 1) return 0;
  const std::int64_t bound = search_bound(m, t.A);
  const auto divs = divisors(N);
  for (std::int64_t R = 1; R <= bound; ++R)
    for (std::int64_t N1 : divs)
      if (auto r = shell_search(m, a, t.B, t.C, N1, N / N1, R)) return kronecker(m, *r);
  throw InternalError("chi_m: no represented value coprime to m within the search box");
}

int chi_product(std::int64_t m, const QuadFormTriple& t, std::int64_t N) {
  if (t.A % N != 0 || t.A / N < 1) throw DomainError("chi_m product mode needs A = N c with c >= 1");
  const std::int64_t c = t.A / N;
  const __int128 x = static_cast<__int128>(4) * t.A * t.C;  // l^2 - mn
  int res = 1;
  for (const auto& pp : factor(c).factors) {
    const std::int64_t p = pp.prime;
    if (m % p != 0) {
      res *= kronecker(m, ipow(p, pp.exponent));
    } else {
      const int nu = valuation(4 * N, p);
      const std::int64_t ps = p_star(p, m);
      const std::int64_t q = ipow(p, pp.exponent + nu);
      if (x % q != 0) throw InternalError("chi_m: triple is not of the canonical shape");
      res *= kronecker(m / ps, q) * kronecker(ps, narrow(x / q, "chi_m"));
    }
    if (res == 0) break;
  }
  return res;
}

}  // namespace

int chi_m(std::int64_t m, const QuadFormTriple& t, std::int64_t N, ChiMode mode) {
  if (N < 1) throw DomainError("chi_m: N must be positive");
  if (!is_fundamental_discriminant(m)) throw DomainError("chi_m: m must be a fundamental discriminant");
  return mode == ChiMode::definition ? chi_definition(m, t, N) : chi_product(m, t, N);
}

std::optional<int> chi_m_split(std::int64_t m, const QuadFormTriple& t, std::int64_t N, std::int64_t N1) {
  if (N < 1 || N1 < 1 || N % N1 != 0) throw DomainError("chi_m_split: N1 must divide N");
  if (t.A % N != 0) throw DomainError("chi_m: A must be divisible by N");
  const std::int64_t a = t.A / N;
  if (gcd4(a, t.B, t.C, m) != 1) return 0;
  if (gcd4(a * N1, t.B, t.C * (N / N1), m) != 1) return std::nullopt;
  const std::int64_t bound = search_bound(m, t.A);
  for (std::int64_t R = 1; R <= bound; ++R)
    if (auto r = shell_search(m, a, t.B, t.C, N1, N / N1, R)) return kronecker(m, *r);
  return std::nullopt;
}

std::int64_t m_lattice(std::int64_t m, int g) {
  if (g % 2 == 0) throw DomainError("m_L needs odd rank");
  return ipow(-4, (g - 1) / 2) * m;
}

std::int64_t p_star(std::int64_t p, std::int64_t m) {
  if (p != 2) return kronecker(-1, p) * p;
  if (m == 0) throw DomainError("p_star: m must be nonzero at p = 2");
  const int mu = valuation(m, 2);
  return kronecker(-1, m / ipow(2, mu)) * ipow(2, mu);
}

LocalFactorInput LocalFactorInput::make(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta,
                                        std::int64_t ell, std::int64_t m, std::int64_t n, std::int64_t p,
                                        int lambda) {
  if (L.rank() % 2 == 0) throw DomainError("local factors need odd rank");
  if (alpha.lattice_fingerprint() != L.fingerprint() || beta.lattice_fingerprint() != L.fingerprint())
    throw DomainError("discriminant elements belong to a different lattice");
  if (!is_prime(p)) throw DomainError("local factor: p must be prime");
  if (lambda < 0) throw DomainError("local factor: lambda must be nonnegative");
  LocalFactorInput in;
  in.lattice = &L;
  in.alpha = alpha;
  in.beta = beta;
  in.ell = ell;
  in.m = m;
  in.n = n;
  in.p = p;
  in.lambda = lambda;
  const Rational mt = Rational(m, 2 * L.det()) - q_exact(L, alpha);
  const Rational nt = Rational(n, 2 * L.det()) - q_exact(L, beta);
  const Rational lt = Rational(ell, L.det()) - bilinear_exact(L, alpha, beta);
  if (!is_integer(mt) || !is_integer(nt) || !is_integer(lt))
    throw DomainError("local factor: m/(2det) - q(alpha), n/(2det) - q(beta) and l/det - <alpha,beta> must be integers");
  in.m_tilde = mt.numerator();
  in.n_tilde = nt.numerator();
  in.l_tilde = lt.numerator();
  if (!check_ell_congruence(L, alpha, beta, ell, m, n)) throw InternalError("l^2 = mn (mod 2N) fails");
  in.nu = valuation(2 * L.abs_det(), p);
  in.mu = m == 0 ? -1 : valuation(m, p);
  in.pstar = (p == 2 && m == 0) ? 0 : p_star(p, m);
  in.mL = m_lattice(m, L.rank());
  const std::int64_t D = L.abs_det();
  in.w_alpha = dual_image_scaled(L, alpha);
  in.w_beta = dual_image_scaled(L, beta);
  for (auto& x : in.w_alpha) x /= D;
  for (auto& x : in.w_beta) x /= D;
  return in;
}

namespace {

void check_budget(std::int64_t p, int e, int g, const char* what) {
  if (std::pow(static_cast<double>(p), static_cast<double>(e) * (g + 1)) > kCountBudget)
    throw BudgetExceeded(std::string(what) + ": p^{e(g+1)} exceeds the enumeration budget");
}

}  // namespace

std::int64_t count_solutions(const LocalFactorInput& in, int j) {
  if (j < 0) throw DomainError("count_solutions: j must be nonnegative");
  if (j == 0) return 1;
  const EvenLattice& L = *in.lattice;
  const int g = L.rank();
  check_budget(in.p, j, g, "count_solutions");
  const std::int64_t P = ipow(in.p, j);
  std::vector<std::int64_t> sq(static_cast<std::size_t>(P));
  const std::int64_t mt = mod(in.m_tilde, P);
  for (std::int64_t x = 0; x < P; ++x) sq[static_cast<std::size_t>(x)] = mt * (x * x % P) % P;
  std::int64_t count = 0;
  IntVector y(static_cast<std::size_t>(g), 0);
  while (true) {
    __int128 ay = 0, by = 0;
    for (int i = 0; i < g; ++i) {
      ay += static_cast<__int128>(in.w_alpha[i]) * y[i];
      by += static_cast<__int128>(in.w_beta[i]) * y[i];
    }
    const std::int64_t lin = mod128(-ay - in.l_tilde, P);
    const std::int64_t cst = mod128(-static_cast<__int128>(L.quadratic(y)) + by + in.n_tilde, P);
    for (std::int64_t x = 0; x < P; ++x)
      if ((sq[static_cast<std::size_t>(x)] + lin * x + cst) % P == 0) ++count;
    int i = 0;
    while (i < g && ++y[i] == P) y[i++] = 0;
    if (i == g) break;
  }
  return count;
}

std::int64_t count_Mj(const LocalFactorInput& in, int j, int k) {
  if (j < 0 || j > k || k > in.lambda) throw DomainError("count_Mj: needs 0 <= j <= k <= lambda");
  const EvenLattice& L = *in.lattice;
  const int g = L.rank();
  check_budget(in.p, in.lambda, g, "count_Mj");
  const std::int64_t P = ipow(in.p, in.lambda), Pk = ipow(in.p, k), Pj = ipow(in.p, j);
  std::int64_t count = 0;
  IntVector r(static_cast<std::size_t>(g), 0);
  IntVector Mr(static_cast<std::size_t>(g));
  while (true) {
    __int128 ar = 0, br = 0;
    for (int i = 0; i < g; ++i) {
      ar += static_cast<__int128>(in.w_alpha[i]) * r[i];
      br += static_cast<__int128>(in.w_beta[i]) * r[i];
      std::int64_t s = 0;
      for (int t = 0; t < g; ++t) s += L.gram(i, t) * r[t];
      Mr[i] = s;
    }
    const __int128 qr = L.quadratic(r);
    for (std::int64_t v = 0; v < P; ++v) {
      const __int128 f = static_cast<__int128>(in.m_tilde) * v * v - ar * v - qr + br -
                         static_cast<__int128>(in.l_tilde) * v + in.n_tilde;
      if (mod128(f, Pk) != 0) continue;
      if (mod128(static_cast<__int128>(2) * in.m_tilde * v - ar - in.l_tilde, Pj) != 0) continue;
      bool ok = true;
      for (int i = 0; i < g && ok; ++i)
        ok = mod128(static_cast<__int128>(v) * in.w_alpha[i] + Mr[i] - in.w_beta[i], Pj) == 0;
      if (ok) ++count;
    }
    int i = 0;
    while (i < g && ++r[i] == P) r[i++] = 0;
    if (i == g) break;
  }
  return count;
}

Rational xi_local(const LocalFactorInput& in) {
  if (in.lambda == 0) return Rational(1);
  const EvenLattice& L = *in.lattice;
  const int g = L.rank();
  const std::int64_t D = L.abs_det(), N = L.N(), p = in.p;
  const int lambda = in.lambda;
  const __int128 disc = static_cast<__int128>(in.ell) * in.ell - static_cast<__int128>(in.m) * in.n;
  if (p != 2 && std::gcd(std::gcd(in.m, D), p) == 1) {
    if (in.m % p != 0) {
      const std::int64_t q = ipow(p, lambda + in.nu);
      return disc % q == 0 ? Rational(kronecker(in.mL, ipow(p, lambda))) : Rational(0);
    }
    if (in.nu != 0) throw InternalError("xi_local: p | m with p | 2 det in the good-prime branch");
    const std::int64_t q = ipow(p, lambda);
    if (disc % q != 0) return Rational(0);
    return Rational(kronecker(in.mL / in.pstar, q) * kronecker(in.pstar, narrow(disc / q, "xi_local")));
  }
  const std::int64_t modulus = 2 * N * ipow(p, 2 * (lambda / 2));
  if (disc % modulus != 0) {
    if (lambda <= 1) throw InternalError("xi_local: l^2 = mn (mod 2N) fails");
    return Rational(0);
  }
  const std::int64_t diff = count_solutions(in, lambda) - ipow(p, g) * count_solutions(in, lambda - 1);
  return Rational(diff, ipow(p, lambda * (g + 1) / 2));
}

Rational xi(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta, std::int64_t ell, std::int64_t m,
            std::int64_t n, std::int64_t c) {
  if (c < 1) throw DomainError("xi: c must be positive");
  Rational r(1);
  for (const auto& pp : factor(c).factors) {
    r *= xi_local(LocalFactorInput::make(L, alpha, beta, ell, m, n, pp.prime, pp.exponent));
    if (r == Rational(0)) break;
  }
  return r;
}

IdentityEngine::IdentityEngine(const EvenLattice& L, int prec_bits, ChiMode mode)
    : kl_(L, prec_bits), prec_(prec_bits), mode_(mode) {}

void IdentityEngine::check_hypotheses(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n) const {
  const EvenLattice& L = lattice();
  const int g = L.rank();
  if (g % 2 == 0) throw DomainError("the identity needs odd rank");
  if (alpha >= group().size() || beta >= group().size()) throw DomainError("discriminant index out of range");
  if (!check_index(L, group()[alpha], m)) throw DomainError("m/(2 det) - q(alpha) is not an integer");
  if (!check_index(L, group()[beta], n)) throw DomainError("n/(2 det) - q(beta) is not an integer");
  const std::int64_t sign = ((g - 1) / 2) % 2 ? -1 : 1;
  if (!is_fundamental_discriminant(sign * m))
    throw DomainError("(-1)^{(g-1)/2} m must be a fundamental discriminant (m=" + std::to_string(m) + ")");
}

Rational IdentityEngine::weight(std::size_t alpha, std::size_t beta, std::int64_t ell, std::int64_t m, std::int64_t n,
                                std::int64_t c) const {
  const EvenLattice& L = lattice();
  if (L.rank() == 1) {
    const std::int64_t N = L.N();
    const __int128 x = static_cast<__int128>(ell) * ell - static_cast<__int128>(m) * n;
    const std::int64_t q = 4 * N * c;
    if (x % q != 0) return Rational(0);
    return Rational(chi_m(m, {N * c, ell, narrow(x / q, "weight")}, N, mode_));
  }
  return xi(L, group()[alpha], group()[beta], ell, m, n, c);
}

std::shared_ptr<const IdentityEngine::Weights> IdentityEngine::weights(std::size_t alpha, std::size_t beta,
                                                                       std::int64_t m, std::int64_t n,
                                                                       std::int64_t c) const {
  const Key key{alpha, beta, m, n, c};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const EvenLattice& L = lattice();
  const std::int64_t twoN = L.abs_det();
  const Rational b = bilinear(L, group()[alpha], group()[beta]);
  const std::int64_t ell0 = mod((b * Rational(L.det())).numerator(), twoN);
  auto w = std::make_shared<Weights>();
  for (std::int64_t ell = ell0; ell < twoN * c; ell += twoN) {
    const Rational x = weight(alpha, beta, ell, m, n, c);
    if (x != Rational(0)) w->emplace_back(ell, x);
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = cache_.emplace(key, std::move(w));
  return it->second;
}

AlgValue IdentityEngine::weyl_sum(const Weights& w, std::int64_t v, std::int64_t c) const {
  const EvenLattice& L = lattice();
  const std::int64_t den = L.abs_det() * c;
  const int sign = L.det() < 0 ? -1 : 1;
  auto roots = roots_of_unity(den, prec_);
  AlgValue s(prec_);
  Real scratch(prec_);
  const std::int64_t vr = mod(v, den);
  for (const auto& [ell, x] : w) {
    const std::int64_t k = sign * static_cast<std::int64_t>(static_cast<__int128>(ell) * vr % den);
    if (x.denominator() == 1) {
      s.add_scaled((*roots)(k), static_cast<long>(x.numerator()), scratch);
    } else {
      AlgValue t = (*roots)(k);
      t *= Real::from_rational(x, prec_);
      s += t;
    }
  }
  return s;
}

AlgValue IdentityEngine::rhs_Rv(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n, std::int64_t c,
                                std::int64_t v) const {
  check_hypotheses(alpha, beta, m, n);
  if (c < 1) throw DomainError("c must be positive");
  return weyl_sum(*weights(alpha, beta, m, n, c), v, c);
}

AlgValue IdentityEngine::lhs_Lv(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n, std::int64_t c,
                                std::int64_t v, const Rational& k) const {
  check_hypotheses(alpha, beta, m, n);
  if (c < 1) throw DomainError("c must be positive");
  const EvenLattice& L = lattice();
  const std::int64_t sigma = sigma_weight(L, k);
  const std::int64_t mL = m_lattice(m, L.rank());
  const std::int64_t g0 = std::gcd(v, c);
  AlgValue s(prec_);
  for (std::int64_t u : divisors(g0)) {
    const int chi = kronecker(mL, u);
    if (chi == 0) continue;
    const std::int64_t t = v / u;
    const std::size_t a2 = group().index_of(group()[alpha].scaled(t));
    const std::int64_t m2 = narrow(static_cast<__int128>(m) * t * t, "lhs_Lv");
    AlgValue term = kl_.sum(a2, beta, m2, n, c / u, k);
    term *= sqrt_pos(Rational(u, c), prec_);
    term *= static_cast<long>(chi);
    s += term;
  }
  s *= i_half_power(Rational(sigma), prec_);
  s *= sqrt_pos(Rational(L.abs_det()), prec_);
  return s;
}

IdentityResult IdentityEngine::verify(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n,
                                      std::int64_t c, std::int64_t v, const Rational& k) const {
  AlgValue l = lhs_Lv(alpha, beta, m, n, c, v, k);
  AlgValue r = rhs_Rv(alpha, beta, m, n, c, v);
  Real d = distance(l, r);
  return {std::move(l), std::move(r), std::move(d)};
}

std::vector<FourierCoefficient> IdentityEngine::fourier_coefficients(std::size_t alpha, std::size_t beta,
                                                                     std::int64_t m, std::int64_t n, std::int64_t c,
                                                                     const Rational& k) const {
  check_hypotheses(alpha, beta, m, n);
  const EvenLattice& L = lattice();
  const std::int64_t period = L.abs_det() * c;
  std::vector<AlgValue> lv;
  lv.reserve(static_cast<std::size_t>(period));
  for (std::int64_t v = 0; v < period; ++v) lv.push_back(lhs_Lv(alpha, beta, m, n, c, v, k));
  const int sign = L.det() < 0 ? -1 : 1;
  auto roots = roots_of_unity(period, prec_);
  const Rational b = bilinear(L, group()[alpha], group()[beta]);
  const std::int64_t ell0 = mod((b * Rational(L.det())).numerator(), L.abs_det());
  std::vector<FourierCoefficient> out;
  Real scratch(prec_);
  for (std::int64_t ell = ell0; ell < period; ell += L.abs_det()) {
    AlgValue s(prec_);
    for (std::int64_t v = 0; v < period; ++v)
      s.add_product(lv[static_cast<std::size_t>(v)], (*roots)(-sign * ((ell * v) % period)), scratch);
    s *= Real::from_rational(Rational(1, period), prec_);
    out.push_back({ell, std::move(s), weight(alpha, beta, ell, m, n, c)});
  }
  return out;
}

AlgValue IdentityEngine::fast_kloosterman(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n,
                                          std::int64_t c, std::int64_t v, const Rational& k) const {
  check_hypotheses(alpha, beta, m, n);
  if (c < 1) throw DomainError("c must be positive");
  const EvenLattice& L = lattice();
  const std::int64_t sigma = sigma_weight(L, k);
  const std::int64_t mL = m_lattice(m, L.rank());
  AlgValue s(prec_);
  for (std::int64_t u : divisors(std::gcd(v, c))) {
    const int f = mobius(u) * kronecker(mL, u);
    if (f == 0) continue;
    AlgValue r = weyl_sum(*weights(alpha, beta, m, n, c / u), v / u, c / u);
    r *= static_cast<long>(f);
    s += r;
  }
  // i^{-sigma} sqrt(c / 2N)
  s *= i_half_power(Rational(-sigma), prec_);
  s *= sqrt_pos(Rational(c, L.abs_det()), prec_);
  return s;
}

AlgValue lhs_Lv(const KloostermanSpec& spec, std::int64_t v, int prec_bits) {
  IdentityEngine e(spec.lattice, prec_bits);
  return e.lhs_Lv(e.group().index_of(spec.alpha), e.group().index_of(spec.beta), spec.m, spec.n, spec.c, v, spec.k);
}

AlgValue rhs_Rv(const KloostermanSpec& spec, std::int64_t v, int prec_bits) {
  IdentityEngine e(spec.lattice, prec_bits);
  return e.rhs_Rv(e.group().index_of(spec.alpha), e.group().index_of(spec.beta), spec.m, spec.n, spec.c, v);
}

IdentityResult verify_identity(const KloostermanSpec& spec, std::int64_t v, int prec_bits) {
  IdentityEngine e(spec.lattice, prec_bits);
  return e.verify(e.group().index_of(spec.alpha), e.group().index_of(spec.beta), spec.m, spec.n, spec.c, v, spec.k);
}

AlgValue fast_kloosterman(const KloostermanSpec& spec, std::int64_t v, int prec_bits) {
  IdentityEngine e(spec.lattice, prec_bits);
  return e.fast_kloosterman(e.group().index_of(spec.alpha), e.group().index_of(spec.beta), spec.m, spec.n, spec.c, v,
                            spec.k);
}

IdentityResult verify_theta_identity(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t v,
                                     int prec_bits) {
  if (mod(m, 4) > 1 || mod(n, 4) > 1) throw DomainError("theta identity needs m, n = 0, 1 mod 4");
  if (!is_fundamental_discriminant(m)) throw DomainError("theta identity needs m fundamental");
  if (c < 1) throw DomainError("c must be positive");
  AlgValue lhs(prec_bits);
  for (std::int64_t u : divisors(std::gcd(v, c))) {
    const int chi = kronecker(m, u);
    if (chi == 0) continue;
    const std::int64_t t = v / u;
    AlgValue term = kloosterman_plus(m * t * t, n, c / u, prec_bits);
    term *= sqrt_pos(Rational(u, c), prec_bits);
    term *= static_cast<long>(chi);
    lhs += term;
  }
  AlgValue rhs(prec_bits);
  auto roots = roots_of_unity(2 * c, prec_bits);
  Real scratch(prec_bits);
  for (std::int64_t ell = 0; ell < 2 * c; ++ell) {
    const std::int64_t x = ell * ell - m * n;
    if (mod(x, 4 * c) != 0) continue;
    const int chi = chi_m(m, {c, ell, x / (4 * c)}, 1);
    if (chi != 0) rhs.add_scaled((*roots)(ell * mod(v, 2 * c)), chi, scratch);
  }
  rhs *= 4L;
  Real d = distance(lhs, rhs);
  return {std::move(lhs), std::move(rhs), std::move(d)};
}

IdentityResult verify_eta_identity(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t v,
                                   int prec_bits) {
  if (mod(m, 24) != 1 || mod(n, 24) != 1) throw DomainError("eta identity needs m, n = 1 mod 24");
  if (!is_fundamental_discriminant(m)) throw DomainError("eta identity needs m fundamental");
  if (std::gcd(v, std::int64_t{6}) != 1) throw DomainError("eta identity needs (v, 6) = 1");
  if (c < 1) throw DomainError("c must be positive");
  AlgValue lhs(prec_bits);
  for (std::int64_t u : divisors(std::gcd(v, c))) {
    const std::int64_t t = v / u;
    const int chi = kronecker(12, t) * kronecker(m, u);
    if (chi == 0) continue;
    AlgValue term = kloosterman_multiplier(MultiplierKind::eta, Rational(m * t * t, 24), Rational(n, 24), c / u,
                                           prec_bits);
    term *= sqrt_pos(Rational(u, c), prec_bits);
    term *= static_cast<long>(chi);
    lhs += term;
  }
  // 2 sqrt(-3i) = 2 sqrt(3) e(-1/8)
  lhs *= e_frac(Rational(-1, 8), prec_bits);
  lhs *= sqrt_pos(Rational(12), prec_bits);
  AlgValue rhs(prec_bits);
  auto roots = roots_of_unity(12 * c, prec_bits);
  Real scratch(prec_bits);
  for (std::int64_t ell = 0; ell < 12 * c; ++ell) {
    const std::int64_t x = ell * ell - m * n;
    if (mod(x, 24 * c) != 0) continue;
    const int chi = kronecker(12, ell);
    if (chi == 0) continue;
    const int w = chi * chi_m(m, {6 * c, ell, x / (24 * c)}, 6);
    if (w != 0) rhs.add_scaled((*roots)(ell * mod(v, 12 * c)), w, scratch);
  }
  Real d = distance(lhs, rhs);
  return {std::move(lhs), std::move(rhs), std::move(d)};
}

}  // namespace weilsum
