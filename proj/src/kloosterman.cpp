#include "weilsum/kloosterman.hpp"

#include <numeric>

#include "weilsum/error.hpp"
#include "weilsum/numth.hpp"

namespace weilsum {

std::vector<std::int64_t> unit_residues(std::int64_t c) {
  if (c < 1) throw DomainError("modulus must be positive");
  if (c == 1) return {0};
  std::vector<std::int64_t> r;
  for (std::int64_t d = 1; d < c; ++d)
    if (std::gcd(d, c) == 1) r.push_back(d);
  return r;
}

MetaplecticElement completion(std::int64_t c, std::int64_t d, std::int64_t t) {
  if (c < 1) throw DomainError("completion: c must be positive");
  if (c == 1) return {1 + t, -1, 1, 0, 1};
  const std::int64_t a = inv_mod(d, c) + t * c;
  return {a, (a * d - 1) / c, c, d, 1};
}

AlgValue kloosterman_ordinary(std::int64_t m, std::int64_t n, std::int64_t c, int prec_bits) {
  auto roots = roots_of_unity(c, prec_bits);
  AlgValue s(prec_bits);
  const std::int64_t mr = mod(m, c), nr = mod(n, c);
  for (std::int64_t d : unit_residues(c)) {
    const std::int64_t a = c == 1 ? 0 : inv_mod(d, c);
    s += (*roots)(static_cast<std::int64_t>((static_cast<__int128>(mr) * a + static_cast<__int128>(nr) * d) % c));
  }
  return s;
}

Rational default_weight(const EvenLattice& L) {
  const Signature sig = L.signature();
  return Rational(sig.b_plus - sig.b_minus, 2);
}

KloostermanSpec KloostermanSpec::make(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta,
                                      std::int64_t m, std::int64_t n, std::int64_t c, std::optional<Rational> k) {
  if (alpha.lattice_fingerprint() != L.fingerprint() || beta.lattice_fingerprint() != L.fingerprint())
    throw DomainError("discriminant elements belong to a different lattice");
  if (c < 1) throw DomainError("c must be positive");
  if (!check_index(L, alpha, m))
    throw DomainError("m/(2 det) - q(alpha) is not an integer (m=" + std::to_string(m) + ", alpha=" +
                      alpha.to_string() + ")");
  if (!check_index(L, beta, n))
    throw DomainError("n/(2 det) - q(beta) is not an integer (n=" + std::to_string(n) + ", beta=" + beta.to_string() +
                      ")");
  KloostermanSpec s{L, alpha, beta, m, n, c, k.value_or(default_weight(L)), 0};
  s.sigma = sigma_weight(L, s.k);
  return s;
}

KloostermanEngine::KloostermanEngine(const EvenLattice& L, int prec_bits, std::int64_t shift)
    : group_(L), prec_(prec_bits), shift_(shift) {}

std::shared_ptr<const KloostermanEngine::Table> KloostermanEngine::table(std::int64_t c) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = tables_.find(c);
    if (it != tables_.end()) return it->second;
  }
  auto t = std::make_shared<Table>();
  for (std::int64_t d : unit_residues(c)) {
    const MetaplecticElement g = completion(c, d, shift_);
    WeilRepMatrix r = rho_shintani_matrix(group_, g, prec_);
    WeilRepMatrix conj(r.size(), prec_);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) conj(i, j) = r(i, j).conj();
    t->d.push_back(d);
    t->a.push_back(g.a);
    t->conj_rho.push_back(std::move(conj));
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = tables_.emplace(c, std::move(t));
  return it->second;
}

AlgValue KloostermanEngine::sum(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n, std::int64_t c,
                                const Rational& k) const {
  if (alpha >= group_.size() || beta >= group_.size()) throw DomainError("discriminant index out of range");
  const auto t = table(c);
  const EvenLattice& L = group_.lattice();
  const std::int64_t den = 2 * L.abs_det() * c;
  const int sign = L.det() < 0 ? -1 : 1;
  auto roots = roots_of_unity(den, prec_);
  AlgValue s(prec_);
  Real scratch(prec_);
  const std::int64_t mr = mod(m, den), nr = mod(n, den);
  for (std::size_t i = 0; i < t->d.size(); ++i) {
    const std::int64_t x = static_cast<std::int64_t>(
        (static_cast<__int128>(mr) * mod(t->a[i], den) + static_cast<__int128>(nr) * t->d[i]) % den);
    s.add_product(t->conj_rho[i](alpha, beta), (*roots)(sign * x), scratch);
  }
  s *= i_half_power(-k, prec_);
  return s;
}

AlgValue KloostermanEngine::sum(const KloostermanSpec& spec) const {
  if (!(spec.lattice == lattice())) throw DomainError("spec lattice differs from the engine lattice");
  return sum(group_.index_of(spec.alpha), group_.index_of(spec.beta), spec.m, spec.n, spec.c, spec.k);
}

AlgValue kloosterman_weil(const KloostermanSpec& spec, int prec_bits) {
  const KloostermanEngine engine(spec.lattice, prec_bits);
  return engine.sum(spec);
}

Rational dedekind_sum(std::int64_t d, std::int64_t c) {
  if (c < 1) throw DomainError("dedekind_sum: c must be positive");
  if (std::gcd(d, c) != 1) throw DomainError("dedekind_sum: (d, c) must be 1");
  // sum_{r=1}^{c-1} (2r - c)(2 (dr mod c) - c) / (4 c^2)
  __int128 s = 0;
  const std::int64_t dr = mod(d, c);
  for (std::int64_t r = 1; r < c; ++r) {
    const std::int64_t y = static_cast<std::int64_t>(static_cast<__int128>(dr) * r % c);
    s += static_cast<__int128>(2 * r - c) * (2 * y - c);
  }
  return Rational(static_cast<std::int64_t>(s), 4 * c * c);
}

AlgValue nu_theta(const MetaplecticElement& g, int prec_bits) {
  if (g.c <= 0 || g.c % 4 != 0) throw DomainError("nu_theta: needs c > 0 with 4 | c");
  AlgValue r = AlgValue::from_int(kronecker(g.c, g.d), 0, prec_bits);
  r /= eps(g.d, prec_bits);
  return r;
}

AlgValue nu_eta(const MetaplecticElement& g, int prec_bits) {
  if (g.c <= 0) throw DomainError("nu_eta: needs c > 0");
  // e((a + d)/(24 c) - s(d, c)/2 - 1/8)
  const Rational x = Rational(g.a + g.d, 24 * g.c) - dedekind_sum(g.d, g.c) / Rational(2) - Rational(1, 8);
  return e_frac(x, prec_bits);
}

AlgValue kloosterman_multiplier(MultiplierKind kind, const Rational& m, const Rational& n, std::int64_t c,
                                int prec_bits) {
  if (c < 1) throw DomainError("kloosterman_multiplier: c must be positive");
  if (kind == MultiplierKind::theta) {
    if (c % 4 != 0) throw DomainError("theta sums need 4 | c");
    if (!is_integer(m) || !is_integer(n)) throw DomainError("theta sums need integral m and n");
  } else {
    if (!is_integer(m - Rational(1, 24)) || !is_integer(n - Rational(1, 24)))
      throw DomainError("eta sums need m and n congruent to 1/24 mod 1");
  }
  AlgValue s(prec_bits);
  for (std::int64_t d : unit_residues(c)) {
    const MetaplecticElement g = completion(c, d);
    const AlgValue nu = kind == MultiplierKind::theta ? nu_theta(g, prec_bits) : nu_eta(g, prec_bits);
    s += nu.conj() * e_frac((m * Rational(g.a) + n * Rational(g.d)) / Rational(c), prec_bits);
  }
  return s;
}

AlgValue kloosterman_plus(std::int64_t m, std::int64_t n, std::int64_t c, int prec_bits) {
  const std::int64_t mr = mod(m, 4), nr = mod(n, 4);
  if (mr > 1 || nr > 1) throw DomainError("plus-space sums need m, n = 0, 1 mod 4");
  if (c < 1) throw DomainError("kloosterman_plus: c must be positive");
  AlgValue s = kloosterman_multiplier(MultiplierKind::theta, Rational(m), Rational(n), 4 * c, prec_bits);
  s *= AlgValue::from_int(1, -1, prec_bits);
  if (c % 2 == 1) s *= 2L;
  return s;
}

EtaRelationResult eta_multiplier_relation_check(std::int64_t c, std::int64_t m, std::int64_t n, std::int64_t h,
                                                int prec_bits) {
  if (mod(m, 24) != 1 || mod(n, 24) != 1) throw DomainError("eta relation needs m, n = 1 mod 24");
  if (std::gcd(h, std::int64_t{6}) != 1) throw DomainError("eta relation needs (h, 6) = 1");
  const EvenLattice L(IntMatrix{{12}});
  static std::mutex guard;
  static std::map<int, std::unique_ptr<KloostermanEngine>> engines;
  const KloostermanEngine* engine;
  {
    std::lock_guard<std::mutex> lock(guard);
    auto& slot = engines[prec_bits];
    if (!slot) slot = std::make_unique<KloostermanEngine>(L, prec_bits);
    engine = slot.get();
  }
  const DiscGroup& G = engine->group();
  const Rational k(1, 2);
  const std::size_t ia = G.index_of(DiscElement::from_coords(L, {Rational(mod(h, 12), 12)}));
  AlgValue rhs(prec_bits);
  for (std::int64_t j = 0; j < 12; ++j) {
    const int chi = kronecker(12, j);
    if (chi == 0) continue;
    const std::size_t ib = G.index_of(DiscElement::from_coords(L, {Rational(j, 12)}));
    rhs += engine->sum(ia, ib, m, n, c, k) * static_cast<long>(chi);
  }
  rhs *= static_cast<long>(kronecker(12, h));
  rhs *= e_frac(Rational(1, 8), prec_bits);
  AlgValue lhs = kloosterman_multiplier(MultiplierKind::eta, Rational(m, 24), Rational(n, 24), c, prec_bits);
  Real res = distance(lhs, rhs);
  return {std::move(lhs), std::move(rhs), std::move(res)};
}

}  // namespace weilsum
