#include "weilsum/weilrep.hpp"

#include <cmath>
#include <complex>

#include "json.hpp"
#include "weilsum/error.hpp"

namespace weilsum {

namespace {

using cplx = std::complex<long double>;

constexpr double kShintaniBudget = 1e8;

std::int64_t floor_div_int(std::int64_t x, std::int64_t y) {
  std::int64_t q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

// Principal square root; the negative real axis maps to the positive imaginary axis.
cplx principal_sqrt(cplx z) {
  if (z.imag() == 0 && z.real() < 0) return cplx(0, std::sqrt(-z.real()));
  return std::sqrt(z);
}

cplx phi(const MetaplecticElement& g, cplx tau) {
  return static_cast<long double>(g.branch) *
         principal_sqrt(static_cast<long double>(g.c) * tau + static_cast<long double>(g.d));
}

cplx mobius_action(const MetaplecticElement& g, cplx tau) {
  return (static_cast<long double>(g.a) * tau + static_cast<long double>(g.b)) /
         (static_cast<long double>(g.c) * tau + static_cast<long double>(g.d));
}

std::int64_t checked_mul_add(std::int64_t x, std::int64_t y, std::int64_t u, std::int64_t v) {
  const __int128 r = static_cast<__int128>(x) * y + static_cast<__int128>(u) * v;
  if (r > INT64_MAX || r < INT64_MIN) throw BudgetExceeded("metaplectic product overflows 64-bit entries");
  return static_cast<std::int64_t>(r);
}

}  // namespace

MetaplecticElement::MetaplecticElement(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_, int branch_)
    : a(a_), b(b_), c(c_), d(d_), branch(branch_) {
  if (static_cast<__int128>(a) * d - static_cast<__int128>(b) * c != 1)
    throw DomainError("metaplectic element: ad - bc must be 1");
  if (branch != 1 && branch != -1) throw DomainError("metaplectic element: branch must be +1 or -1");
}

std::string MetaplecticElement::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," + std::to_string(d) + ")" +
         (branch == 1 ? "+" : "-");
}

MetaplecticElement mp_multiply(const MetaplecticElement& g1, const MetaplecticElement& g2) {
  MetaplecticElement r(checked_mul_add(g1.a, g2.a, g1.b, g2.c), checked_mul_add(g1.a, g2.b, g1.b, g2.d),
                       checked_mul_add(g1.c, g2.a, g1.d, g2.c), checked_mul_add(g1.c, g2.b, g1.d, g2.d), 1);
  const cplx tau(0, 1);
  const cplx value = phi(g1, mobius_action(g2, tau)) * phi(g2, tau);
  const cplx root = principal_sqrt(static_cast<long double>(r.c) * tau + static_cast<long double>(r.d));
  r.branch = std::abs(value - root) < std::abs(value + root) ? 1 : -1;
  return r;
}

MetaplecticElement mp_inverse(const MetaplecticElement& g) {
  MetaplecticElement inv(g.d, -g.b, -g.c, g.a, 1);
  if (mp_multiply(g, inv) != MetaplecticElement::identity()) inv.branch = -1;
  return inv;
}

std::vector<Letter> decompose(const MetaplecticElement& g, WordStrategy strategy) {
  std::vector<Letter> word;
  std::int64_t a = g.a, b = g.b, c = g.c, d = g.d;
  while (c != 0) {
    const std::int64_t q = strategy == WordStrategy::nearest ? floor_div_int(2 * a + c, 2 * c) : floor_div_int(a, c);
    word.push_back({Letter::T, q});
    word.push_back({Letter::S, 1});
    // (a b; c d) = T^q S (c d; -(a - qc) -(b - qd))
    const std::int64_t a2 = a - q * c, b2 = b - q * d;
    a = c;
    b = d;
    c = -a2;
    d = -b2;
  }
  if (a == 1) {
    word.push_back({Letter::T, b});
  } else {
    word.push_back({Letter::Z, 1});
    word.push_back({Letter::T, -b});
  }
  return word;
}

MetaplecticElement evaluate_word(const std::vector<Letter>& word) {
  MetaplecticElement x;
  for (const auto& w : word) {
    switch (w.kind) {
      case Letter::T: x = mp_multiply(x, MetaplecticElement::T(w.power)); break;
      case Letter::S: x = mp_multiply(x, MetaplecticElement::S()); break;
      case Letter::Z: x = mp_multiply(x, MetaplecticElement::Z()); break;
    }
  }
  return x;
}

WeilRepMatrix::WeilRepMatrix(std::size_t n, int prec_bits) : n_(n), prec_(prec_bits) {
  entries_.reserve(n * n);
  for (std::size_t i = 0; i < n * n; ++i) entries_.emplace_back(prec_bits);
}

WeilRepMatrix WeilRepMatrix::identity(std::size_t n, int prec_bits) {
  WeilRepMatrix m(n, prec_bits);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = AlgValue::one(prec_bits);
  return m;
}

WeilRepMatrix WeilRepMatrix::operator*(const WeilRepMatrix& o) const {
  if (o.n_ != n_) throw InternalError("matrix size mismatch");
  WeilRepMatrix r(n_, prec_);
  Real scratch(prec_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const AlgValue& x = (*this)(i, k);
      if (x.re().is_zero() && x.im().is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) r(i, j).add_product(x, o(k, j), scratch);
    }
  return r;
}

WeilRepMatrix WeilRepMatrix::adjoint() const {
  WeilRepMatrix r(n_, prec_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j).conj();
  return r;
}

void WeilRepMatrix::scale_columns(const std::vector<AlgValue>& w) {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) (*this)(i, j) *= w[j];
}

std::string WeilRepMatrix::to_json(const DiscGroup& group, const MetaplecticElement& g) const {
  const int digits = decimal_digits(prec_);
  nlohmann::ordered_json j;
  j["lattice"] = nlohmann::json::parse(lattice_to_json(group.lattice()))["gram"];
  j["gamma"] = {g.a, g.b, g.c, g.d};
  j["branch"] = g.branch;
  j["prec_bits"] = prec_;
  nlohmann::ordered_json index = nlohmann::ordered_json::array();
  for (const auto& e : group.elements()) index.push_back(e.to_string());
  j["index"] = index;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < n_; ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < n_; ++c) {
      const AlgValue& v = (*this)(r, c);
      row.push_back({{"re", v.re().to_string(digits)}, {"im", v.im().to_string(digits)}});
    }
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j.dump(2);
}

WeilRepMatrix rho_T(const DiscGroup& group, std::int64_t k, int prec_bits) {
  const std::size_t n = group.size();
  WeilRepMatrix m(n, prec_bits);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = e_frac(q(group.lattice(), group[i]) * Rational(k), prec_bits);
  return m;
}

WeilRepMatrix rho_S(const DiscGroup& group, int prec_bits) {
  const EvenLattice& L = group.lattice();
  const std::size_t n = group.size();
  const Signature sig = L.signature();
  // i^{(b- - b+)/2} / sqrt|det|
  AlgValue pref = i_half_power(Rational(sig.b_minus - sig.b_plus, 2), prec_bits);
  pref *= sqrt_pos(Rational(1, L.abs_det()), prec_bits);
  auto roots = roots_of_unity(L.abs_det(), prec_bits);
  WeilRepMatrix m(n, prec_bits);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational b = bilinear(L, group[i], group[j]);  // den divides |det|
      const std::int64_t k = b.numerator() * (L.abs_det() / b.denominator());
      m(j, i) = pref * (*roots)(-k);
    }
  return m;
}

WeilRepMatrix rho_generators(const DiscGroup& group, const MetaplecticElement& g, WordStrategy strategy,
                             int prec_bits) {
  const auto word = decompose(g, strategy);
  const MetaplecticElement lift = evaluate_word(word);
  if (!lift.same_matrix(g)) throw InternalError("word decomposition does not reproduce " + g.to_string());
  const std::size_t n = group.size();
  const WeilRepMatrix s = rho_S(group, prec_bits);
  std::vector<Rational> qs;
  for (const auto& e : group.elements()) qs.push_back(q(group.lattice(), e));

  WeilRepMatrix r = WeilRepMatrix::identity(n, prec_bits);
  for (const auto& w : word) {
    switch (w.kind) {
      case Letter::T: {
        if (w.power == 0) break;
        std::vector<AlgValue> diag;
        diag.reserve(n);
        for (const auto& qa : qs) diag.push_back(e_frac(qa * Rational(w.power), prec_bits));
        r.scale_columns(diag);
        break;
      }
      case Letter::S: r = r * s; break;
      case Letter::Z: r = r * s * s; break;
    }
  }
  if (lift.branch != g.branch) {
    // (I, -1) = Z^2
    const WeilRepMatrix z = s * s;
    r = r * (z * z);
  }
  return r;
}

namespace {

struct ShintaniSetup {
  std::int64_t D;
  std::int64_t den;  // 2 |det| c
  int g;
  AlgValue pref;
  std::shared_ptr<const RootsOfUnity> roots;
};

ShintaniSetup shintani_setup(const EvenLattice& L, const MetaplecticElement& gm, int prec_bits) {
  if (gm.c <= 0) throw DomainError("rho_shintani: needs c > 0");
  if (gm.branch != 1) throw DomainError("rho_shintani: needs the principal lift (branch +1)");
  const int g = L.rank();
  if (std::pow(static_cast<double>(gm.c), g) > kShintaniBudget)
    throw BudgetExceeded("rho_shintani: c^g exceeds enumeration budget");
  const std::int64_t D = L.abs_det();
  std::int64_t cg = 1;
  for (int i = 0; i < g; ++i) cg *= gm.c;
  const Signature sig = L.signature();
  AlgValue pref = i_half_power(Rational(sig.b_minus - sig.b_plus, 2), prec_bits);
  pref *= sqrt_pos(Rational(1, cg) * Rational(1, D), prec_bits);
  const std::int64_t den = 2 * D * gm.c;
  return {D, den, g, std::move(pref), roots_of_unity(den, prec_bits)};
}

// For one alpha: per r, the beta-independent part a X.wX of the phase and wX = M(alpha + r).
struct AlphaPart {
  std::vector<std::int64_t> base;      // a * X.wX mod den
  std::vector<std::int64_t> w;         // wX flattened, reduced mod den
};

AlphaPart alpha_part(const EvenLattice& L, const MetaplecticElement& gm, const DiscElement& alpha,
                     const ShintaniSetup& st) {
  const int g = st.g;
  const std::int64_t D = st.D, c = gm.c, den = st.den;
  const IntVector A = alpha.num();
  IntVector wa = dual_image_scaled(L, alpha);
  for (auto& x : wa) x /= D;
  AlphaPart part;
  IntVector r(static_cast<std::size_t>(g), 0);
  IntVector X(static_cast<std::size_t>(g)), wX(static_cast<std::size_t>(g));
  const std::int64_t am = mod(gm.a, den);
  while (true) {
    for (int i = 0; i < g; ++i) X[i] = A[i] + D * r[i];
    __int128 xx = 0;
    for (int i = 0; i < g; ++i) {
      __int128 s = wa[i];
      for (int j = 0; j < g; ++j) s += static_cast<__int128>(L.gram(i, j)) * r[j];
      wX[i] = static_cast<std::int64_t>(s % den);
      xx += static_cast<__int128>(X[i]) * wX[i];
    }
    const std::int64_t t = static_cast<std::int64_t>(((xx % den) + den) % den);
    part.base.push_back(static_cast<std::int64_t>(static_cast<__int128>(am) * t % den));
    for (int i = 0; i < g; ++i) part.w.push_back(wX[i]);
    int i = 0;
    while (i < g && ++r[i] == c) r[i++] = 0;
    if (i == g) break;
  }
  return part;
}

AlgValue shintani_entry(const EvenLattice& L, const MetaplecticElement& gm, const AlphaPart& part,
                        const DiscElement& beta, const ShintaniSetup& st, std::vector<std::int64_t>& counts,
                        int prec_bits) {
  const int g = st.g;
  const std::int64_t den = st.den, D = st.D;
  const IntVector& B = beta.num();
  IntVector wb = dual_image_scaled(L, beta);
  __int128 bb = 0;
  for (int i = 0; i < g; ++i) bb += static_cast<__int128>(B[i]) * (wb[i] / D);
  const std::int64_t fixed =
      static_cast<std::int64_t>((static_cast<__int128>(mod(gm.d, den)) * (((bb % den) + den) % den)) % den);
  std::fill(counts.begin(), counts.end(), 0);
  const std::size_t npts = part.base.size();
  for (std::size_t p = 0; p < npts; ++p) {
    __int128 bw = 0;
    const std::int64_t* w = &part.w[p * static_cast<std::size_t>(g)];
    for (int i = 0; i < g; ++i) bw += static_cast<__int128>(B[i]) * w[i];
    std::int64_t k = static_cast<std::int64_t>((part.base[p] - 2 * (bw % den) + fixed) % den);
    if (k < 0) k += den;
    ++counts[static_cast<std::size_t>(k)];
  }
  AlgValue s(prec_bits);
  Real scratch(prec_bits);
  for (std::int64_t k = 0; k < den; ++k)
    if (counts[static_cast<std::size_t>(k)] != 0) s.add_scaled((*st.roots)(k), counts[static_cast<std::size_t>(k)], scratch);
  return s * st.pref;
}

}  // namespace

AlgValue rho_shintani(const EvenLattice& L, const MetaplecticElement& g, const DiscElement& alpha,
                      const DiscElement& beta, int prec_bits) {
  const ShintaniSetup st = shintani_setup(L, g, prec_bits);
  const AlphaPart part = alpha_part(L, g, alpha, st);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(st.den), 0);
  return shintani_entry(L, g, part, beta, st, counts, prec_bits);
}

WeilRepMatrix rho_shintani_matrix(const DiscGroup& group, const MetaplecticElement& g, int prec_bits) {
  const EvenLattice& L = group.lattice();
  const ShintaniSetup st = shintani_setup(L, g, prec_bits);
  const std::size_t n = group.size();
  WeilRepMatrix m(n, prec_bits);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(st.den), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const AlphaPart part = alpha_part(L, g, group[i], st);
    for (std::size_t j = 0; j < n; ++j) m(i, j) = shintani_entry(L, g, part, group[j], st, counts, prec_bits);
  }
  return m;
}

Real unitarity_defect(const WeilRepMatrix& m) {
  const WeilRepMatrix p = m * m.adjoint();
  Real worst(m.prec_bits());
  const AlgValue one = AlgValue::one(m.prec_bits());
  const AlgValue zero(m.prec_bits());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      Real d = distance(p(i, j), i == j ? one : zero);
      if (d > worst) worst = d;
    }
  return worst;
}

std::int64_t sigma_weight(const EvenLattice& L, const Rational& k) {
  if (!is_integer(k * Rational(2))) throw DomainError("sigma_weight: 2k must be an integer");
  const Signature sig = L.signature();
  const Rational s = k + Rational(sig.b_minus - sig.b_plus, 2);
  if (!is_integer(s)) throw DomainError("weight " + to_string(k) + " is inconsistent with the signature of " + L.describe());
  return s.numerator();
}

}  // namespace weilsum
