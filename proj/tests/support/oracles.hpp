#pragma once

// Brute-force helpers shared by the unit tests and the acceptance binary.

#include <cstdint>
#include <vector>

#include "weilsum/error.hpp"
#include "weilsum/identity.hpp"
#include "weilsum/numth.hpp"

namespace weilsum::testing {

inline EvenLattice diag(const std::vector<std::int64_t>& d) {
  IntMatrix M(d.size(), IntVector(d.size(), 0));
  for (std::size_t i = 0; i < d.size(); ++i) M[i][i] = d[i];
  return EvenLattice(M);
}

inline bool hypotheses_hold(const IdentityEngine& e, std::size_t ia, std::size_t ib, std::int64_t m,
                            std::int64_t n) {
  try {
    e.check_hypotheses(ia, ib, m, n);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

/// sum_{v mod u} sum_{r in L/uL} e_u(d f(v, r)), f(v, r) = m~ v^2 - <alpha, r> v - q(r) + <beta, r> - l~ v,
/// every phase through e_frac.
inline AlgValue double_gauss(const EvenLattice& L, const DiscElement& a, const DiscElement& b, std::int64_t mt,
                             std::int64_t lt, std::int64_t d, std::int64_t u, int prec_bits) {
  const int g = L.rank();
  AlgValue s(prec_bits);
  IntVector r(static_cast<std::size_t>(g), 0);
  while (true) {
    const std::int64_t ar = pair_with_lattice(L, a, r), br = pair_with_lattice(L, b, r), qr = L.quadratic(r);
    for (std::int64_t v = 0; v < u; ++v) {
      const std::int64_t f = mt * v * v - ar * v - qr + br - lt * v;
      s += e_frac(Rational(mod(d * f, u), u), prec_bits);
    }
    int i = 0;
    while (i < g && ++r[i] == u) r[i++] = 0;
    if (i == g) break;
  }
  return s;
}

struct BadPrimeCase {
  std::size_t ia, ib;
  std::int64_t m, n, ell, p;
  int lambda;
};

/// Points (alpha, beta, m, n, l) meeting the identity hypotheses, at primes p | 2 det m,
/// with lambda <= 3 for p = 2 and lambda <= 2 otherwise.
inline std::vector<BadPrimeCase> bad_prime_corpus(const IdentityEngine& e, std::int64_t mmax,
                                                  std::size_t max_cases) {
  const EvenLattice& L = e.lattice();
  const DiscGroup& G = e.group();
  std::vector<BadPrimeCase> out;
  for (std::size_t ia = 0; ia < G.size(); ++ia)
    for (std::size_t ib = 0; ib < G.size(); ++ib)
      for (std::int64_t m = -mmax; m <= mmax; ++m) {
        if (!check_index(L, G[ia], m)) continue;
        for (std::int64_t n = -mmax; n <= mmax; ++n) {
          if (!hypotheses_hold(e, ia, ib, m, n)) continue;
          const Rational b = bilinear(L, G[ia], G[ib]);
          const std::int64_t ell0 = mod((b * Rational(L.det())).numerator(), L.abs_det());
          for (std::int64_t ell = ell0; ell < 3 * L.abs_det(); ell += L.abs_det())
            for (std::int64_t p : {2, 3, 5}) {
              if ((2 * L.abs_det() * m) % p != 0) continue;
              const int lmax = p == 2 ? 3 : 2;
              for (int lambda = 1; lambda <= lmax; ++lambda) {
                out.push_back({ia, ib, m, n, ell, p, lambda});
                if (out.size() >= max_cases) return out;
              }
            }
        }
      }
  return out;
}

/// Exact checks of the point-count lemmas on one corpus case; returns false on the first violation.
inline bool count_lemmas_hold(const LocalFactorInput& in) {
  const std::int64_t p = in.p;
  const int lam = in.lambda, g = in.lattice->rank();
  for (int k = 0; k <= lam; ++k) {
    if (count_Mj(in, 0, k) != ipow(p, (g + 1) * (lam - k)) * count_solutions(in, k)) return false;
    for (int j = 0; j <= k; ++j) {
      const std::int64_t mj = count_Mj(in, j, k);
      if (j < k && count_Mj(in, j + 1, k) > mj) return false;
      const int mu = in.mu, nu = in.nu;
      const std::int64_t bound =
          j >= nu + mu ? ipow(p, (g + 1) * (lam - j + mu) + g * nu) : ipow(p, (g + 1) * lam - j + mu);
      if (mj > bound) return false;
    }
  }
  const int h = lam / 2;
  const std::int64_t lhs = p * (count_solutions(in, lam) - ipow(p, g) * count_solutions(in, lam - 1));
  const std::int64_t rhs = p * count_Mj(in, h, lam) - count_Mj(in, h, lam - 1);
  return lhs == rhs;
}

}  // namespace weilsum::testing
