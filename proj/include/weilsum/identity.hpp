#pragma once

// Both sides of the exact formula for lattice Kloosterman sums: the divisor
// sum of Kloosterman sums L_v(c) and the Weyl-type sum R_v(c) weighted by the
// genus character (rank one) or the local factors xi (odd rank). Also the
// classical theta and eta cases and the point counts behind xi.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "weilsum/kloosterman.hpp"
#include "weilsum/lattice.hpp"
#include "weilsum/numeric.hpp"

namespace weilsum {

/// A x^2 + B xy + C y^2 with A = a N.
struct QuadFormTriple {
  std::int64_t A;
  std::int64_t B;
  std::int64_t C;
};

enum class ChiMode { definition, product };

/// Genus character chi_m of the triple for level N; m a fundamental discriminant.
/// Product mode needs the canonical shape A = N c.
int chi_m(std::int64_t m, const QuadFormTriple& t, std::int64_t N, ChiMode mode = ChiMode::product);
/// Definition mode restricted to one splitting N = N1 N2; nullopt if that form represents no unit mod m.
std::optional<int> chi_m_split(std::int64_t m, const QuadFormTriple& t, std::int64_t N, std::int64_t N1);

/// m_L = (-4)^{(g-1)/2} m
std::int64_t m_lattice(std::int64_t m, int g);
/// p* = (-1/p) p for odd p; (-1/m') 2^mu for p = 2 with m = 2^mu m'.
std::int64_t p_star(std::int64_t p, std::int64_t m);

struct LocalFactorInput {
  const EvenLattice* lattice = nullptr;
  DiscElement alpha;
  DiscElement beta;
  std::int64_t ell = 0, m = 0, n = 0;
  std::int64_t p = 2;
  int lambda = 0;

  // derived
  std::int64_t m_tilde = 0;  // m/(2 det) - q(alpha)
  std::int64_t n_tilde = 0;  // n/(2 det) - q(beta)
  std::int64_t l_tilde = 0;  // l/det - <alpha, beta>
  int nu = 0;                // p^nu || 2 det
  int mu = 0;                // p^mu || m
  std::int64_t pstar = 0;
  std::int64_t mL = 0;
  IntVector w_alpha;  // M alpha
  IntVector w_beta;   // M beta

  /// Validates odd rank, integrality of the tilde quantities and l^2 = mn (mod 2N).
  static LocalFactorInput make(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta,
                               std::int64_t ell, std::int64_t m, std::int64_t n, std::int64_t p, int lambda);
};

/// Solutions (x, y) in Z/p^j x L/p^jL of m~ x^2 - <alpha,y> x - q(y) + <beta,y> - l~ x + n~ = 0 mod p^j.
std::int64_t count_solutions(const LocalFactorInput& in, int j);
/// Pairs (v, r) mod p^lambda in the set M_j(p^k), j <= k <= lambda.
std::int64_t count_Mj(const LocalFactorInput& in, int j, int k);

/// Local factor at p^lambda; exact.
Rational xi_local(const LocalFactorInput& in);
/// Product of the local factors over p^lambda || c.
Rational xi(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta, std::int64_t ell, std::int64_t m,
            std::int64_t n, std::int64_t c);

struct IdentityResult {
  AlgValue lhs;
  AlgValue rhs;
  Real residual;
};

struct FourierCoefficient {
  std::int64_t ell;
  AlgValue value;   // (1/2Nc) sum_v e(-v l/(det c)) L_v(c)
  Rational weight;  // the weight on the right
};

/// Evaluates both sides for one lattice; safe to share between threads.
class IdentityEngine {
 public:
  explicit IdentityEngine(const EvenLattice& L, int prec_bits = kDefaultPrecBits, ChiMode mode = ChiMode::product);

  const EvenLattice& lattice() const { return kl_.lattice(); }
  const DiscGroup& group() const { return kl_.group(); }
  const KloostermanEngine& kloosterman() const { return kl_; }
  int prec_bits() const { return prec_; }

  /// Throws DomainError unless the rank is odd, the index conditions hold and (-1)^{(g-1)/2} m is fundamental.
  void check_hypotheses(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n) const;

  /// chi_m(Nc, l, (l^2 - mn)/4Nc) for rank one (0 unless l^2 = mn mod 4Nc), xi otherwise.
  Rational weight(std::size_t alpha, std::size_t beta, std::int64_t ell, std::int64_t m, std::int64_t n,
                  std::int64_t c) const;

  AlgValue lhs_Lv(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t v,
                  const Rational& k) const;
  AlgValue rhs_Rv(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n, std::int64_t c,
                  std::int64_t v) const;
  IdentityResult verify(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n, std::int64_t c,
                        std::int64_t v, const Rational& k) const;
  std::vector<FourierCoefficient> fourier_coefficients(std::size_t alpha, std::size_t beta, std::int64_t m,
                                                       std::int64_t n, std::int64_t c, const Rational& k) const;
  /// S_{v alpha, beta}(m v^2, n, c) from the weights alone.
  AlgValue fast_kloosterman(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n, std::int64_t c,
                            std::int64_t v, const Rational& k) const;

 private:
  using Key = std::tuple<std::size_t, std::size_t, std::int64_t, std::int64_t, std::int64_t>;
  using Weights = std::vector<std::pair<std::int64_t, Rational>>;
  std::shared_ptr<const Weights> weights(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n,
                                         std::int64_t c) const;
  AlgValue weyl_sum(const Weights& w, std::int64_t v, std::int64_t c) const;

  KloostermanEngine kl_;
  int prec_;
  ChiMode mode_;
  mutable std::mutex mutex_;
  mutable std::map<Key, std::shared_ptr<const Weights>> cache_;
};

AlgValue lhs_Lv(const KloostermanSpec& spec, std::int64_t v, int prec_bits = kDefaultPrecBits);
AlgValue rhs_Rv(const KloostermanSpec& spec, std::int64_t v, int prec_bits = kDefaultPrecBits);
IdentityResult verify_identity(const KloostermanSpec& spec, std::int64_t v, int prec_bits = kDefaultPrecBits);
AlgValue fast_kloosterman(const KloostermanSpec& spec, std::int64_t v, int prec_bits = kDefaultPrecBits);

/// Theta case: sum_u (m/u) sqrt(u/c) S+(m v^2/u^2, n, c/u) against 4 sum_l chi_m(c, l, .) e(l v / 2c).
IdentityResult verify_theta_identity(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t v,
                                     int prec_bits = kDefaultPrecBits);
/// Eta case, m and n = 1 mod 24 and (v, 6) = 1.
IdentityResult verify_eta_identity(std::int64_t m, std::int64_t n, std::int64_t c, std::int64_t v,
                                   int prec_bits = kDefaultPrecBits);

}  // namespace weilsum
