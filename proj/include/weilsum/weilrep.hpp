#pragma once

// The metaplectic double cover of SL2(Z) and the Weil representation of an
// even lattice, computed two ways: as a product of generator matrices and by
// the closed exponential-sum formula for each coefficient.

#include <cstdint>
#include <string>
#include <vector>

#include "weilsum/lattice.hpp"
#include "weilsum/numeric.hpp"

namespace weilsum {

/// (gamma, phi) with gamma = (a b; c d) and phi(tau) = branch * sqrt(c tau + d), principal root.
struct MetaplecticElement {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  int branch = 1;

  MetaplecticElement() = default;
  MetaplecticElement(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_, int branch_ = 1);

  static MetaplecticElement identity() { return {}; }
  static MetaplecticElement T(std::int64_t k = 1) { return {1, k, 0, 1, 1}; }
  static MetaplecticElement S() { return {0, -1, 1, 0, 1}; }
  /// S^2 = (ST)^3
  static MetaplecticElement Z() { return {-1, 0, 0, -1, 1}; }

  bool same_matrix(const MetaplecticElement& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  std::string to_string() const;  // "(a,b;c,d)+"
  friend bool operator==(const MetaplecticElement&, const MetaplecticElement&) = default;
};

MetaplecticElement mp_multiply(const MetaplecticElement& g1, const MetaplecticElement& g2);
MetaplecticElement mp_inverse(const MetaplecticElement& g);

enum class WordStrategy { nearest, floor };

struct Letter {
  enum Kind { T, S, Z } kind;
  std::int64_t power = 1;  // used by T only
};

/// Euclidean word in T, S, Z whose product has the matrix of g (branch not tracked).
std::vector<Letter> decompose(const MetaplecticElement& g, WordStrategy strategy = WordStrategy::nearest);
MetaplecticElement evaluate_word(const std::vector<Letter>& word);

/// Square matrix indexed by the canonical enumeration of a discriminant group.
class WeilRepMatrix {
 public:
  WeilRepMatrix(std::size_t n, int prec_bits);
  static WeilRepMatrix identity(std::size_t n, int prec_bits);

  std::size_t size() const { return n_; }
  int prec_bits() const { return prec_; }
  AlgValue& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const AlgValue& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  WeilRepMatrix operator*(const WeilRepMatrix& o) const;
  WeilRepMatrix adjoint() const;
  /// this * diag(w)
  void scale_columns(const std::vector<AlgValue>& w);

  std::string to_json(const DiscGroup& group, const MetaplecticElement& g) const;

 private:
  std::size_t n_;
  int prec_;
  std::vector<AlgValue> entries_;
};

WeilRepMatrix rho_T(const DiscGroup& group, std::int64_t k = 1, int prec_bits = kDefaultPrecBits);
WeilRepMatrix rho_S(const DiscGroup& group, int prec_bits = kDefaultPrecBits);
/// rho(g) as a product of generator matrices along the chosen word.
WeilRepMatrix rho_generators(const DiscGroup& group, const MetaplecticElement& g,
                             WordStrategy strategy = WordStrategy::nearest, int prec_bits = kDefaultPrecBits);

/// Closed-form coefficient rho_{alpha beta}(g); needs c > 0 and branch +1.
AlgValue rho_shintani(const EvenLattice& L, const MetaplecticElement& g, const DiscElement& alpha,
                      const DiscElement& beta, int prec_bits = kDefaultPrecBits);
/// All coefficients of rho(g) by the closed form.
WeilRepMatrix rho_shintani_matrix(const DiscGroup& group, const MetaplecticElement& g,
                                  int prec_bits = kDefaultPrecBits);

/// max_{ij} |(M M^*)_{ij} - delta_{ij}|
Real unitarity_defect(const WeilRepMatrix& m);

/// k + (b- - b+)/2; throws unless integral.
std::int64_t sigma_weight(const EvenLattice& L, const Rational& k);

struct EtaRelationResult {
  AlgValue lhs;
  AlgValue rhs;
  Real residual;
};

/// Compares the eta-multiplier Kloosterman sum at (m/24, n/24) with the
/// combination of lattice sums on [[12]] for m, n = 1 mod 24 and (h, 6) = 1.
/// The two sides differ by the constant e(1/8), which is built into rhs.
EtaRelationResult eta_multiplier_relation_check(std::int64_t c, std::int64_t m, std::int64_t n, std::int64_t h = 1,
                                                int prec_bits = kDefaultPrecBits);

}  // namespace weilsum
