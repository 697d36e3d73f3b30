#pragma once

// Even lattices, their dual lattices and discriminant groups L'/L.
//
// A lattice is Z^g with Gram matrix M (symmetric, even diagonal, det != 0).
// Elements of L' are rational vectors x with M x integral; they are stored
// with the common denominator |det M| and reduced into [0, 1)^g, so equality
// of cosets is equality of the stored numerators.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "weilsum/rational.hpp"

namespace weilsum {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;

inline constexpr int kMaxRank = 7;
inline constexpr std::int64_t kMaxAbsDet = 10000;

struct Signature {
  int b_plus;
  int b_minus;
  friend bool operator==(const Signature&, const Signature&) = default;
};

class DiscElement;

class EvenLattice {
 public:
  /// Validates the Gram matrix and computes det, N and the signature.
  explicit EvenLattice(const IntMatrix& gram);

  int rank() const { return rank_; }
  std::int64_t det() const { return det_; }
  std::int64_t abs_det() const { return det_ < 0 ? -det_ : det_; }
  /// |det| / 2; only meaningful when det is even (always the case for odd rank).
  std::int64_t N() const { return abs_det() / 2; }
  Signature signature() const { return signature_; }
  const IntMatrix& gram() const { return gram_; }
  std::int64_t gram(int i, int j) const { return flat_[static_cast<std::size_t>(i * rank_ + j)]; }
  /// det(M) * M^{-1}
  const IntMatrix& adjugate() const { return adjugate_; }
  std::uint64_t fingerprint() const { return fingerprint_; }
  std::string describe() const;  // e.g. "[[2,0],[0,2]]"

  /// x^T M y for integer vectors.
  std::int64_t bilinear(const IntVector& x, const IntVector& y) const;
  /// x^T M x / 2
  std::int64_t quadratic(const IntVector& x) const;

  friend bool operator==(const EvenLattice& a, const EvenLattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  IntVector flat_;
  IntMatrix adjugate_;
  int rank_ = 0;
  std::int64_t det_ = 0;
  Signature signature_{0, 0};
  std::uint64_t fingerprint_ = 0;
};

/// A coset alpha + L in L'/L, canonical representative in [0, 1)^g.
class DiscElement {
 public:
  DiscElement() = default;

  /// alpha = M^{-1} a for an integer vector a.
  static DiscElement from_dual_vector(const EvenLattice& L, const IntVector& a);
  /// Rational coordinates; throws DomainError unless the vector lies in L'.
  static DiscElement from_coords(const EvenLattice& L, const std::vector<Rational>& coords);
  static DiscElement zero(const EvenLattice& L);

  int rank() const { return static_cast<int>(num_.size()); }
  /// Coordinates are num()[i] / denominator().
  const IntVector& num() const { return num_; }
  std::int64_t denominator() const { return den_; }
  std::vector<Rational> coords() const;
  std::string to_string() const;  // "1/2,0,1/2"
  std::uint64_t lattice_fingerprint() const { return fingerprint_; }

  DiscElement operator+(const DiscElement& o) const;
  DiscElement operator-() const;
  DiscElement operator-(const DiscElement& o) const { return *this + (-o); }
  DiscElement scaled(std::int64_t k) const;
  bool is_zero() const;

  friend bool operator==(const DiscElement& a, const DiscElement& b) {
    return a.fingerprint_ == b.fingerprint_ && a.num_ == b.num_;
  }

 private:
  DiscElement(IntVector num, std::int64_t den, std::uint64_t fp);
  void reduce();

  IntVector num_;
  std::int64_t den_ = 1;
  std::uint64_t fingerprint_ = 0;
};

/// q(alpha) mod 1 in [0, 1).
Rational q(const EvenLattice& L, const DiscElement& alpha);
/// <alpha, beta> mod 1 in [0, 1).
Rational bilinear(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta);
/// Exact values on the canonical representatives (not reduced mod 1).
Rational q_exact(const EvenLattice& L, const DiscElement& alpha);
Rational bilinear_exact(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta);
/// <alpha, r> for alpha's canonical representative and r in L (an integer).
std::int64_t pair_with_lattice(const EvenLattice& L, const DiscElement& alpha, const IntVector& r);
/// M * (|det| alpha) as an integer vector, i.e. the coefficients of <|det| alpha, e_i>.
IntVector dual_image_scaled(const EvenLattice& L, const DiscElement& alpha);

/// m / (2 det) - q(alpha) is an integer.
bool check_index(const EvenLattice& L, const DiscElement& alpha, std::int64_t m);

/// det * (<gamma, alpha> beta - <gamma, beta> alpha) on canonical representatives;
/// throws InternalError if the result is not in L.
IntVector sylvester_combination(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta,
                                const DiscElement& gamma);

/// l^2 = mn (mod 2N), or mod 4N when g = 1. Requires odd rank and
/// l/det - <alpha,beta>, m/(2det) - q(alpha), n/(2det) - q(beta) integral.
bool check_ell_congruence(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta, std::int64_t ell,
                          std::int64_t m, std::int64_t n);

class DiscGroup {
 public:
  explicit DiscGroup(const EvenLattice& L);

  const EvenLattice& lattice() const { return lattice_; }
  /// Nontrivial invariant factors d_1 | d_2 | ... with product |det|.
  const IntVector& elementary_divisors() const { return divisors_; }
  const std::vector<DiscElement>& generators() const { return generators_; }
  /// All |det| elements, in a fixed order (element 0 is zero).
  const std::vector<DiscElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t index_of(const DiscElement& alpha) const;
  const DiscElement& operator[](std::size_t i) const { return elements_[i]; }

 private:
  EvenLattice lattice_;
  IntVector divisors_;
  std::vector<DiscElement> generators_;
  std::vector<DiscElement> elements_;
  IntMatrix snf_left_;  // U with U M V = diag
  IntVector strides_;
};

/// Parses {"gram": [[...], ...]}.
EvenLattice lattice_from_json(const std::string& text);
std::string lattice_to_json(const EvenLattice& L);

}  // namespace weilsum
