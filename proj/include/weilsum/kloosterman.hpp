#pragma once

// Kloosterman sums: the classical S(m, n, c), sums twisted by the Weil
// representation of a lattice, and sums for the theta and eta multiplier
// systems.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "weilsum/lattice.hpp"
#include "weilsum/numeric.hpp"
#include "weilsum/weilrep.hpp"

namespace weilsum {

AlgValue kloosterman_ordinary(std::int64_t m, std::int64_t n, std::int64_t c, int prec_bits = kDefaultPrecBits);

/// Default weight (b+ - b-)/2, for which sigma = 0.
Rational default_weight(const EvenLattice& L);

struct KloostermanSpec {
  EvenLattice lattice;
  DiscElement alpha;
  DiscElement beta;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t c = 1;
  Rational k;
  std::int64_t sigma = 0;

  /// Validates the index conditions on m, n and the weight; k defaults to default_weight.
  static KloostermanSpec make(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta, std::int64_t m,
                              std::int64_t n, std::int64_t c, std::optional<Rational> k = std::nullopt);
};

/// The matrix completion of the bottom row (c, d) used by every sum: a = d^{-1} mod c in [0, c), shifted by t c.
MetaplecticElement completion(std::int64_t c, std::int64_t d, std::int64_t t = 0);
/// d in [0, c) coprime to c, in increasing order; {0} for c = 1.
std::vector<std::int64_t> unit_residues(std::int64_t c);

/// Evaluates lattice Kloosterman sums, caching conj(rho) over all d mod c.
/// Safe to share between threads.
class KloostermanEngine {
 public:
  explicit KloostermanEngine(const EvenLattice& L, int prec_bits = kDefaultPrecBits, std::int64_t shift = 0);

  const DiscGroup& group() const { return group_; }
  const EvenLattice& lattice() const { return group_.lattice(); }
  int prec_bits() const { return prec_; }

  /// e^{-pi i k/2} sum_d conj(rho_{alpha beta}(gamma_d)) e((m a + n d) / (2 det c)); no index checks.
  AlgValue sum(std::size_t alpha, std::size_t beta, std::int64_t m, std::int64_t n, std::int64_t c,
               const Rational& k) const;
  AlgValue sum(const KloostermanSpec& spec) const;

 private:
  struct Table {
    std::vector<std::int64_t> d;
    std::vector<std::int64_t> a;
    std::vector<WeilRepMatrix> conj_rho;
  };
  std::shared_ptr<const Table> table(std::int64_t c) const;

  DiscGroup group_;
  int prec_;
  std::int64_t shift_;
  mutable std::mutex mutex_;
  mutable std::map<std::int64_t, std::shared_ptr<const Table>> tables_;
};

/// One-shot evaluation of a lattice Kloosterman sum.
AlgValue kloosterman_weil(const KloostermanSpec& spec, int prec_bits = kDefaultPrecBits);

enum class MultiplierKind { theta, eta };

/// s(d, c) = sum_{r mod c} ((r/c)) ((dr/c)), exact.
Rational dedekind_sum(std::int64_t d, std::int64_t c);
/// (c/d) eps_d^{-1} on Gamma_0(4).
AlgValue nu_theta(const MetaplecticElement& g, int prec_bits = kDefaultPrecBits);
/// exp(pi i ((a + d)/(12c) - s(d, c) - 1/4)) for c > 0.
AlgValue nu_eta(const MetaplecticElement& g, int prec_bits = kDefaultPrecBits);

/// sum_{d mod c} conj(nu(gamma_d)) e((m a + n d) / c). Theta: 4 | c, m and n integers.
/// Eta: m - 1/24 and n - 1/24 integers.
AlgValue kloosterman_multiplier(MultiplierKind kind, const Rational& m, const Rational& n, std::int64_t c,
                                int prec_bits = kDefaultPrecBits);

/// Plus-space sum at modulus 4c: (1 - i) S(m, n, 4c, nu_theta), doubled for odd c.
AlgValue kloosterman_plus(std::int64_t m, std::int64_t n, std::int64_t c, int prec_bits = kDefaultPrecBits);

}  // namespace weilsum
