#pragma once

// Empirical checks of the Weil-type bound
//   |S_{alpha,beta}(m, n, c)| << 2^omega(c) tau((v, c)) (m0 n, c)^{1/2} c^{1/2},  m = m0 v^2,
// and of the square-root count estimate used in its proof.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weilsum/kloosterman.hpp"
#include "weilsum/numth.hpp"

namespace weilsum {

struct BoundReport {
  std::string lattice_id;
  int rank = 0;
  std::int64_t abs_det = 0;
  DiscElement alpha;
  DiscElement beta;
  DiscElement alpha_prime;  // alpha = v alpha'
  std::int64_t m = 0, m0 = 0, v = 1, n = 0, c = 1;
  double abs_S = 0;
  double rhs = 0;
  double ratio = 0;
};

/// 2^omega(c) tau((v, c)) (m0 n, c)^{1/2} c^{1/2}
double weil_bound_rhs(std::int64_t c, std::int64_t v, std::int64_t m0, std::int64_t n);

/// Needs odd rank, (v, det) = 1 and fd.m == spec.m.
BoundReport weil_bound_report(const KloostermanSpec& spec, const FundamentalDecomposition& fd,
                              int prec_bits = kDefaultPrecBits);

struct BoundRange {
  std::int64_t m_min = -24, m_max = 24;
  std::int64_t n_min = -24, n_max = 24;
  std::int64_t c_max = 8;
};

/// Every (alpha, beta, m, n, c) in range meeting the hypotheses, in lexicographic order.
std::vector<BoundReport> bound_sweep(const EvenLattice& L, const BoundRange& range, int prec_bits = kDefaultPrecBits,
                                     int threads = 1);

struct LatticeConstant {
  std::string lattice_id;
  int rank = 0;
  std::int64_t abs_det = 0;
  double max_ratio = 0;
  std::size_t points = 0;
};

struct ConstantEstimate {
  std::vector<LatticeConstant> per_lattice;  // in order of first appearance
  double A = 0;                              // least squares fit of log C(L) = A g log|det|
};

ConstantEstimate estimate_constant(const std::vector<BoundReport>& reports);

/// Recorded per-lattice maxima of abs_S / rhs over the standard corpus.
std::optional<double> recorded_constant(const EvenLattice& L);

struct BoundCorpusEntry {
  EvenLattice lattice;
  BoundRange range;
};
std::vector<BoundCorpusEntry> standard_bound_corpus();

/// R(y, c) <= 2^{omega(c)+1} (y, c)^{1/2}, doubled for even c.
bool sqrt_count_bound_holds(std::int64_t y, std::int64_t c);
/// First (y, c) with 0 <= y < c <= c_max violating the estimate.
std::optional<std::pair<std::int64_t, std::int64_t>> find_sqrt_count_violation(std::int64_t c_max);

}  // namespace weilsum
