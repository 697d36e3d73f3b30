#include "weilsum/bounds.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "weilsum/error.hpp"
#include "weilsum/parallel.hpp"

namespace weilsum {

double weil_bound_rhs(std::int64_t c, std::int64_t v, std::int64_t m0, std::int64_t n) {
  if (c < 1) throw DomainError("bound: c must be positive");
  const std::int64_t g = std::gcd(mod(m0 * n, c), c);
  return std::ldexp(1.0, omega(c)) * static_cast<double>(tau(std::gcd(v, c))) *
         std::sqrt(static_cast<double>(g == 0 ? c : g)) * std::sqrt(static_cast<double>(c));
}

namespace {

DiscElement solve_alpha_prime(const EvenLattice& L, const DiscElement& alpha, std::int64_t v) {
  const std::int64_t D = L.abs_det();
  const DiscElement a = alpha.scaled(D == 1 ? 0 : inv_mod(mod(v, D), D));
  if (!(a.scaled(v) == alpha)) throw InternalError("bound: no alpha' with v alpha' = alpha");
  return a;
}

BoundReport make_report(const EvenLattice& L, const DiscElement& alpha, const DiscElement& beta,
                        const FundamentalDecomposition& fd, std::int64_t n, std::int64_t c, const AlgValue& s) {
  BoundReport r;
  r.lattice_id = L.describe();
  r.rank = L.rank();
  r.abs_det = L.abs_det();
  r.alpha = alpha;
  r.beta = beta;
  r.alpha_prime = solve_alpha_prime(L, alpha, fd.v);
  r.m = fd.m;
  r.m0 = fd.m0;
  r.v = fd.v;
  r.n = n;
  r.c = c;
  r.abs_S = s.abs().to_double();
  r.rhs = weil_bound_rhs(c, fd.v, fd.m0, n);
  r.ratio = r.abs_S / r.rhs;
  return r;
}

void check_bound_hypotheses(const EvenLattice& L, const FundamentalDecomposition& fd) {
  if (L.rank() % 2 == 0) throw DomainError("the bound needs odd rank");
  if (std::gcd(fd.v, L.abs_det()) != 1)
    throw DomainError("the bound needs (v, det) = 1 (v=" + std::to_string(fd.v) + ")");
}

}  // namespace

BoundReport weil_bound_report(const KloostermanSpec& spec, const FundamentalDecomposition& fd, int prec_bits) {
  const EvenLattice& L = spec.lattice;
  if (fd.m != spec.m) throw DomainError("decomposition is for a different m");
  check_bound_hypotheses(L, fd);
  const AlgValue s = kloosterman_weil(spec, prec_bits);
  return make_report(L, spec.alpha, spec.beta, fd, spec.n, spec.c, s);
}

std::vector<BoundReport> bound_sweep(const EvenLattice& L, const BoundRange& range, int prec_bits, int threads) {
  if (L.rank() % 2 == 0) throw DomainError("the bound needs odd rank");
  if (range.c_max < 1 || range.m_min > range.m_max || range.n_min > range.n_max)
    throw DomainError("bound sweep: empty range");
  const KloostermanEngine engine(L, prec_bits);
  const DiscGroup& G = engine.group();
  struct Point {
    std::size_t ia, ib;
    FundamentalDecomposition fd;
    std::int64_t n, c;
  };
  std::vector<Point> points;
  for (std::size_t ia = 0; ia < G.size(); ++ia)
    for (std::size_t ib = 0; ib < G.size(); ++ib)
      for (std::int64_t m = range.m_min; m <= range.m_max; ++m) {
        if (m == 0 || !check_index(L, G[ia], m)) continue;
        const std::int64_t d = L.rank() % 4 == 3 ? -m : m;
        if (mod(d, 4) > 1) continue;
        const FundamentalDecomposition fd = fundamental_decomposition(m, L.rank());
        if (std::gcd(fd.v, L.abs_det()) != 1) continue;
        for (std::int64_t n = range.n_min; n <= range.n_max; ++n) {
          if (!check_index(L, G[ib], n)) continue;
          for (std::int64_t c = 1; c <= range.c_max; ++c) points.push_back({ia, ib, fd, n, c});
        }
      }
  std::vector<BoundReport> out(points.size());
  const Rational k = default_weight(L);
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const Point& p = points[i];
    const AlgValue s = engine.sum(p.ia, p.ib, p.fd.m, p.n, p.c, k);
    out[i] = make_report(L, G[p.ia], G[p.ib], p.fd, p.n, p.c, s);
  });
  return out;
}

ConstantEstimate estimate_constant(const std::vector<BoundReport>& reports) {
  if (reports.empty()) throw DomainError("estimate_constant: empty corpus");
  ConstantEstimate est;
  std::map<std::string, std::size_t> index;
  for (const BoundReport& r : reports) {
    auto [it, inserted] = index.emplace(r.lattice_id, est.per_lattice.size());
    if (inserted) est.per_lattice.push_back({r.lattice_id, r.rank, r.abs_det, 0.0, 0});
    LatticeConstant& lc = est.per_lattice[it->second];
    lc.max_ratio = std::max(lc.max_ratio, r.ratio);
    ++lc.points;
  }
  double sxy = 0, sxx = 0;
  for (const LatticeConstant& lc : est.per_lattice) {
    if (lc.max_ratio <= 0) continue;
    const double x = lc.rank * std::log(static_cast<double>(lc.abs_det));
    sxy += x * std::log(lc.max_ratio);
    sxx += x * x;
  }
  est.A = sxx > 0 ? sxy / sxx : 0.0;
  return est;
}

namespace {

// Maxima of abs_S / rhs over standard_bound_corpus() at 128 bits.
const std::map<std::string, double>& recorded_constants() {
  static const std::map<std::string, double> table = {
      {"[[2]]", 0.70710678118654757},
      {"[[-2]]", 0.70710678118654757},
      {"[[4]]", 0.5},
      {"[[-4]]", 0.5},
      {"[[6]]", 0.40824829046386302},
      {"[[12]]", 0.28867513459481287},
      {"[[24]]", 0.20412414523193151},
      {"[[2,0,0],[0,2,0],[0,0,2]]", 0.35355339059327379},
      {"[[2,0,0],[0,2,0],[0,0,4]]", 0.25},
      {"[[2,0,0],[0,4,0],[0,0,6]]", 0.14433756729740643},
      {"[[2,0,0],[0,2,0],[0,0,-2]]", 0.35355339059327379},
  };
  return table;
}

EvenLattice diagonal(std::initializer_list<std::int64_t> d) {
  IntMatrix M(d.size(), IntVector(d.size(), 0));
  std::size_t i = 0;
  for (std::int64_t x : d) {
    M[i][i] = x;
    ++i;
  }
  return EvenLattice(M);
}

}  // namespace

std::optional<double> recorded_constant(const EvenLattice& L) {
  const auto& t = recorded_constants();
  auto it = t.find(L.describe());
  if (it == t.end()) return std::nullopt;
  return it->second;
}

std::vector<BoundCorpusEntry> standard_bound_corpus() {
  const BoundRange rank1{-60, 60, -60, 60, 24};
  const BoundRange rank3{-24, 24, -24, 24, 8};
  std::vector<BoundCorpusEntry> out;
  for (std::int64_t d : {2, -2, 4, -4, 6, 12, 24}) out.push_back({diagonal({d}), rank1});
  out.push_back({diagonal({2, 2, 2}), rank3});
  out.push_back({diagonal({2, 2, 4}), rank3});
  out.push_back({diagonal({2, 4, 6}), rank3});
  out.push_back({diagonal({2, 2, -2}), rank3});
  return out;
}

bool sqrt_count_bound_holds(std::int64_t y, std::int64_t c) {
  if (c < 1) throw DomainError("c must be positive");
  const std::int64_t g = std::gcd(mod(y, c), c);
  const double rhs = std::ldexp(1.0, omega(c) + 1) * std::sqrt(static_cast<double>(g == 0 ? c : g)) *
                     (c % 2 == 0 ? 2.0 : 1.0);
  return static_cast<double>(count_sqrt(y, c)) <= rhs;
}

std::optional<std::pair<std::int64_t, std::int64_t>> find_sqrt_count_violation(std::int64_t c_max) {
  for (std::int64_t c = 1; c <= c_max; ++c)
    for (std::int64_t y = 0; y < c; ++y)
      if (!sqrt_count_bound_holds(y, c)) return std::make_pair(y, c);
  return std::nullopt;
}

}  // namespace weilsum
