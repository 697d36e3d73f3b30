#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "weilsum/error.hpp"
#include "weilsum/kloosterman.hpp"
#include "weilsum/numth.hpp"

using namespace weilsum;

namespace {

constexpr int kPrec = 160;

AlgValue val(double re, double im) {
  return AlgValue(Real::from_double(re, kPrec), Real::from_double(im, kPrec));
}

bool close(const AlgValue& a, const AlgValue& b, double eps) { return distance(a, b).to_double() <= eps; }

DiscElement elem(const EvenLattice& L, std::vector<Rational> x) { return DiscElement::from_coords(L, x); }

// Sum with rho taken from generator products and every phase through e_frac.
AlgValue weil_oracle(const DiscGroup& G, std::size_t ia, std::size_t ib, std::int64_t m, std::int64_t n,
                     std::int64_t c, const Rational& k) {
  const EvenLattice& L = G.lattice();
  AlgValue s(kPrec);
  for (std::int64_t d = 0; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    std::int64_t a = 1, b = -1;
    if (c > 1) {
      a = 1;
      while ((a * d) % c != 1) ++a;
      b = (a * d - 1) / c;
    }
    const auto rho = rho_generators(G, MetaplecticElement(a, b, c, d), WordStrategy::floor, kPrec);
    s += rho(ia, ib).conj() * e_frac(Rational(m * a + n * d, 2 * L.det() * c), kPrec);
  }
  return s * i_half_power(-k, kPrec);
}

}  // namespace

TEST_CASE("ordinary Kloosterman sums") {
  CHECK(close(kloosterman_ordinary(1, 1, 1, kPrec), val(1, 0), 1e-40));
  CHECK(close(kloosterman_ordinary(1, 1, 2, kPrec), val(1, 0), 1e-40));
  for (std::int64_t c = 1; c <= 60; ++c)
    for (std::int64_t m = -5; m <= 5; ++m)
      for (std::int64_t n = -5; n <= 5; ++n) {
        AlgValue s(kPrec);
        for (std::int64_t d = 0; d < c; ++d) {
          if (std::gcd(d, c) != 1) continue;
          std::int64_t a = 0;
          while (c > 1 && (a * d) % c != 1) ++a;
          s += e_frac(Rational(m * a + n * d, c), kPrec);
        }
        REQUIRE(close(kloosterman_ordinary(m, n, c, kPrec), s, 1e-35));
      }
}

TEST_CASE("Weil bound for ordinary sums at primes") {
  for (std::int64_t p = 2; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    const AlgValue s = kloosterman_ordinary(1, 1, p, kPrec);
    CHECK(std::abs(s.im().to_double()) < 1e-40);
    CHECK(s.abs() <= Real::from_double(2.0, kPrec) * sqrt_pos(Rational(p), kPrec));
  }
}

TEST_CASE("lattice sums: examples") {
  const EvenLattice L(IntMatrix{{2}});
  const auto z = DiscElement::zero(L), h = elem(L, {Rational(1, 2)});
  const auto one = KloostermanSpec::make(L, z, z, 0, 0, 1, Rational(1, 2));
  CHECK(close(kloosterman_weil(one, kPrec), AlgValue(sqrt_pos(Rational(1, 2), kPrec), Real(kPrec)), 1e-40));
  CHECK(close(kloosterman_weil(KloostermanSpec::make(L, h, h, 1, 1, 5), kPrec), val(2.558336368008462980, 0), 1e-14));
  CHECK(close(kloosterman_weil(KloostermanSpec::make(L, h, z, 1, 0, 7), kPrec), val(1.870828693386970, 0), 1e-14));

  const EvenLattice L12(IntMatrix{{12}});
  CHECK(close(kloosterman_weil(KloostermanSpec::make(L12, elem(L12, {Rational(1, 12)}), elem(L12, {Rational(1, 12)}), 1, 1, 5),
                               kPrec),
              val(0.904508497187474, -0.522218224335492), 1e-14));
  CHECK(close(kloosterman_weil(
                  KloostermanSpec::make(L12, elem(L12, {Rational(5, 12)}), elem(L12, {Rational(1, 12)}), 25, -23, 8),
                  kPrec),
              val(-0.361127203346817027, -0.732293526988716303), 1e-14));

  const EvenLattice Lm(IntMatrix{{-2}});
  const auto hm = elem(Lm, {Rational(1, 2)});
  CHECK(close(kloosterman_weil(KloostermanSpec::make(Lm, hm, DiscElement::zero(Lm), 1, 0, 1), kPrec),
              val(0.707106781186547462, 0), 1e-14));
  CHECK(close(kloosterman_weil(KloostermanSpec::make(Lm, hm, DiscElement::zero(Lm), 1, 0, 5), kPrec),
              val(1.581138830084189539, 0), 1e-14));
  CHECK_THROWS_AS(KloostermanSpec::make(Lm, hm, DiscElement::zero(Lm), -1, 0, 1), DomainError);

  const EvenLattice Li(IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, -2}});
  const auto a1 = elem(Li, {Rational(1, 2), Rational(0), Rational(1, 2)});
  const auto a2 = elem(Li, {Rational(1, 2), Rational(0), Rational(0)});
  const auto be = elem(Li, {Rational(0), Rational(1, 2), Rational(0)});
  CHECK(close(kloosterman_weil(KloostermanSpec::make(Li, a2, be, -4, -4, 3), kPrec), val(-0.612372435695794026, 0), 1e-14));
  CHECK(close(kloosterman_weil(KloostermanSpec::make(Li, a1, be, 0, 12, 5), kPrec), val(-0.790569415042094326, 0), 1e-14));
  CHECK(close(kloosterman_weil(KloostermanSpec::make(Li, a2, be, -4, -4, 5), kPrec), val(-1.279168184004231268, 0), 1e-14));
  CHECK(close(kloosterman_weil(KloostermanSpec::make(Li, a1, be, 0, 12, 6), kPrec), val(0, 0), 1e-14));
}

TEST_CASE("KloostermanSpec validation") {
  const EvenLattice L(IntMatrix{{2}});
  const auto z = DiscElement::zero(L), h = elem(L, {Rational(1, 2)});
  CHECK_THROWS_AS(KloostermanSpec::make(L, z, z, 1, 0, 3), DomainError);
  CHECK_THROWS_AS(KloostermanSpec::make(L, h, z, 1, 1, 3), DomainError);
  CHECK_THROWS_AS(KloostermanSpec::make(L, z, z, 0, 0, 0), DomainError);
  CHECK_THROWS_AS(KloostermanSpec::make(L, z, z, 0, 0, 3, Rational(1)), DomainError);
  const auto s = KloostermanSpec::make(L, h, h, 1, 1, 3);
  CHECK(s.k == Rational(1, 2));
  CHECK(s.sigma == 0);
  CHECK(KloostermanSpec::make(L, h, h, 1, 1, 3, Rational(5, 2)).sigma == 2);
  const EvenLattice other(IntMatrix{{4}});
  CHECK_THROWS_AS(KloostermanSpec::make(other, h, h, 1, 1, 3), DomainError);
}

TEST_CASE("lattice sums agree with the generator-product oracle") {
  const std::vector<IntMatrix> corpus = {{{2}}, {{-2}}, {{4}}, {{6}}, {{2, 1}, {1, 2}},
                                         {{2, 0, 0}, {0, 2, 0}, {0, 0, -2}}, {{2, 1, 0}, {1, 2, 1}, {0, 1, 2}}};
  std::mt19937_64 rng(29);
  for (const auto& gm : corpus) {
    const EvenLattice L(gm);
    const KloostermanEngine engine(L, kPrec);
    const DiscGroup& G = engine.group();
    const std::int64_t two_det = 2 * L.det();
    std::uniform_int_distribution<std::size_t> pick(0, G.size() - 1);
    std::uniform_int_distribution<std::int64_t> shift(-2, 2), cd(1, 6);
    for (int t = 0; t < 12; ++t) {
      const std::size_t ia = pick(rng), ib = pick(rng);
      // m = 2 det (q(alpha) + j)
      const std::int64_t m = (q(L, G[ia]) * Rational(two_det)).numerator() + two_det * shift(rng);
      const std::int64_t n = (q(L, G[ib]) * Rational(two_det)).numerator() + two_det * shift(rng);
      const std::int64_t c = cd(rng);
      const Rational k = default_weight(L) + Rational(2 * shift(rng));
      CAPTURE(L.describe());
      CAPTURE(c);
      REQUIRE(close(engine.sum(ia, ib, m, n, c, k), weil_oracle(G, ia, ib, m, n, c, k), 1e-35));
    }
  }
}

TEST_CASE("independence of the matrix completion") {
  for (const auto& gm : std::vector<IntMatrix>{{{2}}, {{12}}, {{-4}}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}}) {
    const EvenLattice L(gm);
    const KloostermanEngine base(L, kPrec);
    const DiscGroup& G = base.group();
    const std::int64_t two_det = 2 * L.det();
    for (std::int64_t t : {1, 2, 3}) {
      const KloostermanEngine shifted(L, kPrec, t);
      for (std::int64_t c = 1; c <= 7; ++c)
        for (std::size_t ia = 0; ia < G.size(); ++ia)
          for (std::size_t ib = 0; ib < G.size(); ib += 3) {
            const std::int64_t m = (q(L, G[ia]) * Rational(two_det)).numerator();
            const std::int64_t n = (q(L, G[ib]) * Rational(two_det)).numerator() + two_det;
            const Rational k = default_weight(L);
            REQUIRE(close(base.sum(ia, ib, m, n, c, k), shifted.sum(ia, ib, m, n, c, k), 1e-35));
          }
    }
  }
}

TEST_CASE("trivial bound") {
  for (const auto& gm : std::vector<IntMatrix>{{{2}}, {{-2}}, {{4}}, {{6}}, {{12}}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 4}}}) {
    const EvenLattice L(gm);
    const KloostermanEngine engine(L, kPrec);
    const DiscGroup& G = engine.group();
    const std::int64_t two_det = 2 * L.det();
    for (std::int64_t c = 1; c <= 12; ++c)
      for (std::size_t ia = 0; ia < G.size(); ++ia)
        for (std::size_t ib = 0; ib < G.size(); ++ib) {
          const std::int64_t m = (q(L, G[ia]) * Rational(two_det)).numerator();
          const std::int64_t n = (q(L, G[ib]) * Rational(two_det)).numerator();
          const AlgValue s = engine.sum(ia, ib, m, n, c, default_weight(L));
          // unitarity gives |rho| <= 1, hence |S| <= phi(c) <= c
          REQUIRE(s.abs().to_double() <= static_cast<double>(c) + 1e-30);
        }
  }
}

TEST_CASE("Dedekind sums") {
  CHECK(dedekind_sum(1, 5) == Rational(1, 5));
  CHECK(dedekind_sum(3, 7) == Rational(-1, 14));
  CHECK(dedekind_sum(5, 12) == Rational(-1, 72));
  CHECK(dedekind_sum(0, 1) == Rational(0));
  CHECK_THROWS_AS(dedekind_sum(2, 4), DomainError);
  for (std::int64_t c = 1; c <= 60; ++c)
    for (std::int64_t d = 1; d <= 60; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const Rational rhs =
          Rational(-1, 4) + (Rational(d, c) + Rational(c, d) + Rational(1, c * d)) / Rational(12);
      REQUIRE(dedekind_sum(d, c) + dedekind_sum(c, d) == rhs);
      REQUIRE(dedekind_sum(d + c, c) == dedekind_sum(d, c));
      REQUIRE(dedekind_sum(-d, c) == -dedekind_sum(d, c));
    }
}

TEST_CASE("multiplier-system sums") {
  CHECK(close(kloosterman_multiplier(MultiplierKind::theta, Rational(1), Rational(1), 4, kPrec), val(-1, -1), 1e-14));
  CHECK(close(kloosterman_multiplier(MultiplierKind::theta, Rational(5), Rational(8), 12, kPrec),
              val(1.732050807568878, 1.732050807568877), 1e-14));
  CHECK(close(kloosterman_plus(1, 1, 1, kPrec), val(-4, 0), 1e-14));
  CHECK(close(kloosterman_plus(5, 1, 2, kPrec), val(0, 0), 1e-14));
  CHECK(close(kloosterman_multiplier(MultiplierKind::eta, Rational(1, 24), Rational(1, 24), 1, kPrec),
              val(0.707106781186548, 0.707106781186547), 1e-14));
  CHECK(close(kloosterman_multiplier(MultiplierKind::eta, Rational(1, 24), Rational(25, 24), 2, kPrec),
              val(-0.707106781186548, -0.707106781186547), 1e-14));
  CHECK(close(kloosterman_multiplier(MultiplierKind::eta, Rational(49, 24), Rational(25, 24), 7, kPrec),
              val(-1.870828693386971, -1.870828693386971), 1e-14));
  CHECK_THROWS_AS(kloosterman_multiplier(MultiplierKind::theta, Rational(1), Rational(1), 6, kPrec), DomainError);
  CHECK_THROWS_AS(kloosterman_multiplier(MultiplierKind::theta, Rational(1, 4), Rational(1), 4, kPrec), DomainError);
  CHECK_THROWS_AS(kloosterman_multiplier(MultiplierKind::eta, Rational(1), Rational(1, 24), 3, kPrec), DomainError);
  CHECK_THROWS_AS(kloosterman_plus(2, 1, 1, kPrec), DomainError);
}

TEST_CASE("multiplier values have modulus one") {
  for (std::int64_t c = 1; c <= 40; ++c)
    for (std::int64_t d : unit_residues(c)) {
      const auto g = completion(c, d);
      REQUIRE(std::abs(nu_eta(g, kPrec).abs().to_double() - 1) < 1e-30);
      if (c % 4 == 0) REQUIRE(std::abs(nu_theta(g, kPrec).abs().to_double() - 1) < 1e-30);
    }
}

TEST_CASE("eta multiplier relation") {
  for (std::int64_t c = 1; c <= 24; ++c)
    for (std::int64_t m : {1, 25, 49})
      for (std::int64_t n : {1, 25, 49})
        for (std::int64_t h : {1, 5, 7, 11}) {
          CAPTURE(c);
          CAPTURE(m);
          CAPTURE(n);
          CAPTURE(h);
          const auto r = eta_multiplier_relation_check(c, m, n, h, kPrec);
          REQUIRE(r.residual.to_double() < 1e-30);
        }
  CHECK_THROWS_AS(eta_multiplier_relation_check(1, 2, 1), DomainError);
  CHECK_THROWS_AS(eta_multiplier_relation_check(1, 1, 1, 3), DomainError);
}
