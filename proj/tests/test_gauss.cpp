#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "weilsum/error.hpp"
#include "weilsum/gauss.hpp"
#include "weilsum/numth.hpp"

using namespace weilsum;

namespace {

constexpr int kPrec = 160;

bool close(const AlgValue& a, const AlgValue& b, double eps = 1e-25) {
  return distance(a, b).to_double() <= eps * std::max(1.0, a.abs().to_double());
}

AlgValue val(double re, double im) {
  return AlgValue(Real::from_double(re, kPrec), Real::from_double(im, kPrec));
}

// sum over x of table(f(x)) with f supplied by the caller.
template <class F>
AlgValue naive(std::int64_t den, std::int64_t count, F f) {
  auto roots = roots_of_unity(den, kPrec);
  AlgValue s(kPrec);
  for (std::int64_t x = 0; x < count; ++x) s += (*roots)(f(x));
  return s;
}

}  // namespace

TEST_CASE("plain Gauss sums") {
  CHECK(close(gauss_plain(1, GaussMode::closed_form, kPrec), val(1, 0)));
  CHECK(close(gauss_plain(3, GaussMode::closed_form, kPrec), val(0, std::sqrt(3.0)), 1e-15));
  CHECK(close(gauss_plain(5, GaussMode::closed_form, kPrec), val(std::sqrt(5.0), 0), 1e-15));
  for (std::int64_t c = 1; c <= 200; ++c) {
    AlgValue ref = naive(c, c, [c](std::int64_t x) { return x * x % c; });
    REQUIRE(close(gauss_plain(c, GaussMode::closed_form, kPrec), ref));
    REQUIRE(close(gauss_plain(c, GaussMode::brute_force, kPrec), ref));
    if (c % 2 == 1) {
      AlgValue g = gauss_plain(c, GaussMode::closed_form, kPrec);
      REQUIRE(close(g * g.conj(), AlgValue::from_int(c, 0, kPrec)));
    }
  }
}

TEST_CASE("scaled Gauss sums") {
  CHECK(close(gauss_scaled(1, 3, GaussMode::closed_form, kPrec), val(0, std::sqrt(3.0)), 1e-15));
  CHECK(close(gauss_scaled(2, 3, GaussMode::closed_form, kPrec), val(0, -std::sqrt(3.0)), 1e-15));
  CHECK(close(gauss_scaled(4, 5, GaussMode::closed_form, kPrec), val(std::sqrt(5.0), 0), 1e-15));
  CHECK_THROWS_AS(gauss_scaled(3, 9, GaussMode::closed_form, kPrec), DomainError);
  CHECK_THROWS_AS(gauss_scaled(1, 4, GaussMode::closed_form, kPrec), DomainError);
  for (std::int64_t c = 1; c <= 200; c += 2)
    for (std::int64_t a = -12; a <= 12; ++a) {
      if (std::gcd(a, c) != 1) continue;
      AlgValue ref = naive(c, c, [a, c](std::int64_t x) { return a * x * x % c; });
      REQUIRE(close(gauss_scaled(a, c, GaussMode::closed_form, kPrec), ref));
      REQUIRE(close(gauss_scaled(a, c, GaussMode::brute_force, kPrec), ref));
    }
}

TEST_CASE("binary Gauss sums at powers of two") {
  CHECK(close(gauss_pow2(1, 1, 1, GaussMode::closed_form, kPrec), val(2, 0)));
  CHECK(close(gauss_pow2(1, 1, 2, GaussMode::closed_form, kPrec), val(0, 0)));
  CHECK(close(gauss_pow2(1, 0, 2, GaussMode::closed_form, kPrec), val(2, 2)));
  CHECK_THROWS_AS(gauss_pow2(2, 1, 3, GaussMode::closed_form, kPrec), DomainError);
  for (int lambda = 1; lambda <= 10; ++lambda) {
    const std::int64_t q = std::int64_t{1} << lambda;
    for (std::int64_t a = -31; a <= 31; a += 2)
      for (std::int64_t b = -32; b <= 32; ++b) {
        AlgValue ref = naive(q, q, [=](std::int64_t x) { return a * x * x + b * x; });
        CAPTURE(lambda);
        CAPTURE(a);
        CAPTURE(b);
        REQUIRE(close(gauss_pow2(a, b, lambda, GaussMode::closed_form, kPrec), ref));
      }
  }
}

TEST_CASE("quadratic form Gauss sums") {
  CHECK(close(gauss_quadratic_form(EvenLattice(IntMatrix{{2}}), 3, GaussMode::closed_form, kPrec),
              val(0, std::sqrt(3.0)), 1e-15));
  CHECK(close(gauss_quadratic_form(EvenLattice(IntMatrix{{12}}), 1, GaussMode::closed_form, kPrec), val(1, 0)));
  const EvenLattice two_i3(IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  CHECK(close(gauss_quadratic_form(two_i3, 5, GaussMode::closed_form, kPrec), val(5 * std::sqrt(5.0), 0), 1e-14));
  CHECK_THROWS_AS(gauss_quadratic_form(two_i3, 4, GaussMode::closed_form, kPrec), DomainError);
  CHECK_THROWS_AS(gauss_quadratic_form(EvenLattice(IntMatrix{{6}}), 3, GaussMode::closed_form, kPrec), DomainError);

  const std::vector<IntMatrix> corpus = {
      {{2}}, {{-2}}, {{4}}, {{-4}}, {{6}}, {{12}}, {{24}}, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}},
      {{2, 0, 0}, {0, 2, 0}, {0, 0, 4}}, {{2, 0, 0}, {0, 4, 0}, {0, 0, 6}}, {{2, 0, 0}, {0, 2, 0}, {0, 0, -2}},
      {{2, 1, 0}, {1, 2, 1}, {0, 1, 4}}, {{2, 1}, {1, 4}}};
  for (const auto& m : corpus) {
    const EvenLattice L(m);
    for (std::int64_t c = 1; c <= 50; ++c) {
      AlgValue brute = gauss_quadratic_form(L, c, GaussMode::brute_force, kPrec);
      // Direct sum of e(q(x)/c) through e_frac for small moduli.
      if (c <= 7) {
        AlgValue s(kPrec);
        const int g = L.rank();
        IntVector x(static_cast<std::size_t>(g), 0);
        while (true) {
          s += e_frac(Rational(L.quadratic(x), c), kPrec);
          int i = 0;
          while (i < g && ++x[i] == c) x[i++] = 0;
          if (i == g) break;
        }
        REQUIRE(close(brute, s));
      }
      if (c % 2 == 1 && std::gcd(L.abs_det(), c) == 1) {
        CAPTURE(L.describe());
        CAPTURE(c);
        REQUIRE(close(gauss_quadratic_form(L, c, GaussMode::closed_form, kPrec), brute));
      }
    }
  }
}

TEST_CASE("twisted sums at odd primes") {
  CHECK(close(twisted_sum_odd(1, 3, 1, GaussMode::closed_form, kPrec), val(0, std::sqrt(3.0)), 1e-15));
  CHECK(close(twisted_sum_odd(0, 3, 1, GaussMode::closed_form, kPrec), val(0, 0)));
  CHECK(close(twisted_sum_odd(3, 3, 2, GaussMode::closed_form, kPrec), val(0, std::pow(3.0, 1.5)), 1e-14));
  CHECK_THROWS_AS(twisted_sum_odd(1, 9, 1, GaussMode::closed_form, kPrec), DomainError);
  for (std::int64_t p : {3, 5, 7, 11, 13})
    for (int lambda = 1; lambda <= 4; ++lambda) {
      const std::int64_t q = ipow(p, lambda);
      for (std::int64_t n = -100; n <= 100; ++n) {
        auto roots = roots_of_unity(q, kPrec);
        AlgValue ref(kPrec);
        for (std::int64_t d = 1; d < q; ++d) {
          const int chi = kronecker(d, p);
          if (chi == 1) ref += (*roots)(n * d);
          if (chi == -1) ref -= (*roots)(n * d);
        }
        REQUIRE(close(twisted_sum_odd(n, p, lambda, GaussMode::closed_form, kPrec), ref));
      }
    }
}

TEST_CASE("twisted sums at powers of two") {
  CHECK(close(twisted_sum_pow2(1, 2, GaussMode::closed_form, kPrec), val(0, 2)));
  CHECK(close(twisted_sum_pow2(2, 2, GaussMode::closed_form, kPrec), val(0, 0)));
  CHECK(close(twisted_sum_pow2(0, 3, GaussMode::closed_form, kPrec), val(0, 0)));
  CHECK_THROWS_AS(twisted_sum_pow2(1, 1, GaussMode::closed_form, kPrec), DomainError);
  for (int lambda = 2; lambda <= 10; ++lambda) {
    const std::int64_t q = std::int64_t{1} << lambda;
    auto roots = roots_of_unity(q, kPrec);
    for (std::int64_t n = -100; n <= 100; ++n) {
      AlgValue ref(kPrec);
      for (std::int64_t d = 1; d < q; d += 2) {
        if (d % 4 == 1)
          ref += (*roots)(n * d);
        else
          ref -= (*roots)(n * d);
      }
      REQUIRE(close(twisted_sum_pow2(n, lambda, GaussMode::closed_form, kPrec), ref));
      REQUIRE(close(twisted_sum_pow2(n, lambda, GaussMode::brute_force, kPrec), ref));
    }
  }
}

TEST_CASE("query dispatch") {
  GaussSumQuery q;
  q.kind = GaussKind::shifted_binary_pow2;
  q.a = 1;
  q.b = 0;
  q.lambda = 2;
  CHECK(q.kind_name() == "shifted_binary_pow2");
  CHECK(q.params() == "a=1;b=0;lambda=2");
  CHECK(close(evaluate(q, GaussMode::closed_form, kPrec), evaluate(q, GaussMode::brute_force, kPrec)));
  CHECK(parse_gauss_kind("twisted_odd") == GaussKind::twisted_odd);
  CHECK_THROWS_AS(parse_gauss_kind("cubic"), DomainError);
}
