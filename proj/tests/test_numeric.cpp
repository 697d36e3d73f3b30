#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "weilsum/error.hpp"
#include "weilsum/numeric.hpp"

using namespace weilsum;

namespace {

const Tolerance kTol = Tolerance::for_precision(kDefaultPrecBits);

AlgValue c(long re, long im) { return AlgValue::from_int(re, im, kDefaultPrecBits); }

}  // namespace

TEST_CASE("e_frac on the axes") {
  CHECK(approx_eq(e_frac(Rational(0)), c(1, 0), kTol));
  CHECK(approx_eq(e_frac(Rational(1, 2)), c(-1, 0), kTol));
  CHECK(approx_eq(e_frac(Rational(1, 4)), c(0, 1), kTol));
  CHECK(approx_eq(e_frac(Rational(-1, 4)), c(0, -1), kTol));
  CHECK(approx_eq(e_frac(Rational(7, 2)), c(-1, 0), kTol));
  // Exact, not merely close.
  CHECK(e_frac(Rational(3, 4)).re().is_zero());
}

TEST_CASE("e_frac against a 40-digit reference") {
  // cos(2 pi / 7), sin(2 pi / 7)
  AlgValue ref(Real::from_string("0.6234898018587335305250048840042398106323", kDefaultPrecBits),
               Real::from_string("0.7818314824680298087084445266740577502323", kDefaultPrecBits));
  CHECK(distance(e_frac(Rational(1, 7)), ref).to_double() < 1e-39);
  CHECK(distance(e_frac(Rational(-6, 7)), ref).to_double() < 1e-39);
  CHECK(distance(e_frac(Rational(1000001, 7)), e_frac(Rational(2, 7))).to_double() < 1e-50);
}

TEST_CASE("e_frac is a character of Q/Z") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> den(1, 10000);
  for (int t = 0; t < 1000; ++t) {
    const long d1 = den(rng), d2 = den(rng);
    const Rational x(std::uniform_int_distribution<long>(-3 * d1, 3 * d1)(rng), d1);
    const Rational y(std::uniform_int_distribution<long>(-3 * d2, 3 * d2)(rng), d2);
    REQUIRE(approx_eq(e_frac(x) * e_frac(y), e_frac(x + y), kTol));
    REQUIRE(abs(e_frac(x).abs() - Real(1, kDefaultPrecBits)).to_double() < kTol.abs_eps);
  }
}

TEST_CASE("i_half_power") {
  CHECK(approx_eq(i_half_power(Rational(0)), c(1, 0), kTol));
  CHECK(approx_eq(i_half_power(Rational(1)), c(0, 1), kTol));
  AlgValue r = i_half_power(Rational(1, 2));
  AlgValue expect = c(1, 1) * Real(sqrt_pos(Rational(1, 2)));
  CHECK(approx_eq(r, expect, kTol));
  for (int k2 = -12; k2 <= 12; ++k2) {
    Rational k(k2, 2);
    CHECK(approx_eq(i_half_power(-k), c(1, 0) / i_half_power(k), kTol));
    CHECK(approx_eq(i_half_power(-k), i_half_power(k).conj(), kTol));
  }
  CHECK_THROWS_AS(i_half_power(Rational(1, 3)), DomainError);
}

TEST_CASE("sqrt_pos") {
  CHECK(approx_eq(AlgValue(sqrt_pos(Rational(1)), Real(kDefaultPrecBits)), c(1, 0), kTol));
  CHECK(approx_eq(AlgValue(sqrt_pos(Rational(4)), Real(kDefaultPrecBits)), c(2, 0), kTol));
  Real s2 = sqrt_pos(Rational(2));
  Real ref = Real::from_string("1.414213562373095048801688724209698078569671875376948073", kDefaultPrecBits);
  CHECK(abs(s2 - ref).to_double() < 1e-54);
  Real s = sqrt_pos(Rational(9, 4));
  CHECK(abs(s - Real::from_rational(Rational(3, 2), kDefaultPrecBits)).is_zero());
  CHECK_THROWS_AS(sqrt_pos(Rational(0)), DomainError);
  CHECK_THROWS_AS(sqrt_pos(Rational(-1)), DomainError);
}

TEST_CASE("approx_eq contract") {
  Tolerance t{1e-10, 1e-12};
  CHECK(approx_eq(c(1, 0), c(1, 0), t));
  AlgValue a = c(1000, 0);
  AlgValue b = a + AlgValue(Real::from_double(5e-8, kDefaultPrecBits), Real(kDefaultPrecBits));
  CHECK(approx_eq(a, b, t));
  AlgValue d = a + AlgValue(Real::from_double(5e-7, kDefaultPrecBits), Real(kDefaultPrecBits));
  CHECK_FALSE(approx_eq(a, d, t));
  CHECK(approx_eq(c(0, 0), AlgValue(Real::from_double(1e-13, kDefaultPrecBits), Real(kDefaultPrecBits)), t));
  CHECK_FALSE(approx_eq(c(0, 0), AlgValue(Real::from_double(1e-11, kDefaultPrecBits), Real(kDefaultPrecBits)), t));
  CHECK(Tolerance::for_precision(192).rel_eps == std::ldexp(1.0, -96));
}

TEST_CASE("fused accumulation matches plain arithmetic") {
  Real scratch(kDefaultPrecBits);
  AlgValue acc(kDefaultPrecBits), ref(kDefaultPrecBits);
  for (int j = 1; j < 30; ++j) {
    AlgValue x = e_frac(Rational(j, 31)) * long(j);
    AlgValue y = e_frac(Rational(3 * j, 17));
    acc.add_product_conj(x, y, scratch);
    ref += x * y.conj();
    acc.add_product(x, y, scratch);
    ref += x * y;
    acc.add_scaled(y, -j, scratch);
    ref += y * long(-j);
  }
  CHECK(approx_eq(acc, ref, kTol));
}

TEST_CASE("root tables") {
  auto t = roots_of_unity(48, kDefaultPrecBits);
  CHECK(t->denominator() == 48);
  for (long k = -100; k <= 100; ++k) CHECK(approx_eq((*t)(k), e_frac(Rational(k, 48)), kTol));
  CHECK(roots_of_unity(48, kDefaultPrecBits).get() == t.get());
  CHECK(roots_of_unity(48, 256).get() != t.get());
}

TEST_CASE("precision scaling") {
  // A cancelling sum of roots of unity: sum over j of e(j/97) is 0.
  for (int prec : {128, 256}) {
    AlgValue s(prec);
    for (int j = 0; j < 97; ++j) s += e_frac(Rational(j, 97), prec);
    CHECK(s.abs() < Real::from_double(std::ldexp(1.0, -prec + 12), prec));
  }
  CHECK_THROWS_AS(e_frac(Rational(1, 3), 32), DomainError);
}

TEST_CASE("decimal output") {
  Real x = Real::from_rational(Rational(1, 3), kDefaultPrecBits);
  const std::string s = x.to_string(10);
  CHECK(s.rfind("3.333333333", 0) == 0);
  CHECK(decimal_digits(192) == 58);
}
