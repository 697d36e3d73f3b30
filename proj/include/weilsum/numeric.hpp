#pragma once

// High-precision complex values backed by MPFR.
//
// Every identity check in the library compares two independently computed
// complex numbers; AlgValue carries an explicit working precision and
// approx_eq implements the comparison contract used throughout.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <mpfr.h>

#include "weilsum/rational.hpp"

namespace weilsum {

inline constexpr int kDefaultPrecBits = 192;
inline constexpr int kMinPrecBits = 64;

/// RAII owner of an mpfr_t.
class Real {
 public:
  explicit Real(int prec_bits = kDefaultPrecBits);
  Real(long value, int prec_bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real from_rational(const Rational& r, int prec_bits);
  static Real from_double(double x, int prec_bits);
  static Real from_string(const std::string& s, int prec_bits);

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  int prec() const { return static_cast<int>(mpfr_get_prec(value_)); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Scientific notation with the given number of significant digits.
  std::string to_string(int digits) const;
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real operator-() const;

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator>=(const Real& a, const Real& b) { return b <= a; }

 private:
  mpfr_t value_;
  bool owned_ = true;
};

Real sqrt(const Real& x);
Real abs(const Real& x);
Real log2(const Real& x);
Real pow2(long e, int prec_bits);
const Real& max(const Real& a, const Real& b);

/// Complex number with explicit precision; both parts share one precision.
class AlgValue {
 public:
  explicit AlgValue(int prec_bits = kDefaultPrecBits);
  AlgValue(Real re, Real im);
  static AlgValue from_rational(const Rational& re, int prec_bits);
  static AlgValue from_int(long re, long im, int prec_bits);
  static AlgValue zero(int prec_bits) { return AlgValue(prec_bits); }
  static AlgValue one(int prec_bits) { return from_int(1, 0, prec_bits); }
  static AlgValue imag_unit(int prec_bits) { return from_int(0, 1, prec_bits); }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  int prec_bits() const { return re_.prec(); }

  AlgValue conj() const;
  Real norm() const;  // re^2 + im^2
  Real abs() const;
  bool is_finite() const;

  AlgValue& operator+=(const AlgValue& o);
  AlgValue& operator-=(const AlgValue& o);
  AlgValue& operator*=(const AlgValue& o);
  AlgValue& operator*=(const Real& s);
  AlgValue& operator*=(long s);
  AlgValue& operator/=(const AlgValue& o);
  AlgValue operator-() const;

  /// this += a * b without allocating (uses the caller-provided scratch).
  void add_product(const AlgValue& a, const AlgValue& b, Real& scratch);
  /// this += a * conj(b)
  void add_product_conj(const AlgValue& a, const AlgValue& b, Real& scratch);
  /// this += k * a
  void add_scaled(const AlgValue& a, long k, Real& scratch);

  friend AlgValue operator+(AlgValue a, const AlgValue& b) { return a += b; }
  friend AlgValue operator-(AlgValue a, const AlgValue& b) { return a -= b; }
  friend AlgValue operator*(AlgValue a, const AlgValue& b) { return a *= b; }
  friend AlgValue operator*(AlgValue a, const Real& s) { return a *= s; }
  friend AlgValue operator*(const Real& s, AlgValue a) { return a *= s; }
  friend AlgValue operator*(AlgValue a, long s) { return a *= s; }
  friend AlgValue operator/(AlgValue a, const AlgValue& b) { return a /= b; }

  std::string to_string(int digits = 0) const;

 private:
  Real re_;
  Real im_;
};

/// Decimal digits printed for a value of the given precision.
int decimal_digits(int prec_bits);

struct Tolerance {
  double rel_eps;
  double abs_eps;

  /// rel = abs = 2^{-prec_bits/2}
  static Tolerance for_precision(int prec_bits);
};

/// |a - b| <= abs_eps + rel_eps * max(|a|, |b|)
bool approx_eq(const AlgValue& a, const AlgValue& b, const Tolerance& t);
Real distance(const AlgValue& a, const AlgValue& b);

/// e^{2 pi i x}; x is reduced exactly mod 1 before any rounding.
AlgValue e_frac(const Rational& x, int prec_bits = kDefaultPrecBits);
/// e^{pi i k / 2} for 2k integral.
AlgValue i_half_power(const Rational& k, int prec_bits = kDefaultPrecBits);
/// Positive square root of a positive rational.
Real sqrt_pos(const Rational& r, int prec_bits = kDefaultPrecBits);

/// Table of e(j / den) for j mod den.
class RootsOfUnity {
 public:
  RootsOfUnity(std::int64_t den, int prec_bits);
  std::int64_t denominator() const { return den_; }
  int prec_bits() const { return prec_; }
  /// e(k / den) for any integer k.
  const AlgValue& operator()(std::int64_t k) const {
    std::int64_t r = k % den_;
    if (r < 0) r += den_;
    return table_[static_cast<std::size_t>(r)];
  }

 private:
  std::int64_t den_;
  int prec_;
  std::vector<AlgValue> table_;
};

/// Process-wide cache of root tables; safe to call from several threads.
std::shared_ptr<const RootsOfUnity> roots_of_unity(std::int64_t den, int prec_bits);

}  // namespace weilsum
