#include "weilsum/numeric.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <utility>

#include "weilsum/error.hpp"

namespace weilsum {

namespace {

constexpr int kGuardBits = 32;

void check_prec(int prec_bits) {
  if (prec_bits < kMinPrecBits) {
    throw DomainError("precision must be at least " + std::to_string(kMinPrecBits) + " bits");
  }
}

}  // namespace

// ---------------------------------------------------------------- Real

Real::Real(int prec_bits) {
  mpfr_init2(value_, prec_bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, int prec_bits) {
  mpfr_init2(value_, prec_bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  std::memcpy(value_, other.value_, sizeof(mpfr_t));
  other.owned_ = false;
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (!owned_) {
      mpfr_init2(value_, mpfr_get_prec(other.value_));
      owned_ = true;
    } else if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    }
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) {
    if (owned_) mpfr_clear(value_);
    std::memcpy(value_, other.value_, sizeof(mpfr_t));
    owned_ = other.owned_;
    other.owned_ = false;
  }
  return *this;
}

Real::~Real() {
  if (owned_) mpfr_clear(value_);
}

Real Real::from_rational(const Rational& r, int prec_bits) {
  Real num(prec_bits);
  mpfr_set_si(num.get(), static_cast<long>(r.numerator()), MPFR_RNDN);
  if (r.denominator() != 1) {
    mpfr_div_si(num.get(), num.get(), static_cast<long>(r.denominator()), MPFR_RNDN);
  }
  return num;
}

Real Real::from_double(double x, int prec_bits) {
  Real out(prec_bits);
  mpfr_set_d(out.get(), x, MPFR_RNDN);
  return out;
}

Real Real::from_string(const std::string& s, int prec_bits) {
  Real out(prec_bits);
  if (mpfr_set_str(out.get(), s.c_str(), 10, MPFR_RNDN) != 0) {
    throw DomainError("not a decimal number: '" + s + "'");
  }
  return out;
}

std::string Real::to_string(int digits) const {
  if (digits < 2) digits = 2;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

Real sqrt(const Real& x) {
  Real out(x.prec());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real abs(const Real& x) {
  Real out(x.prec());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real log2(const Real& x) {
  Real out(x.prec());
  mpfr_log2(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real pow2(long e, int prec_bits) {
  Real out(1, prec_bits);
  mpfr_mul_2si(out.get(), out.get(), e, MPFR_RNDN);
  return out;
}

const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }

// ---------------------------------------------------------------- AlgValue

AlgValue::AlgValue(int prec_bits) : re_(prec_bits), im_(prec_bits) {}

AlgValue::AlgValue(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.prec() != im_.prec()) {
    int p = std::max(re_.prec(), im_.prec());
    mpfr_prec_round(re_.get(), p, MPFR_RNDN);
    mpfr_prec_round(im_.get(), p, MPFR_RNDN);
  }
}

AlgValue AlgValue::from_rational(const Rational& re, int prec_bits) {
  return AlgValue(Real::from_rational(re, prec_bits), Real(prec_bits));
}

AlgValue AlgValue::from_int(long re, long im, int prec_bits) {
  return AlgValue(Real(re, prec_bits), Real(im, prec_bits));
}

AlgValue AlgValue::conj() const {
  AlgValue out(*this);
  mpfr_neg(out.im_.get(), out.im_.get(), MPFR_RNDN);
  return out;
}

Real AlgValue::norm() const {
  Real out(prec_bits());
  mpfr_fmma(out.get(), re_.get(), re_.get(), im_.get(), im_.get(), MPFR_RNDN);
  return out;
}

Real AlgValue::abs() const {
  Real out(prec_bits());
  mpfr_hypot(out.get(), re_.get(), im_.get(), MPFR_RNDN);
  return out;
}

bool AlgValue::is_finite() const {
  return mpfr_number_p(re_.get()) != 0 && mpfr_number_p(im_.get()) != 0;
}

AlgValue& AlgValue::operator+=(const AlgValue& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

AlgValue& AlgValue::operator-=(const AlgValue& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

AlgValue& AlgValue::operator*=(const AlgValue& o) {
  Real re(prec_bits());
  mpfr_fmms(re.get(), re_.get(), o.re_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
  mpfr_fmma(im_.get(), re_.get(), o.im_.get(), im_.get(), o.re_.get(), MPFR_RNDN);
  re_ = std::move(re);
  return *this;
}

AlgValue& AlgValue::operator*=(const Real& s) {
  re_ *= s;
  im_ *= s;
  return *this;
}

AlgValue& AlgValue::operator*=(long s) {
  mpfr_mul_si(re_.get(), re_.get(), s, MPFR_RNDN);
  mpfr_mul_si(im_.get(), im_.get(), s, MPFR_RNDN);
  return *this;
}

AlgValue& AlgValue::operator/=(const AlgValue& o) {
  Real n = o.norm();
  AlgValue num = *this * o.conj();
  mpfr_div(re_.get(), num.re_.get(), n.get(), MPFR_RNDN);
  mpfr_div(im_.get(), num.im_.get(), n.get(), MPFR_RNDN);
  return *this;
}

AlgValue AlgValue::operator-() const {
  AlgValue out(*this);
  mpfr_neg(out.re_.get(), out.re_.get(), MPFR_RNDN);
  mpfr_neg(out.im_.get(), out.im_.get(), MPFR_RNDN);
  return out;
}

void AlgValue::add_product(const AlgValue& a, const AlgValue& b, Real& scratch) {
  mpfr_fmms(scratch.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_add(re_.get(), re_.get(), scratch.get(), MPFR_RNDN);
  mpfr_fmma(scratch.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_add(im_.get(), im_.get(), scratch.get(), MPFR_RNDN);
}

void AlgValue::add_product_conj(const AlgValue& a, const AlgValue& b, Real& scratch) {
  // (ar + i ai)(br - i bi) = ar br + ai bi + i (ai br - ar bi)
  mpfr_fmma(scratch.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_add(re_.get(), re_.get(), scratch.get(), MPFR_RNDN);
  mpfr_fmms(scratch.get(), a.im_.get(), b.re_.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_add(im_.get(), im_.get(), scratch.get(), MPFR_RNDN);
}

void AlgValue::add_scaled(const AlgValue& a, long k, Real& scratch) {
  mpfr_mul_si(scratch.get(), a.re_.get(), k, MPFR_RNDN);
  mpfr_add(re_.get(), re_.get(), scratch.get(), MPFR_RNDN);
  mpfr_mul_si(scratch.get(), a.im_.get(), k, MPFR_RNDN);
  mpfr_add(im_.get(), im_.get(), scratch.get(), MPFR_RNDN);
}

std::string AlgValue::to_string(int digits) const {
  if (digits <= 0) digits = decimal_digits(prec_bits());
  return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
}

int decimal_digits(int prec_bits) {
  return static_cast<int>(std::floor(prec_bits * 0.30102999566398120)) + 1;
}

Tolerance Tolerance::for_precision(int prec_bits) {
  double eps = std::ldexp(1.0, -prec_bits / 2);
  return Tolerance{eps, eps};
}

Real distance(const AlgValue& a, const AlgValue& b) { return (a - b).abs(); }

bool approx_eq(const AlgValue& a, const AlgValue& b, const Tolerance& t) {
  int prec = std::max(a.prec_bits(), b.prec_bits());
  Real bound = Real::from_double(t.rel_eps, prec) * max(a.abs(), b.abs());
  bound += Real::from_double(t.abs_eps, prec);
  return distance(a, b) <= bound;
}

// ---------------------------------------------------------------- roots of unity

namespace {

// e(num / den) with 0 <= num < den, den > 0.
AlgValue unit_root(std::int64_t num, std::int64_t den, int prec_bits) {
  if (num == 0) return AlgValue::one(prec_bits);
  // Exact values on the coordinate axes.
  if (4 * num % den == 0) {
    switch (4 * num / den) {
      case 1: return AlgValue::from_int(0, 1, prec_bits);
      case 2: return AlgValue::from_int(-1, 0, prec_bits);
      case 3: return AlgValue::from_int(0, -1, prec_bits);
      default: break;
    }
  }
  const int work = prec_bits + kGuardBits;
  Real angle(work);
  mpfr_const_pi(angle.get(), MPFR_RNDN);
  mpfr_mul_si(angle.get(), angle.get(), 2 * num, MPFR_RNDN);
  mpfr_div_si(angle.get(), angle.get(), static_cast<long>(den), MPFR_RNDN);
  Real s(work), c(work);
  mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
  mpfr_prec_round(s.get(), prec_bits, MPFR_RNDN);
  mpfr_prec_round(c.get(), prec_bits, MPFR_RNDN);
  return AlgValue(std::move(c), std::move(s));
}

}  // namespace

AlgValue e_frac(const Rational& x, int prec_bits) {
  check_prec(prec_bits);
  Rational r = frac_part(x);
  return unit_root(r.numerator(), r.denominator(), prec_bits);
}

AlgValue i_half_power(const Rational& k, int prec_bits) {
  if (!is_integer(k * 2)) throw DomainError("i_half_power: 2k must be an integer, got k=" + to_string(k));
  // i^k = e^{pi i k / 2} = e(k / 4)
  return e_frac(k / 4, prec_bits);
}

Real sqrt_pos(const Rational& r, int prec_bits) {
  check_prec(prec_bits);
  if (r <= 0) throw DomainError("sqrt_pos: argument must be positive, got " + to_string(r));
  Real x = Real::from_rational(r, prec_bits + kGuardBits);
  mpfr_sqrt(x.get(), x.get(), MPFR_RNDN);
  mpfr_prec_round(x.get(), prec_bits, MPFR_RNDN);
  return x;
}

RootsOfUnity::RootsOfUnity(std::int64_t den, int prec_bits) : den_(den), prec_(prec_bits) {
  check_prec(prec_bits);
  if (den <= 0) throw DomainError("RootsOfUnity: denominator must be positive");
  table_.reserve(static_cast<std::size_t>(den));
  for (std::int64_t k = 0; k < den; ++k) table_.push_back(unit_root(k, den, prec_bits));
}

std::shared_ptr<const RootsOfUnity> roots_of_unity(std::int64_t den, int prec_bits) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, std::shared_ptr<const RootsOfUnity>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({den, prec_bits});
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const RootsOfUnity>(den, prec_bits);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(den, prec_bits), table);
  return it->second;
}

}  // namespace weilsum
