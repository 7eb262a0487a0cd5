#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <string>
#include <utility>

namespace heights {

// Arbitrary-precision real number backed by MPFR, rounding to nearest in
// every operation. Each value carries its own mantissa precision in bits;
// binary operations compute at the larger of the two operand precisions,
// so precision never degrades silently along a computation.
//
// Note mpfr_prec_t is long, so a value-from-integer constructor taking the
// precision first would be ambiguous; construction at an explicit precision
// goes through zero(prec) / convert(x, prec) instead.
class Real {
 public:
  static constexpr mpfr_prec_t kDefaultPrec = 128;

  Real() { mpfr_init2(v_, kDefaultPrec); mpfr_set_zero(v_, 1); }
  Real(double x, mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(v_, clamp(prec)); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(long x, mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(v_, clamp(prec)); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x, mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(v_, clamp(prec)); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(const mpz_class& x, mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(v_, clamp(prec)); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  Real(const mpq_class& x, mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(v_, clamp(prec)); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }

  static Real zero(mpfr_prec_t prec) { return Real(prec, kPrecTag); }
  static Real convert(const Real& x, mpfr_prec_t prec) {
    Real r(prec, kPrecTag);
    mpfr_set(r.v_, x.v_, MPFR_RNDN);
    return r;
  }

  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, MPFR_PREC_MIN);
    mpfr_set_zero(o.v_, 1);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  std::string to_string(size_t digits = 0) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  friend Real operator+(const Real& a, const Real& b) { Real r(join(a, b), kPrecTag); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r(join(a, b), kPrecTag); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r(join(a, b), kPrecTag); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r(join(a, b), kPrecTag); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a) { Real r(a.precision(), kPrecTag); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }

  Real& operator+=(const Real& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

  friend Real abs(const Real& a) { Real r(a.precision(), kPrecTag); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real sqrt(const Real& a) { Real r(a.precision(), kPrecTag); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real log(const Real& a) { Real r(a.precision(), kPrecTag); mpfr_log(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real exp(const Real& a) { Real r(a.precision(), kPrecTag); mpfr_exp(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real pow_si(const Real& a, long k) { Real r(a.precision(), kPrecTag); mpfr_pow_si(r.v_, a.v_, k, MPFR_RNDN); return r; }
  friend Real hypot(const Real& a, const Real& b) { Real r(join(a, b), kPrecTag); mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }
  friend Real min(const Real& a, const Real& b) { return b < a ? b : a; }
  // Exact scaling by 2^k.
  friend Real ldexp2(const Real& a, long k) { Real r(a.precision(), kPrecTag); mpfr_mul_2si(r.v_, a.v_, k, MPFR_RNDN); return r; }

 private:
  enum PrecTagT { kPrecTag };
  Real(mpfr_prec_t prec, PrecTagT) { mpfr_init2(v_, clamp(prec)); mpfr_set_zero(v_, 1); }

  static mpfr_prec_t clamp(mpfr_prec_t p) { return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p; }
  static mpfr_prec_t join(const Real& a, const Real& b) {
    mpfr_prec_t pa = a.precision(), pb = b.precision();
    return pa > pb ? pa : pb;
  }

  mpfr_t v_;
};

// Complex number with Real components. Division goes through |b|^2, which
// keeps every operation a composition of correctly rounded MPFR steps.
// 2^(bits - p): unit-scale rounding slop for error bounds at precision p.
inline Real prec_eps(mpfr_prec_t p, long bits = 0) { return ldexp2(Real(1.0, 32), bits - static_cast<long>(p)); }

class Complex {
 public:
  Complex() = default;
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(double re, double im, mpfr_prec_t prec = Real::kDefaultPrec) : re_(re, prec), im_(im, prec) {}
  explicit Complex(const Real& re) : re_(re), im_(Real::zero(re.precision())) {}

  static Complex zero(mpfr_prec_t prec) { return {Real::zero(prec), Real::zero(prec)}; }
  static Complex convert(const Complex& z, mpfr_prec_t prec) {
    return {Real::convert(z.re(), prec), Real::convert(z.im(), prec)};
  }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  mpfr_prec_t precision() const { return re_.precision() > im_.precision() ? re_.precision() : im_.precision(); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend Complex operator*(const Complex& a, const Real& t) { return {a.re_ * t, a.im_ * t}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
  }
  friend Complex operator/(const Complex& a, const Real& t) { return {a.re_ / t, a.im_ / t}; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  friend Complex conj(const Complex& a) { return {a.re_, -a.im_}; }
  friend Real abs(const Complex& a) { return hypot(a.re_, a.im_); }
  friend Real norm(const Complex& a) { return a.re_ * a.re_ + a.im_ * a.im_; }

  std::complex<double> to_complex_double() const { return {re_.to_double(), im_.to_double()}; }

 private:
  Real re_, im_;
};

}  // namespace heights
