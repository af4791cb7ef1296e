#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tmh {

/// Arbitrary-precision real with an explicit precision-in-bits parameter.
/// Arithmetic results carry the minimum precision of the operands; every
/// value holds at least 64 bits. Rounding is to nearest throughout.
class PrecisionReal {
 public:
  static constexpr long min_prec = 64;
  static constexpr long default_prec = 256;

  PrecisionReal() { mpfr_init2(v_, default_prec); mpfr_set_zero(v_, 1); }
  explicit PrecisionReal(double x, long prec = default_prec) {
    check_prec(prec);
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  explicit PrecisionReal(long x, long prec = default_prec) {
    check_prec(prec);
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  PrecisionReal(const std::string& decimal, long prec) {
    check_prec(prec);
    mpfr_init2(v_, prec);
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      throw std::invalid_argument("unparsable decimal: " + decimal);
    }
  }

  PrecisionReal(const PrecisionReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  PrecisionReal(PrecisionReal&& o) noexcept {
    mpfr_init2(v_, min_prec);
    mpfr_swap(v_, o.v_);
  }
  PrecisionReal& operator=(const PrecisionReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  PrecisionReal& operator=(PrecisionReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~PrecisionReal() { mpfr_clear(v_); }

  long prec_bits() const { return mpfr_get_prec(v_); }

  /// Rounds (or zero-extends) to the requested precision.
  PrecisionReal with_precision(long prec) const {
    check_prec(prec);
    PrecisionReal r(tag_prec{}, prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Decimal string; digits = 0 means full precision of the value.
  std::string str(long digits = 0) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// floor(log2 |x|); throws for zero.
  long ilog2() const {
    if (is_zero()) throw std::domain_error("ilog2 of zero");
    return static_cast<long>(mpfr_get_exp(v_)) - 1;
  }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  static PrecisionReal pi(long prec) {
    check_prec(prec);
    PrecisionReal r(tag_prec{}, prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// 2^e at the given precision (exact).
  static PrecisionReal pow2(long e, long prec = default_prec) {
    check_prec(prec);
    PrecisionReal r(tag_prec{}, prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  friend PrecisionReal operator+(const PrecisionReal& a, const PrecisionReal& b) {
    PrecisionReal r(tag_prec{}, opprec(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend PrecisionReal operator-(const PrecisionReal& a, const PrecisionReal& b) {
    PrecisionReal r(tag_prec{}, opprec(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend PrecisionReal operator*(const PrecisionReal& a, const PrecisionReal& b) {
    PrecisionReal r(tag_prec{}, opprec(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend PrecisionReal operator/(const PrecisionReal& a, const PrecisionReal& b) {
    PrecisionReal r(tag_prec{}, opprec(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend PrecisionReal operator-(const PrecisionReal& a) {
    PrecisionReal r(tag_prec{}, a.prec_bits());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  PrecisionReal& operator+=(const PrecisionReal& b) { *this = *this + b; return *this; }
  PrecisionReal& operator-=(const PrecisionReal& b) { *this = *this - b; return *this; }
  PrecisionReal& operator*=(const PrecisionReal& b) { *this = *this * b; return *this; }
  PrecisionReal& operator/=(const PrecisionReal& b) { *this = *this / b; return *this; }

  friend PrecisionReal operator+(const PrecisionReal& a, long b) { PrecisionReal r(tag_prec{}, a.prec_bits()); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend PrecisionReal operator-(const PrecisionReal& a, long b) { PrecisionReal r(tag_prec{}, a.prec_bits()); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend PrecisionReal operator+(long b, const PrecisionReal& a) { return a + b; }
  friend PrecisionReal operator-(long b, const PrecisionReal& a) { PrecisionReal r(tag_prec{}, a.prec_bits()); mpfr_si_sub(r.v_, b, a.v_, MPFR_RNDN); return r; }
  friend PrecisionReal operator*(const PrecisionReal& a, long b) { PrecisionReal r(tag_prec{}, a.prec_bits()); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend PrecisionReal operator*(long b, const PrecisionReal& a) { return a * b; }
  friend PrecisionReal operator/(const PrecisionReal& a, long b) { PrecisionReal r(tag_prec{}, a.prec_bits()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }

  friend bool operator<(const PrecisionReal& a, const PrecisionReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const PrecisionReal& a, const PrecisionReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const PrecisionReal& a, const PrecisionReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const PrecisionReal& a, const PrecisionReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const PrecisionReal& a, const PrecisionReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const PrecisionReal& a, const PrecisionReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const PrecisionReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const PrecisionReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const PrecisionReal& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const PrecisionReal& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const PrecisionReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

#define TMH_UNARY_FN(name, mpfr_name)                        \
  friend PrecisionReal name(const PrecisionReal& a) {        \
    PrecisionReal r(tag_prec{}, a.prec_bits());              \
    mpfr_name(r.v_, a.v_, MPFR_RNDN);                        \
    return r;                                                \
  }
  TMH_UNARY_FN(sqrt, mpfr_sqrt)
  TMH_UNARY_FN(abs, mpfr_abs)
  TMH_UNARY_FN(log, mpfr_log)
  TMH_UNARY_FN(exp, mpfr_exp)
  TMH_UNARY_FN(sin, mpfr_sin)
  TMH_UNARY_FN(cos, mpfr_cos)
  TMH_UNARY_FN(tan, mpfr_tan)
  TMH_UNARY_FN(asin, mpfr_asin)
  TMH_UNARY_FN(atan, mpfr_atan)
  TMH_UNARY_FN(floor, mpfr_floor)
#undef TMH_UNARY_FN

  friend PrecisionReal atan2(const PrecisionReal& y, const PrecisionReal& x) {
    PrecisionReal r(tag_prec{}, opprec(y, x));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend PrecisionReal hypot(const PrecisionReal& a, const PrecisionReal& b) {
    PrecisionReal r(tag_prec{}, opprec(a, b));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  /// a * 2^e, exact.
  friend PrecisionReal ldexp2(const PrecisionReal& a, long e) {
    PrecisionReal r(tag_prec{}, a.prec_bits());
    mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }

 private:
  struct tag_prec {};
  PrecisionReal(tag_prec, long prec) { mpfr_init2(v_, prec); }
  static void check_prec(long prec) {
    if (prec < min_prec) throw std::invalid_argument("precision below 64 bits");
  }
  static long opprec(const PrecisionReal& a, const PrecisionReal& b) {
    return a.prec_bits() < b.prec_bits() ? a.prec_bits() : b.prec_bits();
  }
  mpfr_t v_;
};

/// Free-function form used throughout the library.
inline PrecisionReal with_precision(const PrecisionReal& x, long bits) {
  return x.with_precision(bits);
}

}  // namespace tmh
