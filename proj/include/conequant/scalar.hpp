#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace conequant {

/// Exact Gaussian rational a + b*i. Both parts are kept canonical by GMP.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT: implicit from integers is intended
  Scalar(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar rational(long num, long den);
  static Scalar i() { return Scalar(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  Scalar inverse() const;
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Text form used by the DSL printer: "3", "-1/2", "i", "2*i", "(1 + 2*i)".
  std::string to_string() const;

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// i^k for any integer k.
Scalar i_power(int k);

}  // namespace conequant
