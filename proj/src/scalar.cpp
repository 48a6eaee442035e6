#include "conequant/scalar.hpp"

#include <stdexcept>

namespace conequant {

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw std::domain_error("Scalar::rational: zero denominator");
  mpq_class q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::inverse() const {
  mpq_class norm = re_ * re_ + im_ * im_;
  if (sgn(norm) == 0) throw std::domain_error("Scalar: division by zero");
  return Scalar(re_ / norm, -im_ / norm);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw std::domain_error("Scalar: division by zero");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string Scalar::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return imag;
  if (sgn(im_) < 0) {
    std::string mag = (im_ == -1) ? "i" : mpq_class(-im_).get_str() + "*i";
    return "(" + re_.get_str() + " - " + mag + ")";
  }
  return "(" + re_.get_str() + " + " + imag + ")";
}

Scalar i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return Scalar(1);
    case 1: return Scalar(0, 1);
    case 2: return Scalar(-1);
    default: return Scalar(0, -1);
  }
}

}  // namespace conequant
