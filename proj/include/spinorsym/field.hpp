#pragma once

// Exact scalars in Q(i, sqrt2).
//
// An element is (re + i*im) + (re_rad + i*im_rad)*sqrt2 with every component an
// arbitrary-precision rational in lowest terms with positive denominator.

#include <gmpxx.h>

#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "spinorsym/errors.hpp"

namespace spinorsym {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(int n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  FieldElement(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  FieldElement(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  FieldElement(Rational re, Rational im, Rational re_rad = 0, Rational im_rad = 0)
      : re_(std::move(re)), im_(std::move(im)), re_rad_(std::move(re_rad)), im_rad_(std::move(im_rad)) {}

  static FieldElement i() { return {Rational(0), Rational(1)}; }
  static FieldElement sqrt2() { return {Rational(0), Rational(0), Rational(1)}; }
  static FieldElement inv_sqrt2() { return {Rational(0), Rational(0), Rational(1, 2)}; }

  const Rational& re_rat() const { return re_; }
  const Rational& im_rat() const { return im_; }
  const Rational& re_rad() const { return re_rad_; }
  const Rational& im_rad() const { return im_rad_; }

  bool is_zero() const {
    return sgn(re_) == 0 && sgn(im_) == 0 && sgn(re_rad_) == 0 && sgn(im_rad_) == 0;
  }
  bool is_real() const { return sgn(im_) == 0 && sgn(im_rad_) == 0; }
  bool is_rational() const { return sgn(im_) == 0 && sgn(re_rad_) == 0 && sgn(im_rad_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0 && sgn(re_rad_) == 0 && sgn(im_rad_) == 0; }

  /// Real part (in Q(sqrt2)) and imaginary part, both returned as real elements.
  FieldElement real_part() const { return {re_, Rational(0), re_rad_, Rational(0)}; }
  FieldElement imag_part() const { return {im_, Rational(0), im_rad_, Rational(0)}; }

  /// Complex conjugation: negates i, fixes sqrt2.
  FieldElement conj() const { return {re_, -im_, re_rad_, -im_rad_}; }

  FieldElement operator-() const { return {-re_, -im_, -re_rad_, -im_rad_}; }

  FieldElement& operator+=(const FieldElement& o) {
    if (sgn(o.re_) != 0) re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    if (sgn(o.re_rad_) != 0) re_rad_ += o.re_rad_;
    if (sgn(o.im_rad_) != 0) im_rad_ += o.im_rad_;
    return *this;
  }
  FieldElement& operator-=(const FieldElement& o) {
    if (sgn(o.re_) != 0) re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    if (sgn(o.re_rad_) != 0) re_rad_ -= o.re_rad_;
    if (sgn(o.im_rad_) != 0) im_rad_ -= o.im_rad_;
    return *this;
  }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    // Fast paths: purely rational factors are the common case.
    if (b.is_rational()) return a.scaled(b.re_);
    if (a.is_rational()) return b.scaled(a.re_);
    // (x + y sqrt2)(u + v sqrt2) = (xu + 2yv) + (xv + yu) sqrt2 with x,y,u,v Gaussian.
    Rational xr = a.re_, xi = a.im_, yr = a.re_rad_, yi = a.im_rad_;
    Rational ur = b.re_, ui = b.im_, vr = b.re_rad_, vi = b.im_rad_;
    FieldElement out;
    out.re_ = xr * ur - xi * ui + 2 * (yr * vr - yi * vi);
    out.im_ = xr * ui + xi * ur + 2 * (yr * vi + yi * vr);
    out.re_rad_ = xr * vr - xi * vi + yr * ur - yi * ui;
    out.im_rad_ = xr * vi + xi * vr + yr * ui + yi * ur;
    return out;
  }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement scaled(const Rational& q) const {
    if (sgn(q) == 0) return {};
    if (q == 1) return *this;
    FieldElement out;
    if (sgn(re_) != 0) out.re_ = re_ * q;
    if (sgn(im_) != 0) out.im_ = im_ * q;
    if (sgn(re_rad_) != 0) out.re_rad_ = re_rad_ * q;
    if (sgn(im_rad_) != 0) out.im_rad_ = im_rad_ * q;
    return out;
  }

  FieldElement inverse() const {
    if (is_zero()) throw ArithmeticError("division by zero in Q(i,sqrt2)");
    if (is_rational()) return FieldElement(Rational(1) / re_);
    // x = a + b sqrt2, a,b in Q(i): 1/x = (a - b sqrt2) / (a^2 - 2 b^2).
    Rational ar = re_, ai = im_, br = re_rad_, bi = im_rad_;
    Rational nr = ar * ar - ai * ai - 2 * (br * br - bi * bi);
    Rational ni = 2 * ar * ai - 4 * br * bi;
    Rational mod2 = nr * nr + ni * ni;  // nonzero since sqrt2 is not in Q(i)
    Rational inr = nr / mod2, ini = -ni / mod2;
    FieldElement num{ar, ai, -br, -bi};
    return num * FieldElement{inr, ini};
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    if (b.is_zero()) throw ArithmeticError("division by zero in Q(i,sqrt2)");
    if (b.is_rational()) return a.scaled(Rational(1) / b.re_);
    return a * b.inverse();
  }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.re_ == b.re_ && a.im_ == b.im_ && a.re_rad_ == b.re_rad_ && a.im_rad_ == b.im_rad_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
    if (x.is_zero()) return os << "0";
    bool first = true;
    auto part = [&](const Rational& q, const char* suffix) {
      if (sgn(q) == 0) return;
      if (!first && sgn(q) > 0) os << "+";
      os << q.get_str() << suffix;
      first = false;
    };
    part(x.re_, "");
    part(x.im_, "*i");
    part(x.re_rad_, "*sqrt2");
    part(x.im_rad_, "*i*sqrt2");
    return os;
  }

 private:
  Rational re_{0};
  Rational im_{0};
  Rational re_rad_{0};
  Rational im_rad_{0};
};

/// Exact binomial coefficient as a rational (0 outside 0 <= k <= n).
inline Rational binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(out);
}

}  // namespace spinorsym
