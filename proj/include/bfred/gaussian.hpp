#pragma once

#include <gmpxx.h>

#include <string>

#include "bfred/errors.hpp"

namespace bfred {

using Rational = mpq_class;

/* Parse a rational written as "p" or "p/q" in base 10.  The result is
 * canonicalized; a zero denominator or stray characters are rejected. */
Rational parse_rational(const std::string& text);

/* Canonical form: "p" when the denominator is 1, otherwise "p/q" in
 * lowest terms with q > 0.  parse_rational(format_rational(x)) == x. */
std::string format_rational(const Rational& value);

/* Floor of sqrt(value) for value >= 0, exact over the integers. */
mpz_class isqrt(const mpz_class& value);

/* A lower bound for sqrt(value), tight to roughly 2^-32 relative error. */
Rational sqrt_lower_bound(const Rational& value);

inline int sign_of(const Rational& value) { return sgn(value); }

/* Element of Q(i): a complex number with rational real and imaginary
 * parts.  Arithmetic is exact; there is no rounding anywhere.  The type
 * is deliberately not Eigen-aware itself, matrix.hpp adds the NumTraits
 * glue so dense Eigen matrices can be instantiated over it. */
class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(int value) : re_(value), im_(0) {}          // NOLINT: implicit for Scalar(0)
  GaussianRational(const Rational& value) : re_(value), im_(0) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational conj() const { return {re_, -im_}; }

  /* |x|^2 = re^2 + im^2, an exact rational. */
  Rational abs2() const { return re_ * re_ + im_ * im_; }

  /* |re| + |im|, the exact magnitude surrogate used for pivoting and for
   * norm bounds.  It sandwiches the true modulus within a factor sqrt(2). */
  Rational abs_bound() const { return abs(re_) + abs(im_); }

  GaussianRational inv() const {
    Rational n = abs2();
    if (n == 0) fail("division_by_zero", "inverse of zero");
    return {re_ / n, -im_ / n};
  }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inv(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /* Lexicographic (re, im) order.  Not compatible with arithmetic, only
   * here so spectra and map keys have one deterministic ordering. */
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return cmp(a.im_, b.im_) < 0;
  }

 private:
  Rational re_, im_;
};

using GQ = GaussianRational;

/* "3/4" for reals, "3/4+1/2i" style otherwise.  Display only; documents
 * carry the real and imaginary parts separately. */
std::string format_gaussian(const GaussianRational& value);

}  // namespace bfred
