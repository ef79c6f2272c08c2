#pragma once

#include <map>
#include <utility>

#include "bfred/gaussian.hpp"

namespace bfred {

/* Finite Laurent polynomial sum a_n z^n over Q(i), n ranging over a finite
 * set of integers of either sign.  Zero coefficients are never stored, so
 * structural equality is semantic equality and lo()/hi() are exact. */
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(long degree, GaussianRational coeff) {
    LaurentPoly p;
    p.set(degree, std::move(coeff));
    return p;
  }

  static LaurentPoly constant(GaussianRational coeff) { return monomial(0, std::move(coeff)); }

  void set(long degree, GaussianRational coeff) {
    if (coeff.is_zero())
      coeffs_.erase(degree);
    else
      coeffs_[degree] = std::move(coeff);
  }

  void add_to(long degree, const GaussianRational& coeff) {
    auto it = coeffs_.find(degree);
    if (it == coeffs_.end()) {
      set(degree, coeff);
      return;
    }
    it->second += coeff;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  GaussianRational coeff(long degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? GaussianRational() : it->second;
  }

  bool is_zero() const { return coeffs_.empty(); }

  /* Lowest and highest degree with nonzero coefficient; zero symbol has none. */
  long lo() const { return coeffs_.begin()->first; }
  long hi() const { return coeffs_.rbegin()->first; }

  const std::map<long, GaussianRational>& terms() const { return coeffs_; }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [deg, c] : o.coeffs_) add_to(deg, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [deg, c] : o.coeffs_) add_to(deg, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [da, ca] : a.coeffs_)
      for (const auto& [db, cb] : b.coeffs_) out.add_to(da + db, ca * cb);
    return out;
  }

  LaurentPoly scaled(const GaussianRational& factor) const {
    LaurentPoly out;
    for (const auto& [deg, c] : coeffs_) out.set(deg, c * factor);
    return out;
  }

  LaurentPoly shifted(long by) const {
    LaurentPoly out;
    for (const auto& [deg, c] : coeffs_) out.set(deg + by, c);
    return out;
  }

  /* a_n z^n  ->  conj(a_n) z^-n.  On the unit circle this is pointwise
   * complex conjugation, the symbol of the adjoint operator. */
  LaurentPoly conj_reflect() const {
    LaurentPoly out;
    for (const auto& [deg, c] : coeffs_) out.set(-deg, c.conj());
    return out;
  }

  GaussianRational eval(const GaussianRational& z) const {
    GaussianRational out;
    if (coeffs_.empty()) return out;
    GaussianRational zinv;
    if (lo() < 0) zinv = z.inv();
    for (const auto& [deg, c] : coeffs_) {
      GaussianRational p(1);
      const GaussianRational& base = deg < 0 ? zinv : z;
      for (long k = 0; k < (deg < 0 ? -deg : deg); ++k) p *= base;
      out += c * p;
    }
    return out;
  }

  /* Sum of |a_n| surrogates: bounds the sup of |f| on the circle and the
   * operator norm of the induced convolution operator. */
  Rational l1_bound() const {
    Rational out = 0;
    for (const auto& [deg, c] : coeffs_) out += c.abs_bound();
    return out;
  }

  /* Sum of |n a_n| surrogates: a Lipschitz constant for t -> f(e^{it}). */
  Rational lipschitz_bound() const {
    Rational out = 0;
    for (const auto& [deg, c] : coeffs_) out += abs(Rational(deg)) * c.abs_bound();
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

 private:
  std::map<long, GaussianRational> coeffs_;
};

}  // namespace bfred
