#pragma once

#include <vector>

#include "bfred/gaussian.hpp"
#include "bfred/laurent.hpp"

namespace bfred {

/* Ordinary polynomial over Q(i), dense coefficients c[k] on z^k with the
 * trailing (leading-degree) entry nonzero.  The zero polynomial has an
 * empty coefficient vector and degree -1. */
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<GaussianRational> coeffs);

  static UniPoly from_laurent_shifted(const LaurentPoly& f);  // z^{-lo(f)} f

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  GaussianRational coeff(long k) const;
  const GaussianRational& lead() const;
  const std::vector<GaussianRational>& coeffs() const { return coeffs_; }

  GaussianRational eval(const GaussianRational& z) const;
  UniPoly derivative() const;
  UniPoly monic() const;

  /* p*(z) = sum conj(a_{n-k}) z^k for n = degree(p): the reciprocal
   * conjugate.  Roots of p* are the circle reflections 1/conj(r). */
  UniPoly reciprocal_conjugate() const;

  /* Numerator of p((z + e) / (1 + e z)) for rational e, a Moebius change
   * of variable fixing the unit circle setwise.  Used to displace
   * degenerate Schur iterations. */
  UniPoly mobius(const Rational& e) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly scaled(const GaussianRational& factor) const;

  /* Euclidean division; divisor must be nonzero. */
  static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& quot, UniPoly& rem);

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize();
  std::vector<GaussianRational> coeffs_;
};

/* Monic gcd over the field Q(i); gcd(0, 0) is 0. */
UniPoly gcd_monic(UniPoly a, UniPoly b);

/* Largest squarefree divisor p / gcd(p, p'). */
UniPoly squarefree_part(const UniPoly& p);

/* Real-coefficient polynomial with exact Sturm root counting. */
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational eval(const Rational& x) const;
  RationalPoly derivative() const;

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  RationalPoly scaled(const Rational& factor) const;

  static RationalPoly remainder(const RationalPoly& a, const RationalPoly& b);

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

RationalPoly gcd_rational(RationalPoly a, RationalPoly b);

/* Number of distinct real roots on the whole line, via a Sturm chain on
 * the squarefree part.  Exact; the input may have repeated roots. */
long distinct_real_roots(const RationalPoly& p);

}  // namespace bfred
