#include "bfred/rootcount.hpp"

namespace bfred {

namespace {

/* One Schur transform: T(p) = conj(a_0) p - a_n p*.  The leading term
 * always cancels; the iteration is strict when the degree drops by
 * exactly one and the new constant term gamma = |a_0|^2 - |a_n|^2 is
 * nonzero at every step. */
UniPoly schur_transform(const UniPoly& p) {
  return p.scaled(p.coeff(0).conj()) - p.reciprocal_conjugate().scaled(p.lead());
}

/* Strict Schur-Cohn run.  Returns false when any step degenerates. */
bool strict_count(UniPoly p, long& inside) {
  inside = 0;
  int product_sign = 1;
  while (p.degree() > 0) {
    Rational gamma = p.coeff(0).abs2() - p.lead().abs2();
    if (gamma == 0) return false;
    UniPoly next = schur_transform(p);
    if (next.degree() != p.degree() - 1) return false;
    if (gamma < 0) product_sign = -product_sign;
    if (product_sign < 0) ++inside;
    p = std::move(next);
  }
  return true;
}

/* Inside count of a squarefree polynomial with no circle roots.  When
 * the plain iteration degenerates, first split off the part whose roots
 * pair up under circle reflection (sigma together with 1/conj(sigma)):
 * that pairing forces |a_0| = |a_n| and survives every disc-preserving
 * displacement, but it is exactly gcd(p, p*) and each pair contributes
 * one inside root.  The unpaired remainder is handled by substituting
 * z -> (z + e)/(1 + e z) for shrinking real e; the substitution fixes
 * the circle, permutes the open disc, and for small enough e restores
 * strictness. */
long count_squarefree(const UniPoly& p) {
  long inside = 0;
  if (strict_count(p, inside)) return inside;
  UniPoly g = gcd_monic(p, p.reciprocal_conjugate());
  if (g.degree() > 0) {
    if ((g.degree() & 1) != 0)
      fail("degenerate_iteration", "reflection-paired factor has odd degree");
    if (g.degree() == p.degree()) return p.degree() / 2;
    UniPoly rest, rem;
    UniPoly::divmod(p, g, rest, rem);
    return g.degree() / 2 + count_squarefree(rest);
  }
  Rational e(1, 2);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (int s = 0; s < 2; ++s) {
      Rational eps = s ? -e : e;
      UniPoly q = p.mobius(eps);
      if (q.degree() == p.degree() && strict_count(q, inside)) return inside;
    }
    e /= 2;
  }
  fail("degenerate_iteration", "Schur iteration stayed degenerate through all displacements");
}

/* Multiplicity-aware count: roots of p = roots of its squarefree part
 * plus, with one multiplicity peeled off, roots of gcd(p, p'). */
long count_inside(const UniPoly& p) {
  if (p.degree() <= 0) return 0;
  UniPoly g = gcd_monic(p, p.derivative());
  if (g.degree() <= 0) return count_squarefree(p);
  UniPoly radical, rem;
  UniPoly::divmod(p, g, radical, rem);
  return count_squarefree(radical) + count_inside(g);
}

}  // namespace

bool circle_roots_exist(const UniPoly& p) {
  if (p.is_zero()) fail("zero_polynomial", "circle root test needs a nonzero polynomial");
  if (p.degree() == 0) return false;
  UniPoly g = gcd_monic(p, p.reciprocal_conjugate());
  if (g.degree() <= 0) return false;
  /* Candidate circle roots all divide g.  Check the two real circle
   * points directly, then decide the rest through |g|^2 on the circle:
   * with z = e^{it}, u = tan(t/2), and m = deg g,
   *   |g(z)|^2 (1 + u^2)^m = N(u)
   * for a rational polynomial N built from the Laurent coefficients of
   * g(z) conj(g)(1/z) by the half-angle recurrences below. */
  static const GaussianRational one(1), minus_one(-1);
  if (g.eval(one).is_zero() || g.eval(minus_one).is_zero()) return true;
  LaurentPoly gl;
  for (long k = 0; k <= g.degree(); ++k) gl.set(k, g.coeff(k));
  LaurentPoly mod2 = gl * gl.conj_reflect();
  long m = g.degree();
  /* cos(d t) (1+u^2)^d and sin(d t) (1+u^2)^d as polynomials in u. */
  RationalPoly c1(std::vector<Rational>{1, 0, -1});
  RationalPoly s1(std::vector<Rational>{0, 2});
  RationalPoly one_u2(std::vector<Rational>{1, 0, 1});
  RationalPoly n_poly;
  {
    RationalPoly scale = RationalPoly(std::vector<Rational>{1});
    for (long d = 0; d < m; ++d) scale = scale * one_u2;
    n_poly = scale.scaled(mod2.coeff(0).re());
  }
  RationalPoly cd = c1, sd = s1;
  for (long d = 1; d <= m; ++d) {
    if (d > 1) {
      RationalPoly cn = c1 * cd - s1 * sd;
      RationalPoly sn = s1 * cd + c1 * sd;
      cd = std::move(cn);
      sd = std::move(sn);
    }
    GaussianRational coeff_d = mod2.coeff(d);
    if (!coeff_d.is_zero()) {
      RationalPoly scale = RationalPoly(std::vector<Rational>{1});
      for (long j = 0; j < m - d; ++j) scale = scale * one_u2;
      RationalPoly term = cd.scaled(2 * coeff_d.re()) - sd.scaled(2 * coeff_d.im());
      n_poly = n_poly + term * scale;
    }
  }
  if (n_poly.is_zero()) return true;
  return distinct_real_roots(n_poly) > 0;
}

long schur_cohn_count(const UniPoly& p) {
  if (p.is_zero()) fail("zero_polynomial", "inside-root count needs a nonzero polynomial");
  if (circle_roots_exist(p)) fail("root_on_circle", "polynomial has a root of modulus one");
  return count_inside(p);
}

long winding(const LaurentPoly& f) {
  if (f.is_zero()) fail("zero_symbol", "winding number of the zero symbol is undefined");
  UniPoly p = UniPoly::from_laurent_shifted(f);
  if (circle_roots_exist(p))
    fail("symbol_vanishes_on_circle", "symbol has a zero of modulus one");
  return count_inside(p) + f.lo();
}

bool symbol_vanishes_on_circle(const LaurentPoly& f) {
  if (f.is_zero()) return true;
  return circle_roots_exist(UniPoly::from_laurent_shifted(f));
}

}  // namespace bfred
