#pragma once

#include "bfred/laurent.hpp"
#include "bfred/poly.hpp"

namespace bfred {

/* Number of roots of p strictly inside the unit disc, counted with
 * multiplicity, by the Schur-Cohn iteration.  Degenerate iterations are
 * displaced by exact Moebius changes of variable; repeated roots are
 * split off through the squarefree decomposition, so the count is exact
 * for every polynomial without unit-circle roots.
 * Throws zero_polynomial, root_on_circle. */
long schur_cohn_count(const UniPoly& p);

/* Exact decision: does p have a root of modulus exactly 1?  Reduces to a
 * Sturm count on the half-angle substitution of |g|^2 restricted to the
 * circle, where g = gcd(p, p*).  Throws zero_polynomial. */
bool circle_roots_exist(const UniPoly& p);

/* Winding number of the symbol around 0, via inside-root counting of
 * z^{-lo} f.  Throws zero_symbol, symbol_vanishes_on_circle. */
long winding(const LaurentPoly& f);

/* Convenience wrapper of circle_roots_exist for symbols. */
bool symbol_vanishes_on_circle(const LaurentPoly& f);

}  // namespace bfred
