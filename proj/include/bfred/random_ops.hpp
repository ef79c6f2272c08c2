#pragma once

#include <random>

#include "bfred/family.hpp"
#include "bfred/operator.hpp"
#include "bfred/weyl.hpp"

namespace bfred {

/* Deterministic generator for property runs.  Sampling avoids the
 * standard distribution adaptors on purpose: their output is allowed to
 * differ between standard library implementations, and seeds here are
 * part of reproducible reports. */
class OpGenerator {
 public:
  explicit OpGenerator(unsigned long seed) : eng_(seed) {}

  unsigned long bits() { return eng_(); }
  long int_in(long lo, long hi);  // inclusive, hi >= lo
  bool coin() { return (bits() & 1) != 0; }

  Rational rational(long max_abs_num, long max_den);
  GaussianRational gaussian(long max_abs_num, long max_den, bool allow_imaginary = true);

  ExactMatrix matrix(long rows, long cols, long max_abs_num = 3, long max_den = 2);

  /* Nonzero symbol, circle-nonvanishing, with a comfortable stability
   * margin (at least 1/32) so perturbation experiments and numerical
   * cross-checks sit away from the boundary. */
  LaurentPoly stable_symbol(long max_band = 3);

  /* Random mixed-signature operator, every block Fredholm. */
  BlockOperator fredholm_operator(long max_blocks = 3);

  /* Same signature as the model, all symbols zero: a finite-rank
   * (compact) operator. */
  BlockOperator compact_like(const BlockOperator& model);

  /* Same-signature perturbation with norm_bound strictly below bound. */
  BlockOperator perturbation_within(const BlockOperator& model, const Rational& bound);

  ParamComplex complex(long max_vertices = 8);

  NormalDiagonalOperator normal_diagonal(long max_values = 3);

  NormalFamily normal_family(long max_vertices = 5);

  /* Connected-by-construction family: constant index per component. */
  OperatorFamily fredholm_family(long max_vertices = 6);

 private:
  std::mt19937_64 eng_;
};

}  // namespace bfred
