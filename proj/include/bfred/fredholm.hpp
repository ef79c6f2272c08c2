#pragma once

#include <optional>

#include "bfred/operator.hpp"

namespace bfred {

enum class NotFredholmReason {
  none,
  symbol_vanishes_on_circle,
  zero_symbol_infinite_defect,
};

struct FredholmVerdict {
  bool is_fredholm = false;
  std::optional<long> index;  // set exactly when is_fredholm
  NotFredholmReason reason = NotFredholmReason::none;
  std::size_t offending_block = 0;  // meaningful when !is_fredholm
};

const char* to_string(NotFredholmReason reason);

/* Fredholm iff every Toeplitz symbol is nonzero and circle-nonvanishing;
 * the index is then the sum of -winding(symbol) over Toeplitz blocks
 * (finite blocks contribute 0).  Patches are compact and never matter. */
FredholmVerdict fredholm_verdict(const BlockOperator& op);

/* Index of a Fredholm operator; throws not_fredholm otherwise. */
long fredholm_index(const BlockOperator& op);

enum class CountMode { exact, finite_section };

struct CountEstimate {
  long value = 0;
  bool certified = false;
};

struct NullityDefect {
  CountEstimate nullity;
  CountEstimate defect;
};

/* Kernel and cokernel dimensions.  Exact mode: finite blocks by
 * elimination, unpatched Toeplitz blocks by the kernel/cokernel
 * dichotomy for circle-nonvanishing symbols (one of the two always
 * vanishes), patched Toeplitz blocks fall back to finite sections and
 * mark the result uncertified.  finite_section mode estimates every
 * Toeplitz block numerically from rectangular truncations of size
 * fs_size with singular values below fs_tol counted as zero. */
NullityDefect nullity_defect(const BlockOperator& op, CountMode mode, long fs_size = 256,
                             double fs_tol = 1e-8);

/* Certified lower bound for the distance from each symbol to zero on the
 * circle (the stability radius used by perturbation arguments): a
 * positive rational m with min_circle |f| >= m for every Toeplitz block.
 * Computed from exact evaluation on rational circle points plus an exact
 * Lipschitz slack, refined until the slack is at most half the sampled
 * minimum.  Operators with no Toeplitz block get margin 1.
 * Throws not_fredholm; margin_not_found if refinement hits the depth cap. */
Rational fredholm_margin(const BlockOperator& op);

}  // namespace bfred
