#pragma once

#include <optional>
#include <vector>

#include "bfred/fredholm.hpp"
#include "bfred/operator.hpp"

namespace bfred {

/* A pair (finite dimension, finite codimension) attached to an operator:
 * the kernel-part dimension and range-part codimension entering the
 * index.  Two pairs are equivalent when they have equal difference, and
 * psi is that difference, the only invariant of the equivalence. */
struct DimCodimClass {
  long dim = 0;
  long codim = 0;
};

inline long psi(const DimCodimClass& c) { return c.dim - c.codim; }
inline bool class_equivalent(const DimCodimClass& a, const DimCodimClass& b) {
  return psi(a) == psi(b);
}

enum class BStatus { bfredholm, indeterminate };

struct BFredholmVerdict {
  BStatus status = BStatus::indeterminate;
  std::optional<long> index;      // set when status == bfredholm
  std::optional<long> witness_n;  // an iteration exponent witnessing the definition
  std::optional<long> dis_value;  // degree of stable iteration; may stay unknown
};

/* Degree of stable iteration per block, maximized.  Finite blocks: least
 * n with N(M) intersect R(M^n) of stable dimension.  Circle-nonvanishing
 * Toeplitz blocks: 0.  Zero-symbol blocks (patched or not) are split so
 * the finite part answers exactly.  Anything else: unknown (nullopt). */
std::optional<long> dis(const BlockOperator& op);

/* Certify the operator as B-Fredholm and compute its index, blockwise:
 * Fredholm blocks contribute their Fredholm index, zero-symbol blocks
 * reduce to an exact finite computation, finite blocks always qualify
 * with index 0.  Blocks outside those classes leave the verdict
 * indeterminate (never a false "not B-Fredholm" claim). */
BFredholmVerdict bclassify(const BlockOperator& op);

/* Ascent, descent, pole data of a finite matrix at an eigenvalue
 * candidate lambda.  Exact; in finite dimension ascent and descent
 * always agree and a pole of the resolvent at lambda is the same as
 * lambda being an eigenvalue. */
struct SpectralIndices {
  long ascent = 0;
  long descent = 0;
  bool pole = false;
  long multiplicity = 0;  // algebraic multiplicity of lambda
};

SpectralIndices finite_spectral_indices(const ExactMatrix& m, const GaussianRational& lambda);

/* For a finite matrix, walk n = d..d+size (d the degree of stable
 * iteration) and record the dimension/codimension class of
 * (N(M) intersect R(M^n), R(M) + N(M^n)); all classes must be
 * equivalent with equal psi.  Size is capped at 12. */
struct StabilizationReport {
  long d = 0;
  std::vector<DimCodimClass> classes;
  bool pass = false;
};

StabilizationReport stabilization_check(const ExactMatrix& m);

/* dim(N(M) intersect R(M^n)) - codim(R(M) + N(M^n)) for a finite matrix. */
long finite_index_at(const ExactMatrix& m, long n);

}  // namespace bfred
