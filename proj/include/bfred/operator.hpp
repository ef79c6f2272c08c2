#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "bfred/laurent.hpp"
#include "bfred/matrix.hpp"

namespace bfred {

/* Model limits.  Inputs beyond these are rejected up front with
 * limit_exceeded rather than silently dropped. */
struct Limits {
  long max_patch = 64;       // side length of a finite-rank patch
  long max_band = 64;        // symbol degrees confined to [-max_band, max_band]
  long max_window = 256;     // correction window growth under composition
  long max_finite = 4096;    // side length of a finite block
};

const Limits& limits();

/* Operator on a finite-dimensional summand C^m. */
struct FiniteBlock {
  ExactMatrix matrix;  // square
};

/* Toeplitz operator with symbol f on the sequence space, entry (j, k)
 * equal to the coefficient of z^{j-k} in f, plus an optional square
 * finite-rank patch added in the top-left corner. */
struct ToeplitzBlock {
  LaurentPoly symbol;
  std::optional<ExactMatrix> patch;
};

using Block = std::variant<FiniteBlock, ToeplitzBlock>;

/* Direct sum of blocks acting on the direct sum of their spaces. */
struct BlockOperator {
  std::vector<Block> blocks;
};

BlockOperator finite_operator(ExactMatrix m);
BlockOperator toeplitz_operator(LaurentPoly symbol);

/* Structural checks shared by document parsing and direct construction:
 * at least one block, square matrices, patch and band sizes within
 * limits().  Throws malformed_operator or limit_exceeded. */
void validate_operator(const BlockOperator& op);

/* Same block count, same kinds in order, equal finite dimensions.
 * Patches do not participate: they are finite-rank corrections, not
 * part of the space decomposition. */
bool same_signature(const BlockOperator& a, const BlockOperator& b);

bool exact_equal(const BlockOperator& a, const BlockOperator& b);

enum class CombineKind { add, compose };

/* Blockwise sum or product.  Composition of patched Toeplitz blocks
 * produces T_{fg} plus an exactly computed finite correction window;
 * window growth beyond limits().max_window is an error, not a truncation.
 * Throws shape_mismatch, limit_exceeded. */
BlockOperator combine(const BlockOperator& a, const BlockOperator& b, CombineKind kind);

BlockOperator adjoint(const BlockOperator& a);

/* alpha * a - lambda * identity, blockwise. */
BlockOperator affine(const BlockOperator& a, const GaussianRational& alpha,
                     const GaussianRational& lambda);

/* Exact upper bound for the operator norm: per block, symbol l1 mass
 * plus patch entry mass, maximized over blocks. */
Rational norm_bound(const BlockOperator& a);

/* True when every Toeplitz symbol is zero, i.e. the operator is a
 * finite-rank (hence compact) perturbation of zero. */
bool is_compact(const BlockOperator& a);

/* Entry (row, col) of a Toeplitz block, symbol part plus patch part. */
GaussianRational toeplitz_entry(const ToeplitzBlock& b, long row, long col);

/* Leading rows x cols corner of the block as a dense matrix. */
ExactMatrix dense_truncation(const ToeplitzBlock& b, long rows, long cols);

/* A zero-symbol Toeplitz block with a patch acts as patch + 0 on a split
 * of the sequence space.  Rewriting it as FiniteBlock(patch) followed by
 * an unpatched zero-symbol block makes kernels and ranges of the finite
 * part computable exactly.  Blocks of other shapes pass through.  The
 * result usually has a different signature than the input. */
BlockOperator split_zero_symbol_patches(const BlockOperator& a);

}  // namespace bfred
