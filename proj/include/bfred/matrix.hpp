#pragma once

#include <Eigen/Core>

#include <vector>

#include "bfred/gaussian.hpp"

namespace Eigen {

template <>
struct NumTraits<bfred::GaussianRational> : GenericNumTraits<bfred::GaussianRational> {
  typedef bfred::GaussianRational Real;
  typedef bfred::GaussianRational NonInteger;
  typedef bfred::GaussianRational Nested;
  typedef bfred::GaussianRational Literal;
  enum {
    IsComplex = 0,  // conjugation is handled explicitly where it matters
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 60,
  };
};

}  // namespace Eigen

namespace bfred {

using ExactMatrix = Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic>;
using ExactVector = Eigen::Matrix<GaussianRational, Eigen::Dynamic, 1>;

/* Rank, kernel basis, and image (column span) basis of one elimination
 * pass.  Fraction-free row elimination with partial pivoting on the
 * |re| + |im| magnitude surrogate; everything stays in Q(i), so rank and
 * bases are exact, never threshold decisions. */
struct LinearData {
  long rank = 0;
  std::vector<ExactVector> kernel_basis;
  std::vector<ExactVector> image_basis;
};

LinearData linear_data(const ExactMatrix& m);

long rank_of(const ExactMatrix& m);

/* Exact conjugate transpose (Eigen's adjoint() would only transpose,
 * since the scalar advertises itself as real). */
ExactMatrix conj_transpose(const ExactMatrix& m);

/* Dimensions of span(a), span(b), their sum, and their intersection,
 * via rank computations on stacked column matrices.  All vectors must
 * share one ambient dimension. */
struct SubspaceDims {
  long dim_a = 0;
  long dim_b = 0;
  long dim_sum = 0;
  long dim_intersection = 0;
};

SubspaceDims subspace_dims(const std::vector<ExactVector>& a, const std::vector<ExactVector>& b);

ExactMatrix from_columns(const std::vector<ExactVector>& cols, long rows_if_empty);

bool exact_equal(const ExactMatrix& a, const ExactMatrix& b);

ExactMatrix matrix_power(const ExactMatrix& m, long n);

}  // namespace bfred
