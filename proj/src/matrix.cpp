#include "bfred/matrix.hpp"

#include "bfred/errors.hpp"

namespace bfred {

namespace {

/* Smallest positive integer clearing all denominators in the row. */
mpz_class row_denominator_lcm(const ExactMatrix& m, long row) {
  mpz_class l = 1;
  for (long j = 0; j < m.cols(); ++j) {
    mpz_class g;
    mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), m(row, j).re().get_den().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), g.get_mpz_t(), m(row, j).im().get_den().get_mpz_t());
  }
  return l;
}

}  // namespace

LinearData linear_data(const ExactMatrix& m) {
  LinearData out;
  const long rows = m.rows(), cols = m.cols();

  /* Fraction-free elimination: rows are first scaled to Gaussian-integer
   * entries, then reduced with the one-step division rule
   *   u(i,j) <- (pivot * u(i,j) - u(i,c) * u(r,j)) / previous_pivot,
   * whose divisions are exact over Z[i].  Row scaling and row operations
   * are invertible, so kernel and rank are those of the input. */
  ExactMatrix u = m;
  for (long i = 0; i < rows; ++i) {
    GaussianRational scale{Rational(row_denominator_lcm(u, i)), Rational(0)};
    for (long j = 0; j < cols; ++j) u(i, j) *= scale;
  }

  std::vector<long> pivot_col;
  GaussianRational prev(1);
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long best = -1;
    Rational best_mag = 0;
    for (long i = r; i < rows; ++i) {
      Rational mag = u(i, c).abs_bound();
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best < 0) continue;
    if (best != r) u.row(r).swap(u.row(best));
    const GaussianRational pivot = u(r, c);
    for (long i = r + 1; i < rows; ++i) {
      for (long j = c + 1; j < cols; ++j)
        u(i, j) = (pivot * u(i, j) - u(i, c) * u(r, j)) / prev;
      u(i, c) = GaussianRational();
    }
    prev = pivot;
    pivot_col.push_back(c);
    ++r;
  }
  out.rank = r;

  /* Kernel: one vector per free column, solved by back substitution on
   * the echelon form.  Row operations preserve the kernel exactly. */
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (long c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  for (long f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    ExactVector v = ExactVector::Zero(cols);
    v(f) = GaussianRational(1);
    for (long i = r - 1; i >= 0; --i) {
      long pc = pivot_col[static_cast<std::size_t>(i)];
      GaussianRational s;
      for (long j = pc + 1; j < cols; ++j) {
        if (!v(j).is_zero()) s += u(i, j) * v(j);
      }
      v(pc) = -s / u(i, pc);
    }
    out.kernel_basis.push_back(std::move(v));
  }

  /* Image: the original columns sitting over the pivot positions span
   * the column space. */
  for (long c : pivot_col) out.image_basis.push_back(m.col(c));
  return out;
}

long rank_of(const ExactMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return linear_data(m).rank;
}

ExactMatrix conj_transpose(const ExactMatrix& m) {
  ExactMatrix out(m.cols(), m.rows());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) out(j, i) = m(i, j).conj();
  return out;
}

ExactMatrix from_columns(const std::vector<ExactVector>& cols, long rows_if_empty) {
  if (cols.empty()) return ExactMatrix(rows_if_empty, 0);
  ExactMatrix out(cols.front().size(), static_cast<long>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k].size() != out.rows())
      fail("dimension_mismatch", "basis vectors of unequal length");
    out.col(static_cast<long>(k)) = cols[k];
  }
  return out;
}

SubspaceDims subspace_dims(const std::vector<ExactVector>& a, const std::vector<ExactVector>& b) {
  long n = 0;
  if (!a.empty())
    n = a.front().size();
  else if (!b.empty())
    n = b.front().size();
  ExactMatrix ma = from_columns(a, n);
  ExactMatrix mb = from_columns(b, n);
  if (ma.rows() != mb.rows()) fail("dimension_mismatch", "subspaces of different ambient spaces");
  SubspaceDims out;
  out.dim_a = rank_of(ma);
  out.dim_b = rank_of(mb);
  ExactMatrix joined(n, ma.cols() + mb.cols());
  joined << ma, mb;
  out.dim_sum = rank_of(joined);
  out.dim_intersection = out.dim_a + out.dim_b - out.dim_sum;
  return out;
}

bool exact_equal(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

ExactMatrix matrix_power(const ExactMatrix& m, long n) {
  if (m.rows() != m.cols()) fail("dimension_mismatch", "power of a non-square matrix");
  ExactMatrix out = ExactMatrix::Identity(m.rows(), m.cols());
  for (long k = 0; k < n; ++k) out = out * m;
  return out;
}

}  // namespace bfred
