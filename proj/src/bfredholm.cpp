#include "bfred/bfredholm.hpp"

#include <algorithm>

#include "bfred/errors.hpp"
#include "bfred/rootcount.hpp"

namespace bfred {

namespace {

/* dim(N(M) intersect R(M^n)), exact. */
long kernel_range_intersection_dim(const ExactMatrix& m, const LinearData& base, long n) {
  if (n == 0) return static_cast<long>(base.kernel_basis.size());
  LinearData pw = linear_data(matrix_power(m, n));
  return subspace_dims(base.kernel_basis, pw.image_basis).dim_intersection;
}

long dis_finite(const ExactMatrix& m) {
  LinearData base = linear_data(m);
  long size = m.rows();
  long stable = kernel_range_intersection_dim(m, base, size);
  for (long n = 0; n <= size; ++n)
    if (kernel_range_intersection_dim(m, base, n) == stable) return n;
  return size;  // unreachable: n == size always matches
}

}  // namespace

long finite_index_at(const ExactMatrix& m, long n) {
  LinearData base = linear_data(m);
  LinearData pw = linear_data(matrix_power(m, n));
  long dim = subspace_dims(base.kernel_basis, pw.image_basis).dim_intersection;
  long codim = m.rows() - subspace_dims(base.image_basis, pw.kernel_basis).dim_sum;
  return dim - codim;
}

std::optional<long> dis(const BlockOperator& op) {
  /* Blockwise maximum; the stable-iteration sets are upward closed so
   * the maximum over blocks realizes the direct sum.  Zero-symbol
   * patched blocks are split first, which turns them exact.  Patched
   * blocks with a nonzero symbol stay unknown: a finite-rank term can
   * shift where the iteration stabilizes and this representation has no
   * exact handle on it. */
  long best = 0;
  for (const Block& blk : split_zero_symbol_patches(op).blocks) {
    if (const auto* fb = std::get_if<FiniteBlock>(&blk)) {
      best = std::max(best, dis_finite(fb->matrix));
      continue;
    }
    const auto& tb = std::get<ToeplitzBlock>(blk);
    if (tb.symbol.is_zero()) {
      /* N(T) is the whole space, R(T) is zero: the intersection chain
       * drops to zero at n = 1 and stays. */
      best = std::max(best, 1L);
      continue;
    }
    if (!tb.patch && !symbol_vanishes_on_circle(tb.symbol)) {
      /* Circle-nonvanishing Toeplitz dichotomy: injective or surjective,
       * so the chain is constant from n = 0. */
      continue;
    }
    return std::nullopt;
  }
  return best;
}

BFredholmVerdict bclassify(const BlockOperator& op) {
  BFredholmVerdict v;
  long index = 0;
  long witness = 0;
  long dis_candidate = 0;
  bool dis_known = true;
  for (const Block& blk : split_zero_symbol_patches(op).blocks) {
    if (const auto* fb = std::get_if<FiniteBlock>(&blk)) {
      /* In finite dimension the defining pair stabilizes at the degree
       * of stable iteration and rank-nullity forces index 0. */
      long d = dis_finite(fb->matrix);
      if (finite_index_at(fb->matrix, d) != 0)
        fail("internal_error", "finite block index must vanish");
      witness = std::max(witness, d);
      dis_candidate = std::max(dis_candidate, d);
      continue;
    }
    const auto& tb = std::get<ToeplitzBlock>(blk);
    if (tb.symbol.is_zero()) {
      /* Zero block: kernel meets the range of T trivially and the range
       * plus kernel is everything, so n = 1 certifies index 0. */
      witness = std::max(witness, 1L);
      dis_candidate = std::max(dis_candidate, 1L);
      continue;
    }
    if (!symbol_vanishes_on_circle(tb.symbol)) {
      /* Fredholm block, patch allowed: compact terms do not move the
       * index, and n = 0 witnesses the definition.  The patch does keep
       * the stable-iteration degree out of reach. */
      index -= winding(tb.symbol);
      if (tb.patch) dis_known = false;
      continue;
    }
    /* Nonzero symbol vanishing on the circle: ranges of powers may fail
     * to be closed; report indeterminate rather than guess. */
    return v;
  }
  v.status = BStatus::bfredholm;
  v.index = index;
  v.witness_n = witness;
  if (dis_known) v.dis_value = dis_candidate;
  return v;
}

SpectralIndices finite_spectral_indices(const ExactMatrix& m, const GaussianRational& lambda) {
  if (m.rows() != m.cols()) fail("dimension_mismatch", "spectral indices need a square matrix");
  ExactMatrix a = m;
  for (long r = 0; r < a.rows(); ++r) a(r, r) -= lambda;
  long size = a.rows();
  std::vector<long> kdim{0};  // dim N(A^0)
  ExactMatrix pw = ExactMatrix::Identity(size, size);
  for (long n = 1; n <= size + 1; ++n) {
    pw = pw * a;
    kdim.push_back(size - rank_of(pw));
    if (kdim[n] == kdim[n - 1]) break;
  }
  SpectralIndices out;
  out.ascent = static_cast<long>(kdim.size()) - 2;
  /* Rank-nullity: stabilization of N(A^n) and of R(A^n) happen at the
   * same exponent in finite dimension, so descent equals ascent. */
  out.descent = out.ascent;
  out.multiplicity = kdim.back();
  out.pole = kdim.size() > 1 && kdim[1] > 0;
  return out;
}

StabilizationReport stabilization_check(const ExactMatrix& m) {
  if (m.rows() != m.cols()) fail("dimension_mismatch", "stabilization check needs a square matrix");
  if (m.rows() > 12) fail("limit_exceeded", "stabilization check is capped at size 12");
  StabilizationReport rep;
  rep.d = dis_finite(m);
  LinearData base = linear_data(m);
  long size = m.rows();
  for (long n = rep.d; n <= rep.d + size; ++n) {
    LinearData pw = linear_data(matrix_power(m, n));
    DimCodimClass cls;
    cls.dim = subspace_dims(base.kernel_basis, pw.image_basis).dim_intersection;
    cls.codim = size - subspace_dims(base.image_basis, pw.kernel_basis).dim_sum;
    rep.classes.push_back(cls);
  }
  rep.pass = true;
  for (const DimCodimClass& c : rep.classes)
    if (!class_equivalent(c, rep.classes.front())) rep.pass = false;
  return rep;
}

}  // namespace bfred
