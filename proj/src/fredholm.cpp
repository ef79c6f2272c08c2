#include "bfred/fredholm.hpp"

#include <Eigen/Dense>

#include <complex>

#include "bfred/errors.hpp"
#include "bfred/rootcount.hpp"

namespace bfred {

const char* to_string(NotFredholmReason reason) {
  switch (reason) {
    case NotFredholmReason::symbol_vanishes_on_circle:
      return "symbol_vanishes_on_circle";
    case NotFredholmReason::zero_symbol_infinite_defect:
      return "zero_symbol_infinite_defect";
    case NotFredholmReason::none:
      break;
  }
  return "ok";
}

FredholmVerdict fredholm_verdict(const BlockOperator& op) {
  FredholmVerdict v;
  long index = 0;
  for (std::size_t i = 0; i < op.blocks.size(); ++i) {
    const auto* tb = std::get_if<ToeplitzBlock>(&op.blocks[i]);
    if (!tb) continue;
    if (tb->symbol.is_zero()) {
      v.reason = NotFredholmReason::zero_symbol_infinite_defect;
      v.offending_block = i;
      return v;
    }
    if (symbol_vanishes_on_circle(tb->symbol)) {
      v.reason = NotFredholmReason::symbol_vanishes_on_circle;
      v.offending_block = i;
      return v;
    }
    index -= winding(tb->symbol);
  }
  v.is_fredholm = true;
  v.index = index;
  return v;
}

long fredholm_index(const BlockOperator& op) {
  FredholmVerdict v = fredholm_verdict(op);
  if (!v.is_fredholm)
    fail("not_fredholm", std::string("operator is not Fredholm: ") + to_string(v.reason));
  return *v.index;
}

namespace {

Eigen::MatrixXcd to_complex(const ExactMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c)
      out(r, c) = std::complex<double>(m(r, c).re().get_d(), m(r, c).im().get_d());
  return out;
}

/* Numerical kernel dimension of one Toeplitz block.  The truncation is
 * rectangular, rows overhang columns far enough that every column of
 * the infinite matrix with support meeting the first fs_size rows is
 * represented completely; a square cut would fake kernel vectors out of
 * the chopped band of a pure shift. */
long fs_kernel_estimate(const ToeplitzBlock& b, long fs_size, double fs_tol) {
  long over = (b.symbol.is_zero() ? 0 : std::max(b.symbol.hi(), 0L)) +
              (b.patch ? b.patch->rows() : 0);
  ExactMatrix cut = dense_truncation(b, fs_size + over, fs_size);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(to_complex(cut));
  long small = 0;
  for (long k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) < fs_tol) ++small;
  return small;
}

ToeplitzBlock adjoint_block(const ToeplitzBlock& b) {
  ToeplitzBlock adj{b.symbol.conj_reflect(), std::nullopt};
  if (b.patch) adj.patch = conj_transpose(*b.patch);
  return adj;
}

}  // namespace

NullityDefect nullity_defect(const BlockOperator& op, CountMode mode, long fs_size,
                             double fs_tol) {
  NullityDefect out;
  out.nullity.certified = true;
  out.defect.certified = true;
  for (const Block& blk : op.blocks) {
    if (const auto* fb = std::get_if<FiniteBlock>(&blk)) {
      LinearData ld = linear_data(fb->matrix);
      out.nullity.value += static_cast<long>(ld.kernel_basis.size());
      out.defect.value += fb->matrix.rows() - ld.rank;
      continue;
    }
    const auto& tb = std::get<ToeplitzBlock>(blk);
    bool exact_ok = mode == CountMode::exact && !tb.patch && !tb.symbol.is_zero() &&
                    !symbol_vanishes_on_circle(tb.symbol);
    if (exact_ok) {
      /* Circle-nonvanishing unpatched symbol: kernel and cokernel never
       * coexist, so the index pins both dimensions. */
      long idx = -winding(tb.symbol);
      out.nullity.value += std::max(idx, 0L);
      out.defect.value += std::max(-idx, 0L);
      continue;
    }
    out.nullity.value += fs_kernel_estimate(tb, fs_size, fs_tol);
    out.defect.value += fs_kernel_estimate(adjoint_block(tb), fs_size, fs_tol);
    out.nullity.certified = false;
    out.defect.certified = false;
  }
  return out;
}

namespace {

/* Exact squared modulus of f at the rational circle point
 * z(u) = ((1 - u^2) + 2u i) / (1 + u^2), and at -z(u).  The two families
 * over u in [-1, 1] cover the circle with parameter distance at most
 * 2/M in arc length t when u is sampled at spacing 2/M. */
Rational min_abs2_on_grid(const LaurentPoly& f, long m) {
  std::optional<Rational> best;
  for (long j = 0; j <= m; ++j) {
    Rational u(2 * j - m, m);  // -1 .. 1
    u.canonicalize();
    Rational den = 1 + u * u;
    GaussianRational z{(1 - u * u) / den, 2 * u / den};
    for (int s = 0; s < 2; ++s) {
      Rational v = f.eval(s ? -z : z).abs2();
      if (!best || v < *best) best = v;
    }
  }
  return *best;
}

}  // namespace

Rational fredholm_margin(const BlockOperator& op) {
  FredholmVerdict v = fredholm_verdict(op);
  if (!v.is_fredholm)
    fail("not_fredholm", std::string("margin undefined: ") + to_string(v.reason));
  std::optional<Rational> margin;
  for (const Block& blk : op.blocks) {
    const auto* tb = std::get_if<ToeplitzBlock>(&blk);
    if (!tb) continue;
    Rational lip = tb->symbol.lipschitz_bound();
    bool found = false;
    long m = 16;
    for (int depth = 0; depth < 20; ++depth, m *= 2) {
      Rational low = sqrt_lower_bound(min_abs2_on_grid(tb->symbol, m));
      Rational slack = lip * Rational(2, 1) / m;
      if (low > 0 && slack * 2 <= low) {
        Rational block_margin = low - slack;
        if (!margin || block_margin < *margin) margin = block_margin;
        found = true;
        break;
      }
    }
    if (!found)
      fail("margin_not_found", "margin refinement exceeded the depth cap");
  }
  return margin ? *margin : Rational(1);
}

}  // namespace bfred
