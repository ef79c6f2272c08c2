#include "bfred/operator.hpp"

#include <algorithm>
#include <string>

#include "bfred/errors.hpp"

namespace bfred {

const Limits& limits() {
  static const Limits l;
  return l;
}

BlockOperator finite_operator(ExactMatrix m) {
  BlockOperator op;
  op.blocks.push_back(FiniteBlock{std::move(m)});
  return op;
}

BlockOperator toeplitz_operator(LaurentPoly symbol) {
  BlockOperator op;
  op.blocks.push_back(ToeplitzBlock{std::move(symbol), std::nullopt});
  return op;
}

void validate_operator(const BlockOperator& op) {
  if (op.blocks.empty()) fail("malformed_operator", "operator needs at least one block");
  for (std::size_t i = 0; i < op.blocks.size(); ++i) {
    const std::string where = "block " + std::to_string(i);
    if (const auto* fb = std::get_if<FiniteBlock>(&op.blocks[i])) {
      if (fb->matrix.rows() != fb->matrix.cols())
        fail("malformed_operator", where + ": finite block matrix must be square");
      if (fb->matrix.rows() > limits().max_finite)
        fail("limit_exceeded", where + ": finite block larger than " +
                                   std::to_string(limits().max_finite));
    } else {
      const auto& tb = std::get<ToeplitzBlock>(op.blocks[i]);
      if (!tb.symbol.is_zero()) {
        if (tb.symbol.lo() < -limits().max_band || tb.symbol.hi() > limits().max_band)
          fail("limit_exceeded",
               where + ": symbol band exceeds " + std::to_string(limits().max_band));
      }
      if (tb.patch) {
        if (tb.patch->rows() != tb.patch->cols())
          fail("malformed_operator", where + ": patch must be square");
        if (tb.patch->rows() > limits().max_patch)
          fail("limit_exceeded",
               where + ": patch larger than " + std::to_string(limits().max_patch));
        if (tb.patch->rows() == 0)
          fail("malformed_operator", where + ": empty patch should be omitted");
      }
    }
  }
}

bool same_signature(const BlockOperator& a, const BlockOperator& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const auto* fa = std::get_if<FiniteBlock>(&a.blocks[i]);
    const auto* fb = std::get_if<FiniteBlock>(&b.blocks[i]);
    if ((fa == nullptr) != (fb == nullptr)) return false;
    if (fa && fa->matrix.rows() != fb->matrix.rows()) return false;
  }
  return true;
}

bool exact_equal(const BlockOperator& a, const BlockOperator& b) {
  if (!same_signature(a, b)) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (const auto* fa = std::get_if<FiniteBlock>(&a.blocks[i])) {
      if (!exact_equal(fa->matrix, std::get<FiniteBlock>(b.blocks[i]).matrix)) return false;
      continue;
    }
    const auto& ta = std::get<ToeplitzBlock>(a.blocks[i]);
    const auto& tb = std::get<ToeplitzBlock>(b.blocks[i]);
    if (ta.symbol != tb.symbol) return false;
    long pa = ta.patch ? ta.patch->rows() : 0;
    long pb = tb.patch ? tb.patch->rows() : 0;
    long n = std::max(pa, pb);
    for (long r = 0; r < n; ++r)
      for (long c = 0; c < n; ++c) {
        GaussianRational va = (ta.patch && r < pa && c < pa) ? (*ta.patch)(r, c) : GaussianRational();
        GaussianRational vb = (tb.patch && r < pb && c < pb) ? (*tb.patch)(r, c) : GaussianRational();
        if (va != vb) return false;
      }
  }
  return true;
}

GaussianRational toeplitz_entry(const ToeplitzBlock& b, long row, long col) {
  GaussianRational v = b.symbol.coeff(row - col);
  if (b.patch && row < b.patch->rows() && col < b.patch->cols()) v += (*b.patch)(row, col);
  return v;
}

ExactMatrix dense_truncation(const ToeplitzBlock& b, long rows, long cols) {
  ExactMatrix out(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) out(r, c) = toeplitz_entry(b, r, c);
  return out;
}

namespace {

/* Drop an all-zero border so patches stay minimal and comparisons and
 * norms see the true support. */
std::optional<ExactMatrix> trimmed_patch(const ExactMatrix& m) {
  long n = 0;
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) n = std::max({n, r + 1, c + 1});
  if (n == 0) return std::nullopt;
  ExactMatrix out = m.topLeftCorner(n, n);
  return out;
}

ExactMatrix padded(const std::optional<ExactMatrix>& patch, long n) {
  ExactMatrix out = ExactMatrix::Zero(n, n);
  if (patch) out.topLeftCorner(patch->rows(), patch->cols()) = *patch;
  return out;
}

ToeplitzBlock add_toeplitz(const ToeplitzBlock& a, const ToeplitzBlock& b) {
  ToeplitzBlock out{a.symbol + b.symbol, std::nullopt};
  long n = std::max(a.patch ? a.patch->rows() : 0, b.patch ? b.patch->rows() : 0);
  if (n > 0) out.patch = trimmed_patch(padded(a.patch, n) + padded(b.patch, n));
  return out;
}

/* Product of patched Toeplitz blocks: T_f T_g = T_{fg} + window, where
 * the window collects the classical T_f T_g - T_{fg} correction (rows
 * below max(hi_f, 0), columns below max(-lo_g, 0)) together with every
 * patch cross term.  All supports are finite and computed exactly. */
ToeplitzBlock compose_toeplitz(const ToeplitzBlock& a, const ToeplitzBlock& b) {
  const LaurentPoly& f = a.symbol;
  const LaurentPoly& g = b.symbol;
  LaurentPoly fg = f * g;

  long hi_f = f.is_zero() ? 0 : std::max(f.hi(), 0L);
  long lo_f_neg = f.is_zero() ? 0 : std::max(-f.lo(), 0L);
  long hi_g = g.is_zero() ? 0 : std::max(g.hi(), 0L);
  long lo_g_neg = g.is_zero() ? 0 : std::max(-g.lo(), 0L);
  long pa = a.patch ? a.patch->rows() : 0;
  long pb = b.patch ? b.patch->rows() : 0;

  /* Row support: T_f T_g - T_{fg} lives in rows < hi_f; terms hitting a
   * patch of b live in rows < hi_f + pb; terms starting from a patch of
   * a live in rows < pa.  Columns mirror this with lo_g and pa. */
  long rows = std::max({hi_f, hi_f + pb, pa});
  long cols = std::max({lo_g_neg, lo_g_neg + pa, pb});
  long window = std::max(rows, cols);
  if (window > limits().max_window)
    fail("limit_exceeded",
         "composition window " + std::to_string(window) + " exceeds " +
             std::to_string(limits().max_window));

  ToeplitzBlock out{fg, std::nullopt};
  if (window == 0) return out;

  /* Inner summation range covering every nonzero product term for the
   * window entries: bands reach at most this far. */
  long inner = window + hi_f + lo_f_neg + hi_g + lo_g_neg + pa + pb + 1;
  ExactMatrix d = ExactMatrix::Zero(window, window);
  for (long r = 0; r < window; ++r)
    for (long c = 0; c < window; ++c) {
      GaussianRational sum;
      for (long l = 0; l < inner; ++l) {
        GaussianRational av = toeplitz_entry(a, r, l);
        if (av.is_zero()) continue;
        sum += av * toeplitz_entry(b, l, c);
      }
      d(r, c) = sum - fg.coeff(r - c);
    }
  out.patch = trimmed_patch(d);
  return out;
}

}  // namespace

BlockOperator combine(const BlockOperator& a, const BlockOperator& b, CombineKind kind) {
  if (!same_signature(a, b)) fail("shape_mismatch", "operators have different block signatures");
  BlockOperator out;
  out.blocks.reserve(a.blocks.size());
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (const auto* fa = std::get_if<FiniteBlock>(&a.blocks[i])) {
      const auto& fb = std::get<FiniteBlock>(b.blocks[i]);
      ExactMatrix m = kind == CombineKind::add ? ExactMatrix(fa->matrix + fb.matrix)
                                               : ExactMatrix(fa->matrix * fb.matrix);
      out.blocks.push_back(FiniteBlock{std::move(m)});
      continue;
    }
    const auto& ta = std::get<ToeplitzBlock>(a.blocks[i]);
    const auto& tb = std::get<ToeplitzBlock>(b.blocks[i]);
    out.blocks.push_back(kind == CombineKind::add ? add_toeplitz(ta, tb)
                                                  : compose_toeplitz(ta, tb));
  }
  return out;
}

BlockOperator adjoint(const BlockOperator& a) {
  BlockOperator out;
  out.blocks.reserve(a.blocks.size());
  for (const Block& blk : a.blocks) {
    if (const auto* fb = std::get_if<FiniteBlock>(&blk)) {
      out.blocks.push_back(FiniteBlock{conj_transpose(fb->matrix)});
    } else {
      const auto& tb = std::get<ToeplitzBlock>(blk);
      ToeplitzBlock adj{tb.symbol.conj_reflect(), std::nullopt};
      if (tb.patch) adj.patch = conj_transpose(*tb.patch);
      out.blocks.push_back(std::move(adj));
    }
  }
  return out;
}

BlockOperator affine(const BlockOperator& a, const GaussianRational& alpha,
                     const GaussianRational& lambda) {
  BlockOperator out;
  out.blocks.reserve(a.blocks.size());
  for (const Block& blk : a.blocks) {
    if (const auto* fb = std::get_if<FiniteBlock>(&blk)) {
      ExactMatrix m = fb->matrix;
      for (long r = 0; r < m.rows(); ++r) {
        for (long c = 0; c < m.cols(); ++c) m(r, c) *= alpha;
        m(r, r) -= lambda;
      }
      out.blocks.push_back(FiniteBlock{std::move(m)});
    } else {
      const auto& tb = std::get<ToeplitzBlock>(blk);
      ToeplitzBlock scaled{tb.symbol.scaled(alpha), std::nullopt};
      scaled.symbol.add_to(0, -lambda);
      if (tb.patch) {
        ExactMatrix p = *tb.patch;
        for (long r = 0; r < p.rows(); ++r)
          for (long c = 0; c < p.cols(); ++c) p(r, c) *= alpha;
        scaled.patch = trimmed_patch(p);
      }
      out.blocks.push_back(std::move(scaled));
    }
  }
  return out;
}

Rational norm_bound(const BlockOperator& a) {
  Rational best = 0;
  for (const Block& blk : a.blocks) {
    Rational b = 0;
    if (const auto* fb = std::get_if<FiniteBlock>(&blk)) {
      for (long r = 0; r < fb->matrix.rows(); ++r)
        for (long c = 0; c < fb->matrix.cols(); ++c) b += fb->matrix(r, c).abs_bound();
    } else {
      const auto& tb = std::get<ToeplitzBlock>(blk);
      b = tb.symbol.l1_bound();
      if (tb.patch)
        for (long r = 0; r < tb.patch->rows(); ++r)
          for (long c = 0; c < tb.patch->cols(); ++c) b += (*tb.patch)(r, c).abs_bound();
    }
    best = std::max(best, b);
  }
  return best;
}

bool is_compact(const BlockOperator& a) {
  for (const Block& blk : a.blocks)
    if (const auto* tb = std::get_if<ToeplitzBlock>(&blk))
      if (!tb->symbol.is_zero()) return false;
  return true;
}

BlockOperator split_zero_symbol_patches(const BlockOperator& a) {
  BlockOperator out;
  for (const Block& blk : a.blocks) {
    const auto* tb = std::get_if<ToeplitzBlock>(&blk);
    if (tb && tb->symbol.is_zero() && tb->patch) {
      out.blocks.push_back(FiniteBlock{*tb->patch});
      out.blocks.push_back(ToeplitzBlock{LaurentPoly(), std::nullopt});
    } else {
      out.blocks.push_back(blk);
    }
  }
  return out;
}

}  // namespace bfred
