#include "bfred/random_ops.hpp"

#include <algorithm>

#include "bfred/errors.hpp"
#include "bfred/fredholm.hpp"
#include "bfred/rootcount.hpp"

namespace bfred {

long OpGenerator::int_in(long lo, long hi) {
  unsigned long span = static_cast<unsigned long>(hi - lo) + 1;
  return lo + static_cast<long>(bits() % span);
}

Rational OpGenerator::rational(long max_abs_num, long max_den) {
  Rational q(int_in(-max_abs_num, max_abs_num), int_in(1, max_den));
  q.canonicalize();
  return q;
}

GaussianRational OpGenerator::gaussian(long max_abs_num, long max_den, bool allow_imaginary) {
  Rational re = rational(max_abs_num, max_den);
  Rational im = allow_imaginary && coin() ? rational(max_abs_num, max_den) : Rational(0);
  return {re, im};
}

ExactMatrix OpGenerator::matrix(long rows, long cols, long max_abs_num, long max_den) {
  ExactMatrix m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) m(r, c) = gaussian(max_abs_num, max_den);
  return m;
}

LaurentPoly OpGenerator::stable_symbol(long max_band) {
  for (;;) {
    LaurentPoly f;
    long terms = int_in(1, 3);
    for (long t = 0; t < terms; ++t) {
      GaussianRational c = gaussian(3, 2);
      if (c.is_zero()) c = GaussianRational(1);
      f.set(int_in(-max_band, max_band), c);
    }
    if (f.is_zero() || symbol_vanishes_on_circle(f)) continue;
    BlockOperator probe = toeplitz_operator(f);
    try {
      if (fredholm_margin(probe) >= Rational(1, 32)) return f;
    } catch (const Error&) {
      continue;  // margin refinement hit its cap: too close to the circle
    }
  }
}

BlockOperator OpGenerator::fredholm_operator(long max_blocks) {
  BlockOperator op;
  long blocks = int_in(1, max_blocks);
  for (long b = 0; b < blocks; ++b) {
    if (int_in(0, 2) == 0) {
      long n = int_in(1, 3);
      op.blocks.push_back(FiniteBlock{matrix(n, n)});
    } else {
      ToeplitzBlock tb{stable_symbol(), std::nullopt};
      if (coin()) {
        long p = int_in(1, 3);
        tb.patch = matrix(p, p);
      }
      op.blocks.push_back(std::move(tb));
    }
  }
  return op;
}

BlockOperator OpGenerator::compact_like(const BlockOperator& model) {
  BlockOperator out;
  for (const Block& blk : model.blocks) {
    if (const auto* fb = std::get_if<FiniteBlock>(&blk)) {
      out.blocks.push_back(FiniteBlock{matrix(fb->matrix.rows(), fb->matrix.cols())});
    } else {
      ToeplitzBlock tb{LaurentPoly(), std::nullopt};
      long p = int_in(1, 3);
      ExactMatrix m = matrix(p, p);
      bool nonzero = false;
      for (long r = 0; r < m.rows() && !nonzero; ++r)
        for (long c = 0; c < m.cols() && !nonzero; ++c) nonzero = !m(r, c).is_zero();
      if (nonzero) tb.patch = std::move(m);
      out.blocks.push_back(std::move(tb));
    }
  }
  return out;
}

BlockOperator OpGenerator::perturbation_within(const BlockOperator& model, const Rational& bound) {
  if (bound <= 0) fail("domain_error", "perturbation bound must be positive");
  BlockOperator p = compact_like(model);
  /* Mix in small symbol motion on Toeplitz blocks so perturbations are
   * not purely finite rank. */
  for (Block& blk : p.blocks) {
    if (auto* tb = std::get_if<ToeplitzBlock>(&blk)) {
      long terms = int_in(0, 2);
      for (long t = 0; t < terms; ++t) tb->symbol.add_to(int_in(-2, 2), gaussian(1, 4));
    }
  }
  Rational nb = norm_bound(p);
  if (nb == 0) return p;
  Rational factor = bound / (2 * nb);
  return affine(p, GaussianRational(factor), GaussianRational());
}

ParamComplex OpGenerator::complex(long max_vertices) {
  ParamComplex c;
  long n = int_in(1, max_vertices);
  for (long v = 0; v < n; ++v) c.vertices.push_back("v" + std::to_string(v));
  for (long a = 0; a < n; ++a)
    for (long b = a + 1; b < n; ++b)
      if (int_in(0, 2) == 0) c.edges.emplace_back(c.vertices[a], c.vertices[b]);
  return normalized_complex(c);
}

NormalDiagonalOperator OpGenerator::normal_diagonal(long max_values) {
  /* Values drawn from a small pool so family-level coincidences (shared
   * tails, exceptional-vs-tail collisions) actually occur. */
  static const long pool_num = 2, pool_den = 1;
  NormalDiagonalOperator op;
  long tails = int_in(1, max_values);
  for (long t = 0; t < tails; ++t) op.tails.insert(gaussian(pool_num, pool_den));
  long exc = int_in(0, max_values);
  for (long e = 0; e < exc; ++e) {
    GaussianRational v = gaussian(pool_num, pool_den);
    op.exceptional[v] += int_in(1, 3);
  }
  return op;
}

NormalFamily OpGenerator::normal_family(long max_vertices) {
  NormalFamily f;
  f.complex = complex(max_vertices);
  for (const std::string& v : f.complex.vertices) f.assignment[v] = normal_diagonal();
  return f;
}

OperatorFamily OpGenerator::fredholm_family(long max_vertices) {
  OperatorFamily f;
  f.complex = complex(max_vertices);
  auto components = connected_components(f.complex);
  for (const auto& [rep, members] : components) {
    /* One shared symbol per component keeps the index constant; per
     * vertex the operator varies by a compact patch. */
    LaurentPoly sym = stable_symbol();
    for (const std::string& v : members) {
      ToeplitzBlock tb{sym, std::nullopt};
      if (coin()) {
        long p = int_in(1, 2);
        ExactMatrix m = matrix(p, p);
        bool nonzero = false;
        for (long r = 0; r < m.rows() && !nonzero; ++r)
          for (long c = 0; c < m.cols() && !nonzero; ++c) nonzero = !m(r, c).is_zero();
        if (nonzero) tb.patch = m;
      }
      BlockOperator op;
      op.blocks.push_back(std::move(tb));
      f.assignment[v] = std::move(op);
    }
  }
  return f;
}

}  // namespace bfred
