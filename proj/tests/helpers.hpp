#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include "bfred/gaussian.hpp"
#include "bfred/laurent.hpp"
#include "bfred/matrix.hpp"
#include "bfred/operator.hpp"
#include "bfred/poly.hpp"

namespace testutil {

using bfred::ExactMatrix;
using bfred::GaussianRational;
using bfred::LaurentPoly;
using bfred::Rational;

inline Rational rq(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline GaussianRational gq(long re, long im = 0) {
  return {Rational(re), Rational(im)};
}

inline LaurentPoly sym(std::initializer_list<std::pair<long, GaussianRational>> terms) {
  LaurentPoly f;
  for (const auto& [deg, coeff] : terms) f.set(deg, coeff);
  return f;
}

inline ExactMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  const long r = static_cast<long>(rows.size());
  const long c = r == 0 ? 0 : static_cast<long>(rows.begin()->size());
  ExactMatrix m(r, c);
  long i = 0;
  for (const auto& row : rows) {
    long j = 0;
    for (long v : row) m(i, j++) = gq(v);
    ++i;
  }
  return m;
}

inline bfred::BlockOperator toeplitz_patched(LaurentPoly symbol, ExactMatrix patch) {
  bfred::BlockOperator op;
  op.blocks.push_back(bfred::ToeplitzBlock{std::move(symbol), std::move(patch)});
  return op;
}

inline std::complex<double> to_cplx(const GaussianRational& v) {
  return {v.re().get_d(), v.im().get_d()};
}

inline std::complex<double> eval_cplx(const LaurentPoly& f, std::complex<double> z) {
  std::complex<double> out(0, 0);
  for (const auto& [deg, coeff] : f.terms()) out += to_cplx(coeff) * std::pow(z, deg);
  return out;
}

/* Argument-principle winding oracle: total argument increment of
 * f(e^{it}) over 4096 circle samples, divided by 2*pi.  Meaningful only
 * for symbols bounded away from zero on the circle, which the generator
 * guarantees. */
inline long winding_oracle(const LaurentPoly& f) {
  const int samples = 4096;
  double total = 0;
  std::complex<double> prev = eval_cplx(f, {1.0, 0.0});
  for (int i = 1; i <= samples; ++i) {
    double t = 2.0 * M_PI * i / samples;
    std::complex<double> cur = eval_cplx(f, {std::cos(t), std::sin(t)});
    total += std::arg(cur / prev);
    prev = cur;
  }
  return std::lround(total / (2.0 * M_PI));
}

/* Companion-matrix root oracle with moduli, for counting roots inside
 * the unit disk independently of the exact engine. */
inline std::vector<std::complex<double>> roots_oracle(const bfred::UniPoly& p) {
  long n = p.degree();
  if (n <= 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  std::complex<double> lead = to_cplx(p.lead());
  for (long r = 1; r < n; ++r) companion(r, r - 1) = 1.0;
  for (long r = 0; r < n; ++r) companion(r, n - 1) = -to_cplx(p.coeff(r)) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<std::complex<double>> out;
  for (long i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

/* Exact rank by exhaustive minor expansion: the largest k with a
 * nonsingular k x k submatrix, determinants by Laplace recursion.
 * Deliberately elimination-free so it cannot share a bug with the
 * library's row reduction.  Only sane for matrices up to ~8 columns. */
inline GaussianRational minor_det(const ExactMatrix& m, const std::vector<long>& rows,
                                  const std::vector<long>& cols) {
  const std::size_t n = rows.size();
  if (n == 1) return m(rows[0], cols[0]);
  GaussianRational det(0);
  GaussianRational sign(1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> sub_rows;
    for (std::size_t r = 1; r < n; ++r) sub_rows.push_back(rows[r]);
    std::vector<long> sub_cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != i) sub_cols.push_back(cols[c]);
    det = det + sign * m(rows[0], cols[i]) * minor_det(m, sub_rows, sub_cols);
    sign = GaussianRational(0) - sign;
  }
  return det;
}

inline bool has_nonzero_minor(const ExactMatrix& m, long k, std::vector<long>& rows,
                              std::vector<long>& cols, long row_from, long col_from) {
  if (static_cast<long>(rows.size()) < k) {
    for (long r = row_from; r <= m.rows() - (k - static_cast<long>(rows.size())); ++r) {
      rows.push_back(r);
      if (has_nonzero_minor(m, k, rows, cols, r + 1, col_from)) return true;
      rows.pop_back();
    }
    return false;
  }
  if (static_cast<long>(cols.size()) < k) {
    for (long c = col_from; c <= m.cols() - (k - static_cast<long>(cols.size())); ++c) {
      cols.push_back(c);
      if (has_nonzero_minor(m, k, rows, cols, row_from, c + 1)) return true;
      cols.pop_back();
    }
    return false;
  }
  return !minor_det(m, rows, cols).is_zero();
}

inline long rank_by_minors(const ExactMatrix& m) {
  long cap = std::min(m.rows(), m.cols());
  for (long k = cap; k >= 1; --k) {
    std::vector<long> rows, cols;
    if (has_nonzero_minor(m, k, rows, cols, 0, 0)) return k;
  }
  return 0;
}

/* dim(span A intersect span B) without elimination: the solution space of
 * Ax = By has dimension dim ker[A | -B]; quotienting the pairs that map
 * to zero leaves the intersection. */
inline long brute_intersection_dim(const std::vector<bfred::ExactVector>& a,
                                   const std::vector<bfred::ExactVector>& b) {
  const long n = a.empty() ? (b.empty() ? 0 : b[0].size()) : a[0].size();
  ExactMatrix joint(n, static_cast<long>(a.size() + b.size()));
  ExactMatrix ma(n, static_cast<long>(a.size()));
  ExactMatrix mb(n, static_cast<long>(b.size()));
  for (std::size_t j = 0; j < a.size(); ++j)
    for (long i = 0; i < n; ++i) {
      joint(i, static_cast<long>(j)) = a[j](i);
      ma(i, static_cast<long>(j)) = a[j](i);
    }
  for (std::size_t j = 0; j < b.size(); ++j)
    for (long i = 0; i < n; ++i) {
      joint(i, static_cast<long>(a.size() + j)) = GaussianRational(0) - b[j](i);
      mb(i, static_cast<long>(j)) = b[j](i);
    }
  long ker_joint = static_cast<long>(a.size() + b.size()) - rank_by_minors(joint);
  long ker_a = static_cast<long>(a.size()) - rank_by_minors(ma);
  long ker_b = static_cast<long>(b.size()) - rank_by_minors(mb);
  return ker_joint - ker_a - ker_b;
}

inline ExactMatrix matrix_power_ref(const ExactMatrix& m, long n) {
  ExactMatrix out = ExactMatrix::Identity(m.rows(), m.cols());
  for (long i = 0; i < n; ++i) out = (out * m).eval();
  return out;
}

}  // namespace testutil

/* Expects expr to throw bfred::Error with the given code.  Expanded
 * inside doctest test cases, so CHECK and FAIL resolve there. */
#define CHECK_FAILS(expr, expected_code)                \
  do {                                                  \
    try {                                               \
      (void)(expr);                                     \
      FAIL("expected an error from " #expr);            \
    } catch (const bfred::Error& e) {                   \
      CHECK(e.code() == (expected_code));               \
    }                                                   \
  } while (0)
