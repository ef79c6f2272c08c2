#include "bfred/pathconnect.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

#include "bfred/errors.hpp"
#include "bfred/fredholm.hpp"
#include "bfred/rootcount.hpp"

namespace bfred {

void validate_path(const OperatorPath& p) {
  if (p.grid.size() != p.samples.size() || p.grid.size() < 2)
    fail("malformed_path", "path needs matching grid and samples, at least two points");
  if (p.grid.front() != 0 || p.grid.back() != 1)
    fail("malformed_path", "path grid must run from 0 to 1");
  for (std::size_t i = 1; i < p.grid.size(); ++i)
    if (!(p.grid[i - 1] < p.grid[i])) fail("malformed_path", "path grid must strictly increase");
  for (const BlockOperator& op : p.samples) validate_operator(op);
  for (std::size_t i = 1; i < p.samples.size(); ++i)
    if (!same_signature(p.samples[0], p.samples[i]))
      fail("malformed_path", "path samples must share one block signature");
}

const char* to_string(SampleStatus s) {
  switch (s) {
    case SampleStatus::fredholm:
      return "fredholm";
    case SampleStatus::bfredholm:
      return "bfredholm";
    case SampleStatus::indeterminate:
      break;
  }
  return "indeterminate";
}

PathReport verify_path(const OperatorPath& p) {
  validate_path(p);
  PathReport rep;
  rep.all_bfredholm = true;
  rep.all_fredholm = true;
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    PathPoint pt;
    pt.t = p.grid[i];
    FredholmVerdict fv = fredholm_verdict(p.samples[i]);
    if (fv.is_fredholm) {
      pt.status = SampleStatus::fredholm;
      pt.index = fv.index;
    } else {
      BFredholmVerdict bv = bclassify(p.samples[i]);
      if (bv.status == BStatus::bfredholm) {
        pt.status = SampleStatus::bfredholm;
        pt.index = bv.index;
      } else {
        pt.status = SampleStatus::indeterminate;
      }
    }
    if (pt.status != SampleStatus::fredholm) rep.all_fredholm = false;
    if (pt.status == SampleStatus::indeterminate) rep.all_bfredholm = false;
    rep.profile.push_back(std::move(pt));
  }
  return rep;
}

PathWithReport tbp_demo(long k) {
  if (k < 1) fail("malformed_path", "demo path needs at least one step");
  ExactMatrix one(1, 1);
  one(0, 0) = GaussianRational(1);
  PathWithReport out;
  for (long j = 0; j <= k; ++j) {
    Rational t(j, k);
    t.canonicalize();
    BlockOperator op;
    op.blocks.push_back(FiniteBlock{one});
    op.blocks.push_back(
        ToeplitzBlock{LaurentPoly::monomial(-1, GaussianRational(t)), std::nullopt});
    out.path.grid.push_back(std::move(t));
    out.path.samples.push_back(std::move(op));
  }
  out.report = verify_path(out.path);
  return out;
}

namespace {

using Cplx = std::complex<double>;

Cplx to_cplx(const GaussianRational& v) { return {v.re().get_d(), v.im().get_d()}; }

std::vector<Cplx> poly_from_roots(const std::vector<Cplx>& roots, Cplx lead) {
  std::vector<Cplx> c{lead};
  for (const Cplx& r : roots) {
    std::vector<Cplx> next(c.size() + 1, Cplx(0, 0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * r;
    }
    c = std::move(next);
  }
  return c;  // c[k] multiplies z^k
}

std::vector<Cplx> roots_of(const UniPoly& p) {
  long n = p.degree();
  if (n <= 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  Cplx lead = to_cplx(p.lead());
  for (long r = 1; r < n; ++r) companion(r, r - 1) = 1.0;
  for (long r = 0; r < n; ++r) companion(r, n - 1) = -to_cplx(p.coeff(r)) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Cplx> out(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

struct SymbolFactors {
  long lo = 0;
  std::vector<Cplx> inside, outside;
  Cplx scale{1.0, 0.0};  // lead * prod(-outside): coefficient of the canonical z^w form
};

SymbolFactors factor_symbol(const LaurentPoly& f) {
  SymbolFactors out;
  out.lo = f.lo();
  UniPoly p = UniPoly::from_laurent_shifted(f);
  out.scale = to_cplx(p.lead());
  for (const Cplx& r : roots_of(p)) {
    if (std::abs(r) < 1.0) {
      out.inside.push_back(r);
    } else {
      out.outside.push_back(r);
      out.scale *= -r;
    }
  }
  return out;
}

/* Canonicalization stage of one symbol, u in [0,1] split into two
 * halves: first the inside roots shrink radially to 0, then the outside
 * roots recede (their reciprocals shrink to 0).  u = 1 lands on
 * scale * z^{lo + #inside} = scale * z^w. */
std::vector<Cplx> stage_coeffs(const SymbolFactors& sf, double u, long& lo_out) {
  double shrink_in = std::min(1.0, 2.0 * u);
  double shrink_out = std::max(0.0, 2.0 * u - 1.0);
  std::vector<Cplx> roots;
  for (const Cplx& r : sf.inside) roots.push_back(r * (1.0 - shrink_in));
  std::vector<Cplx> c = poly_from_roots(roots, sf.scale);
  /* Outside factors in the form (1 - z/rho), receding as rho/(1-s). */
  for (const Cplx& rho : sf.outside) {
    Cplx inv = (1.0 - shrink_out) / rho;
    std::vector<Cplx> next(c.size() + 1, Cplx(0, 0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= c[i] * inv;
    }
    c = std::move(next);
  }
  lo_out = sf.lo;
  return c;
}

GaussianRational snap(const Cplx& v, long bits) {
  mpz_class den = mpz_class(1) << static_cast<unsigned long>(bits);
  double scale = std::ldexp(1.0, static_cast<int>(bits));
  mpz_class re(std::nearbyint(v.real() * scale));
  mpz_class im(std::nearbyint(v.imag() * scale));
  Rational qre(re, den), qim(im, den);
  qre.canonicalize();
  qim.canonicalize();
  return {qre, qim};
}

LaurentPoly snap_symbol(const std::vector<Cplx>& coeffs, long lo, long bits) {
  LaurentPoly out;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    out.set(lo + static_cast<long>(k), snap(coeffs[k], bits));
  return out;
}

bool certified(const LaurentPoly& h, long w) {
  if (h.is_zero() || symbol_vanishes_on_circle(h)) return false;
  return winding(h) == w;
}

}  // namespace

std::vector<LaurentPoly> root_radial_homotopy(const LaurentPoly& f, const LaurentPoly& g,
                                              long k) {
  if (f.is_zero() || g.is_zero() || symbol_vanishes_on_circle(f) ||
      symbol_vanishes_on_circle(g))
    fail("winding_mismatch", "both symbols must be nonzero and circle-nonvanishing");
  long w = winding(f);
  if (winding(g) != w) fail("winding_mismatch", "symbols have different winding numbers");
  std::vector<LaurentPoly> chain;
  chain.reserve(static_cast<std::size_t>(k) + 1);
  if (f == g) {
    for (long j = 0; j <= k; ++j) chain.push_back(f);
    return chain;
  }

  SymbolFactors sf = factor_symbol(f), sg = factor_symbol(g);
  double mod_f = std::abs(sf.scale), mod_g = std::abs(sg.scale);
  double arg_f = std::arg(sf.scale), arg_g = std::arg(sg.scale);
  double darg = arg_g - arg_f;
  while (darg > M_PI) darg -= 2 * M_PI;
  while (darg <= -M_PI) darg += 2 * M_PI;

  for (long j = 0; j <= k; ++j) {
    if (j == 0) {
      chain.push_back(f);
      continue;
    }
    if (j == k) {
      chain.push_back(g);
      continue;
    }
    double s = static_cast<double>(j) / static_cast<double>(k);
    std::vector<Cplx> coeffs;
    long lo = 0;
    if (s <= 1.0 / 3.0) {
      coeffs = stage_coeffs(sf, 3.0 * s, lo);
    } else if (s < 2.0 / 3.0) {
      /* Leading coefficient travels a zero-avoiding arc between the two
       * canonical monomials: geometric in modulus, shortest in angle. */
      double u = 3.0 * s - 1.0;
      double mod = std::pow(mod_f, 1.0 - u) * std::pow(mod_g, u);
      double ang = arg_f + u * darg;
      coeffs = {std::polar(mod, ang)};
      lo = w;
    } else {
      coeffs = stage_coeffs(sg, 3.0 * (1.0 - s), lo);
    }
    bool done = false;
    for (long bits = 24; bits <= 48; bits += 8) {
      LaurentPoly h = snap_symbol(coeffs, lo, bits);
      if (certified(h, w)) {
        chain.push_back(std::move(h));
        done = true;
        break;
      }
    }
    if (!done)
      fail("snap_certification_failed",
           "no certified snap at t = " + std::to_string(s));
  }
  return chain;
}

namespace {

/* Patch scaled by an exact rational factor; nullopt when it vanishes. */
std::optional<ExactMatrix> faded_patch(const std::optional<ExactMatrix>& patch,
                                       const Rational& factor) {
  if (!patch || factor == 0) return std::nullopt;
  ExactMatrix out = *patch;
  GaussianRational f{factor, Rational(0)};
  for (long r = 0; r < out.rows(); ++r)
    for (long c = 0; c < out.cols(); ++c) out(r, c) *= f;
  return out;
}

ExactMatrix lerp_matrix(const ExactMatrix& a, const ExactMatrix& b, const Rational& u) {
  ExactMatrix out = a;
  GaussianRational gu{u, Rational(0)};
  for (long r = 0; r < out.rows(); ++r)
    for (long c = 0; c < out.cols(); ++c)
      out(r, c) = a(r, c) * (GaussianRational(1) - gu) + b(r, c) * gu;
  return out;
}

LaurentPoly scaled_symbol(const LaurentPoly& f, const Rational& u) {
  return f.scaled(GaussianRational{u, Rational(0)});
}

struct MiddlePlan {
  /* Per Toeplitz block: the certified symbol chain used in
   * fredholm_preserving mode (empty in bfredholm mode). */
  std::vector<std::vector<LaurentPoly>> symbol_chains;
};

/* The middle of the path crosses four sub-segments: source patches fade
 * out, symbols travel (through zero or by root motion), target patches
 * fade in.  Finite blocks interpolate linearly over the symbol leg. */
BlockOperator middle_sample(const BlockOperator& s_shift, const BlockOperator& t_shift,
                            const MiddlePlan& plan, long seg, long j, long k) {
  Rational u(j, k);
  u.canonicalize();
  BlockOperator out;
  for (std::size_t b = 0; b < s_shift.blocks.size(); ++b) {
    if (const auto* fs = std::get_if<FiniteBlock>(&s_shift.blocks[b])) {
      const auto& ft = std::get<FiniteBlock>(t_shift.blocks[b]);
      Rational v = seg == 1 ? (u / 2) : seg == 2 ? (1 + u) / 2 : (seg == 0 ? Rational(0) : Rational(1));
      out.blocks.push_back(FiniteBlock{lerp_matrix(fs->matrix, ft.matrix, v)});
      continue;
    }
    const auto& ts = std::get<ToeplitzBlock>(s_shift.blocks[b]);
    const auto& tt = std::get<ToeplitzBlock>(t_shift.blocks[b]);
    ToeplitzBlock blk;
    switch (seg) {
      case 0:  // source patch fades, symbol stays
        blk.symbol = ts.symbol;
        blk.patch = faded_patch(ts.patch, 1 - u);
        break;
      case 1:  // symbol leg, first half
      case 2:  // symbol leg, second half
        if (!plan.symbol_chains.empty()) {
          const auto& chain = plan.symbol_chains[b];
          long pos = seg == 1 ? j : k + j;
          blk.symbol = chain[static_cast<std::size_t>(pos)];
        } else {
          blk.symbol = seg == 1 ? scaled_symbol(ts.symbol, 1 - u) : scaled_symbol(tt.symbol, u);
        }
        break;
      default:  // target patch fades in
        blk.symbol = tt.symbol;
        blk.patch = faded_patch(tt.patch, u);
        break;
    }
    out.blocks.push_back(std::move(blk));
  }
  return out;
}

bool sample_certified(const BlockOperator& op, ConnectMode mode, long want_index) {
  if (mode == ConnectMode::fredholm_preserving) {
    FredholmVerdict fv = fredholm_verdict(op);
    return fv.is_fredholm && *fv.index == want_index;
  }
  return bclassify(op).status == BStatus::bfredholm;
}

std::vector<GaussianRational> lambda_candidates() {
  std::vector<GaussianRational> out;
  const GaussianRational dirs[] = {GaussianRational(1), {Rational(0), Rational(1)},
                                   GaussianRational(-1), {Rational(0), Rational(-1)},
                                   {Rational(3, 5), Rational(4, 5)}};
  Rational scale(1, 2);
  for (int k = 1; k <= 32; ++k) {
    for (const GaussianRational& d : dirs)
      out.push_back(d * GaussianRational{scale, Rational(0)});
    scale /= 2;
  }
  return out;
}

}  // namespace

OperatorPath connect_equal_index(const BlockOperator& s, const BlockOperator& t, long k,
                                 ConnectMode mode) {
  if (k < 1) fail("malformed_path", "need at least one sample per segment");
  if (!same_signature(s, t))
    fail("shape_mismatch", "endpoints must share a block signature (pad with identity blocks)");
  BFredholmVerdict vs = bclassify(s), vt = bclassify(t);
  if (vs.status != BStatus::bfredholm || vt.status != BStatus::bfredholm)
    fail("certification_failed", "endpoints must classify as B-Fredholm");
  if (*vs.index != *vt.index)
    fail("index_mismatch", "endpoints have different indices");
  long n = *vs.index;

  if (mode == ConnectMode::fredholm_preserving) {
    FredholmVerdict fs = fredholm_verdict(s), ft = fredholm_verdict(t);
    if (!fs.is_fredholm || !ft.is_fredholm)
      fail("fredholm_path_unsupported",
           "an all-Fredholm path cannot pass through a non-Fredholm endpoint");
  }

  for (const GaussianRational& lambda : lambda_candidates()) {
    BlockOperator s_shift = affine(s, GaussianRational(1), lambda);
    BlockOperator t_shift = affine(t, GaussianRational(1), lambda);
    FredholmVerdict fvs = fredholm_verdict(s_shift);
    FredholmVerdict fvt = fredholm_verdict(t_shift);
    if (!fvs.is_fredholm || !fvt.is_fredholm || *fvs.index != n || *fvt.index != n) continue;

    MiddlePlan plan;
    if (mode == ConnectMode::fredholm_preserving) {
      /* Per-block winding agreement decides whether a block-preserving
       * Fredholm path exists at all; winding is invariant along
       * circle-nonvanishing homotopies. */
      bool supported = true;
      std::vector<std::vector<LaurentPoly>> chains;
      for (std::size_t b = 0; b < s_shift.blocks.size() && supported; ++b) {
        const auto* ts = std::get_if<ToeplitzBlock>(&s_shift.blocks[b]);
        if (!ts) continue;
        const auto& tt = std::get<ToeplitzBlock>(t_shift.blocks[b]);
        if (winding(ts->symbol) != winding(tt.symbol)) supported = false;
      }
      if (!supported)
        fail("fredholm_path_unsupported",
             "per-block windings differ; winding is constant along circle-nonvanishing "
             "homotopies, so no block-preserving Fredholm path exists");
      for (std::size_t b = 0; b < s_shift.blocks.size(); ++b) {
        const auto* ts = std::get_if<ToeplitzBlock>(&s_shift.blocks[b]);
        if (!ts) {
          chains.emplace_back();
          continue;
        }
        const auto& tt = std::get<ToeplitzBlock>(t_shift.blocks[b]);
        chains.push_back(root_radial_homotopy(ts->symbol, tt.symbol, 2 * k));
      }
      plan.symbol_chains = std::move(chains);
    }

    /* Assemble the six segments; boundary samples are shared. */
    OperatorPath path;
    bool ok = true;
    auto push = [&](long seg, long j, BlockOperator op) {
      Rational t_val(seg * k + j, 6 * k);
      t_val.canonicalize();
      if (!sample_certified(op, mode, n)) {
        ok = false;
        return;
      }
      path.grid.push_back(std::move(t_val));
      path.samples.push_back(std::move(op));
    };

    for (long j = 0; j < k && ok; ++j) {
      Rational u(j, k);
      u.canonicalize();
      push(0, j, j == 0 ? s : affine(s, GaussianRational(1), lambda * GaussianRational{u, Rational(0)}));
    }
    for (long seg = 0; seg < 4 && ok; ++seg)
      for (long j = 0; j < k && ok; ++j)
        push(seg + 1, j, middle_sample(s_shift, t_shift, plan, seg, j, k));
    for (long j = 0; j <= k && ok; ++j) {
      Rational u(k - j, k);
      u.canonicalize();
      push(5, j, j == k ? t : affine(t, GaussianRational(1), lambda * GaussianRational{u, Rational(0)}));
    }
    if (ok) {
      validate_path(path);
      return path;
    }
  }
  fail("certification_failed", "no admissible lambda certified every sample");
}

}  // namespace bfred
