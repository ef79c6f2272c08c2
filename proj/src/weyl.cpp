#include "bfred/weyl.hpp"

#include <algorithm>

#include "bfred/errors.hpp"

namespace bfred {

void validate_normal(const NormalDiagonalOperator& op) {
  if (op.tails.empty())
    fail("malformed_operator", "normal diagonal operator needs at least one tail value");
  for (const auto& [value, mult] : op.exceptional)
    if (mult < 1) fail("malformed_operator", "exceptional multiplicity must be positive");
}

SpectralReport spectral_report(const NormalDiagonalOperator& op) {
  validate_normal(op);
  SpectralReport rep;
  for (const GaussianRational& v : op.tails) rep.spectrum.insert(v);
  for (const auto& [value, mult] : op.exceptional) rep.spectrum.insert(value);
  rep.weyl_spectrum = op.tails;
  for (const auto& [value, mult] : op.exceptional)
    if (!op.tails.count(value)) rep.e0.insert(value);
  /* Normal plus isolated finite-multiplicity makes every e0 point a pole
   * of the resolvent with ascent = descent = 1. */
  rep.pi0 = rep.e0;
  return rep;
}

SpectralReport spectral_report_finite(const ExactMatrix& m) {
  if (m.rows() != m.cols())
    fail("non_representable_spectrum", "finite spectral input must be square");
  bool upper = true, lower = true;
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) {
      if (r > c && !m(r, c).is_zero()) upper = false;
      if (r < c && !m(r, c).is_zero()) lower = false;
    }
  if (!upper && !lower)
    fail("non_representable_spectrum",
         "finite spectral input must be triangular with explicit rational eigenvalues");
  SpectralReport rep;
  for (long r = 0; r < m.rows(); ++r) rep.spectrum.insert(m(r, r));
  rep.e0 = rep.spectrum;
  rep.pi0 = rep.spectrum;  // in finite dimension every eigenvalue is a pole
  return rep;
}

void validate_normal_family(const NormalFamily& f) {
  ParamComplex n = normalized_complex(f.complex);
  if (f.assignment.size() != n.vertices.size())
    fail("malformed_family", "assignment does not match the vertex set");
  for (const std::string& v : n.vertices) {
    auto it = f.assignment.find(v);
    if (it == f.assignment.end()) fail("malformed_family", "vertex '" + v + "' has no operator");
    validate_normal(it->second);
  }
}

SpectralReport family_spectral_report(const NormalFamily& f) {
  validate_normal_family(f);
  std::map<std::string, SpectralReport> per_vertex;
  for (const auto& [v, op] : f.assignment) per_vertex[v] = spectral_report(op);

  SpectralReport rep;
  for (const auto& [v, r] : per_vertex) {
    rep.spectrum.insert(r.spectrum.begin(), r.spectrum.end());
    rep.weyl_spectrum.insert(r.weyl_spectrum.begin(), r.weyl_spectrum.end());
  }
  for (const GaussianRational& lambda : rep.spectrum) {
    bool e0_witness = false, e0_clean = true;
    bool pi0_witness = false, pi0_clean = true;
    for (const auto& [v, r] : per_vertex) {
      bool in_sigma = r.spectrum.count(lambda) > 0;
      if (r.e0.count(lambda))
        e0_witness = true;
      else if (in_sigma)
        e0_clean = false;
      if (r.pi0.count(lambda))
        pi0_witness = true;
      else if (in_sigma)
        pi0_clean = false;
    }
    if (e0_witness && e0_clean) rep.e0.insert(lambda);
    if (pi0_witness && pi0_clean) rep.pi0.insert(lambda);
  }
  return rep;
}

WeylBrowderVerdict check_weyl_browder(const NormalFamily& f) {
  SpectralReport rep = family_spectral_report(f);
  std::set<GaussianRational> weyl_expect, browder_expect;
  std::set_difference(rep.spectrum.begin(), rep.spectrum.end(), rep.e0.begin(), rep.e0.end(),
                      std::inserter(weyl_expect, weyl_expect.end()));
  std::set_difference(rep.spectrum.begin(), rep.spectrum.end(), rep.pi0.begin(), rep.pi0.end(),
                      std::inserter(browder_expect, browder_expect.end()));
  WeylBrowderVerdict v;
  v.weyl_holds = rep.weyl_spectrum == weyl_expect;
  v.browder_holds = rep.weyl_spectrum == browder_expect;
  if (!v.weyl_holds || !v.browder_holds) {
    const auto& expect = v.weyl_holds ? browder_expect : weyl_expect;
    std::set<GaussianRational> diff;
    std::set_symmetric_difference(rep.weyl_spectrum.begin(), rep.weyl_spectrum.end(),
                                  expect.begin(), expect.end(),
                                  std::inserter(diff, diff.end()));
    if (!diff.empty()) v.witness = *diff.begin();
  }
  return v;
}

BlockOperator to_block_operator(const NormalDiagonalOperator& op) {
  validate_normal(op);
  BlockOperator out;
  long total = 0;
  for (const auto& [value, mult] : op.exceptional) total += mult;
  if (total > 0) {
    ExactMatrix diag = ExactMatrix::Zero(total, total);
    long at = 0;
    for (const auto& [value, mult] : op.exceptional)
      for (long k = 0; k < mult; ++k, ++at) diag(at, at) = value;
    out.blocks.push_back(FiniteBlock{std::move(diag)});
  }
  for (const GaussianRational& tail : op.tails)
    out.blocks.push_back(ToeplitzBlock{LaurentPoly::constant(tail), std::nullopt});
  return out;
}

}  // namespace bfred
