#pragma once

#include <map>
#include <optional>
#include <set>

#include "bfred/family.hpp"
#include "bfred/matrix.hpp"
#include "bfred/operator.hpp"

namespace bfred {

/* Diagonal-type normal operator: finitely many exceptional eigenvalues
 * with finite multiplicities over a nonempty set of tail values, each of
 * infinite multiplicity.  The whole spectral picture is explicit, so
 * every set in the Weyl circle of ideas is exactly computable. */
struct NormalDiagonalOperator {
  std::map<GaussianRational, long> exceptional;  // value -> multiplicity >= 1
  std::set<GaussianRational> tails;              // nonempty
};

void validate_normal(const NormalDiagonalOperator& op);

struct SpectralReport {
  std::set<GaussianRational> spectrum;
  std::set<GaussianRational> weyl_spectrum;
  std::set<GaussianRational> e0;   // isolated eigenvalues of finite multiplicity
  std::set<GaussianRational> pi0;  // poles of the resolvent, finite rank
};

/* spectrum = exceptional union tails; a point is in the Weyl spectrum
 * exactly when its total multiplicity is infinite (it is a tail value);
 * e0 = pi0 = exceptional values that are not tails. */
SpectralReport spectral_report(const NormalDiagonalOperator& op);

/* Finite matrices enter through their explicit spectrum: the input must
 * be triangular so the diagonal is the eigenvalue list.  Weyl spectrum
 * is empty in finite dimension; e0 = spectrum; pi0 from ascent/descent
 * data.  Throws non_representable_spectrum. */
SpectralReport spectral_report_finite(const ExactMatrix& triangular);

struct NormalFamily {
  ParamComplex complex;
  std::map<std::string, NormalDiagonalOperator> assignment;
};

void validate_normal_family(const NormalFamily& f);

/* Family-level sets: sigma and the Weyl spectrum are unions over the
 * vertices; lambda lands in e0 when the witness set A = {x : lambda in
 * e0(T_x)} is nonempty and lambda avoids sigma(T_x) for every x outside
 * A; pi0 analogously. */
SpectralReport family_spectral_report(const NormalFamily& f);

struct WeylBrowderVerdict {
  bool weyl_holds = false;
  bool browder_holds = false;
  std::optional<GaussianRational> witness;  // a violating point when either fails
};

/* Weyl: weyl_spectrum = spectrum minus e0; Browder: same with pi0. */
WeylBrowderVerdict check_weyl_browder(const NormalFamily& f);

/* The block-operator realization diag(exceptional) + tail shifts:
 * one finite diagonal block plus one constant-symbol Toeplitz block per
 * tail value.  Ties the spectral sets to the Fredholm machinery. */
BlockOperator to_block_operator(const NormalDiagonalOperator& op);

}  // namespace bfred
