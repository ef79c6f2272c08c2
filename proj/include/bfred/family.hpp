#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfred/fredholm.hpp"
#include "bfred/operator.hpp"

namespace bfred {

/* Finite graph standing in for the parameter space: vertices are sample
 * points, edges declare which samples are joined by a continuous arc. */
struct ParamComplex {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

/* Normalizes (sorts endpoint pairs, collapses duplicate edges) and
 * validates: declared endpoints, no self-loops, no duplicate vertices.
 * Throws malformed_complex. */
ParamComplex normalized_complex(const ParamComplex& c);

bool complex_equal(const ParamComplex& a, const ParamComplex& b);

/* Component representative (least vertex identifier) -> sorted members. */
std::map<std::string, std::vector<std::string>> connected_components(const ParamComplex& c);

struct OperatorFamily {
  ParamComplex complex;
  std::map<std::string, BlockOperator> assignment;
  std::map<std::pair<std::string, std::string>, Rational> edge_bounds;
};

/* Structural validation: every vertex assigned, one shared signature,
 * edge_bounds keyed by declared edges and actually satisfied.
 * Throws malformed_family, shape_mismatch, edge_bound_violated. */
void validate_family(const OperatorFamily& f);

/* One index entry per connected component. */
struct IndexVector {
  std::map<std::string, long> entries;
};

/* Per-vertex Fredholm index, constant on every component by homotopy
 * invariance; violations mean the samples cannot come from a continuous
 * Fredholm family.  Throws non_fredholm_at, index_mismatch_within_component. */
IndexVector family_index(const OperatorFamily& f);

/* Product complex X x {0..layers}: vertices "<v>@<k>", layer-internal
 * copies of the edges of X plus the per-vertex time edges. */
ParamComplex product_complex(const ParamComplex& x, long layers);

std::string layer_vertex(const std::string& base, long k);

struct HomotopyReport {
  long layers = 0;
  std::vector<IndexVector> per_layer;
};

/* Checks h is a family over the product complex of S.complex with a path
 * of layers, endpoints equal S and T exactly, every sample Fredholm, and
 * the index vector constant in the time direction.  Throws
 * endpoint_mismatch, non_fredholm_at, index_changed_along_homotopy. */
HomotopyReport homotopy_check(const OperatorFamily& h, const OperatorFamily& s,
                              const OperatorFamily& t);

/* Constant family per component with Toeplitz symbol z^{-n_i}, so the
 * family index equals u.  Throws component_mismatch. */
OperatorFamily synthesize_family(const ParamComplex& c, const IndexVector& u);

struct LocalConstancyReport {
  Rational margin;
  long trials = 0;
  long failures = 0;
};

/* Perturbs every vertex by random same-signature operators of norm bound
 * strictly below the family's Fredholm margin and recomputes the index
 * vector; counts (expected zero) disagreements. */
LocalConstancyReport local_constancy_check(const OperatorFamily& f, long trials,
                                           unsigned long seed);

/* True iff the family index exists and vanishes on every component. */
bool is_weyl_family(const OperatorFamily& f);

}  // namespace bfred
