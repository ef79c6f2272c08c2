#include "bfred/family.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "bfred/errors.hpp"
#include "bfred/random_ops.hpp"

namespace bfred {

ParamComplex normalized_complex(const ParamComplex& c) {
  ParamComplex out;
  std::set<std::string> seen;
  for (const std::string& v : c.vertices) {
    if (v.empty()) fail("malformed_complex", "empty vertex identifier");
    if (!seen.insert(v).second) fail("malformed_complex", "duplicate vertex '" + v + "'");
  }
  out.vertices = c.vertices;
  std::sort(out.vertices.begin(), out.vertices.end());
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& [a, b] : c.edges) {
    if (a == b) fail("malformed_complex", "self-loop at '" + a + "'");
    if (!seen.count(a) || !seen.count(b))
      fail("malformed_complex", "edge endpoint not declared: (" + a + ", " + b + ")");
    edges.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  }
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

bool complex_equal(const ParamComplex& a, const ParamComplex& b) {
  ParamComplex na = normalized_complex(a), nb = normalized_complex(b);
  return na.vertices == nb.vertices && na.edges == nb.edges;
}

namespace {

struct UnionFind {
  std::map<std::string, std::string> parent;

  std::string find(const std::string& v) {
    std::string root = v;
    while (parent.at(root) != root) root = parent.at(root);
    std::string cur = v;
    while (cur != root) {
      std::string next = parent.at(cur);
      parent[cur] = root;
      cur = next;
    }
    return root;
  }

  void unite(const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return;
    /* Least identifier wins so representatives are reproducible. */
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
  }
};

}  // namespace

std::map<std::string, std::vector<std::string>> connected_components(const ParamComplex& c) {
  ParamComplex n = normalized_complex(c);
  UnionFind uf;
  for (const std::string& v : n.vertices) uf.parent[v] = v;
  for (const auto& [a, b] : n.edges) uf.unite(a, b);
  std::map<std::string, std::vector<std::string>> out;
  for (const std::string& v : n.vertices) out[uf.find(v)].push_back(v);
  for (auto& [rep, members] : out) std::sort(members.begin(), members.end());
  return out;
}

void validate_family(const OperatorFamily& f) {
  ParamComplex n = normalized_complex(f.complex);
  if (f.assignment.size() != n.vertices.size())
    fail("malformed_family", "assignment does not match the vertex set");
  const BlockOperator* first = nullptr;
  for (const std::string& v : n.vertices) {
    auto it = f.assignment.find(v);
    if (it == f.assignment.end()) fail("malformed_family", "vertex '" + v + "' has no operator");
    validate_operator(it->second);
    if (!first)
      first = &it->second;
    else if (!same_signature(*first, it->second))
      fail("shape_mismatch", "operator at '" + v + "' breaks the family signature");
  }
  std::set<std::pair<std::string, std::string>> edges(n.edges.begin(), n.edges.end());
  for (const auto& [edge, bound] : f.edge_bounds) {
    auto key = edge.first < edge.second ? edge : std::make_pair(edge.second, edge.first);
    if (!edges.count(key))
      fail("malformed_family", "edge bound on undeclared edge (" + edge.first + ", " + edge.second + ")");
    if (bound < 0) fail("malformed_family", "negative edge bound");
    const BlockOperator& a = f.assignment.at(key.first);
    const BlockOperator& b = f.assignment.at(key.second);
    BlockOperator diff = combine(a, affine(b, GaussianRational(-1), GaussianRational()),
                                 CombineKind::add);
    if (norm_bound(diff) > bound)
      fail("edge_bound_violated", "norm bound exceeded on edge (" + key.first + ", " +
                                      key.second + ")");
  }
}

IndexVector family_index(const OperatorFamily& f) {
  validate_family(f);
  std::map<std::string, long> per_vertex;
  for (const auto& [v, op] : f.assignment) {
    FredholmVerdict verdict = fredholm_verdict(op);
    if (!verdict.is_fredholm)
      fail("non_fredholm_at", "operator at '" + v + "' is not Fredholm (" +
                                  to_string(verdict.reason) + ")");
    per_vertex[v] = *verdict.index;
  }
  IndexVector out;
  auto components = connected_components(f.complex);
  ParamComplex n = normalized_complex(f.complex);
  for (const auto& [rep, members] : components) {
    long idx = per_vertex.at(rep);
    for (const std::string& v : members) {
      if (per_vertex.at(v) == idx) continue;
      /* Locate a witnessing edge for the report; some edge in the
       * component must straddle the disagreement. */
      for (const auto& [a, b] : n.edges) {
        if (per_vertex.at(a) != per_vertex.at(b))
          fail("index_mismatch_within_component",
               "index jumps across edge (" + a + ", " + b + ")");
      }
      fail("index_mismatch_within_component",
           "component '" + rep + "' mixes indices at '" + v + "'");
    }
    out.entries[rep] = idx;
  }
  return out;
}

std::string layer_vertex(const std::string& base, long k) {
  return base + "@" + std::to_string(k);
}

ParamComplex product_complex(const ParamComplex& x, long layers) {
  ParamComplex n = normalized_complex(x);
  ParamComplex out;
  for (long k = 0; k <= layers; ++k)
    for (const std::string& v : n.vertices) out.vertices.push_back(layer_vertex(v, k));
  for (long k = 0; k <= layers; ++k)
    for (const auto& [a, b] : n.edges)
      out.edges.emplace_back(layer_vertex(a, k), layer_vertex(b, k));
  for (long k = 0; k < layers; ++k)
    for (const std::string& v : n.vertices)
      out.edges.emplace_back(layer_vertex(v, k), layer_vertex(v, k + 1));
  return normalized_complex(out);
}

namespace {

/* Recover the layer count of a product complex from vertex names. */
long infer_layers(const ParamComplex& h) {
  long best = -1;
  for (const std::string& v : h.vertices) {
    std::size_t at = v.rfind('@');
    if (at == std::string::npos || at + 1 == v.size()) return -1;
    long k = 0;
    for (std::size_t i = at + 1; i < v.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) return -1;
      k = k * 10 + (v[i] - '0');
    }
    best = std::max(best, k);
  }
  return best;
}

}  // namespace

HomotopyReport homotopy_check(const OperatorFamily& h, const OperatorFamily& s,
                              const OperatorFamily& t) {
  validate_family(s);
  validate_family(t);
  validate_family(h);
  if (!complex_equal(s.complex, t.complex))
    fail("endpoint_mismatch", "source and target families live over different complexes");
  long layers = infer_layers(h.complex);
  if (layers < 0 || !complex_equal(h.complex, product_complex(s.complex, layers)))
    fail("endpoint_mismatch", "homotopy complex is not the expected layered product");

  ParamComplex base = normalized_complex(s.complex);
  for (const std::string& v : base.vertices) {
    if (!exact_equal(h.assignment.at(layer_vertex(v, 0)), s.assignment.at(v)))
      fail("endpoint_mismatch", "layer 0 differs from the source at '" + v + "'");
    if (!exact_equal(h.assignment.at(layer_vertex(v, layers)), t.assignment.at(v)))
      fail("endpoint_mismatch", "last layer differs from the target at '" + v + "'");
  }

  HomotopyReport rep;
  rep.layers = layers;
  for (long k = 0; k <= layers; ++k) {
    OperatorFamily slice;
    slice.complex = base;
    for (const std::string& v : base.vertices) {
      const BlockOperator& op = h.assignment.at(layer_vertex(v, k));
      FredholmVerdict verdict = fredholm_verdict(op);
      if (!verdict.is_fredholm)
        fail("non_fredholm_at", "sample at '" + layer_vertex(v, k) + "' is not Fredholm (" +
                                    to_string(verdict.reason) + ")");
      slice.assignment[v] = op;
    }
    rep.per_layer.push_back(family_index(slice));
  }
  for (long k = 1; k <= layers; ++k)
    if (rep.per_layer[static_cast<std::size_t>(k)].entries != rep.per_layer[0].entries)
      fail("index_changed_along_homotopy",
           "index vector changed at layer " + std::to_string(k));
  return rep;
}

OperatorFamily synthesize_family(const ParamComplex& c, const IndexVector& u) {
  auto components = connected_components(c);
  if (components.size() != u.entries.size())
    fail("component_mismatch", "index vector size differs from component count");
  for (const auto& [rep, members] : components)
    if (!u.entries.count(rep))
      fail("component_mismatch", "no index entry for component representative '" + rep + "'");
  OperatorFamily out;
  out.complex = normalized_complex(c);
  for (const auto& [rep, members] : components) {
    long n = u.entries.at(rep);
    BlockOperator op = toeplitz_operator(LaurentPoly::monomial(-n, GaussianRational(1)));
    for (const std::string& v : members) out.assignment[v] = op;
  }
  return out;
}

LocalConstancyReport local_constancy_check(const OperatorFamily& f, long trials,
                                           unsigned long seed) {
  IndexVector base = family_index(f);
  LocalConstancyReport rep;
  rep.margin = 0;
  bool first = true;
  for (const auto& [v, op] : f.assignment) {
    Rational m = fredholm_margin(op);
    if (first || m < rep.margin) rep.margin = m;
    first = false;
  }
  OpGenerator gen(seed);
  for (long trial = 0; trial < trials; ++trial) {
    OperatorFamily perturbed = f;
    for (auto& [v, op] : perturbed.assignment)
      op = combine(op, gen.perturbation_within(op, rep.margin), CombineKind::add);
    perturbed.edge_bounds.clear();  // declared bounds need not survive perturbation
    IndexVector got = family_index(perturbed);
    if (got.entries != base.entries) ++rep.failures;
    ++rep.trials;
  }
  return rep;
}

bool is_weyl_family(const OperatorFamily& f) {
  IndexVector v;
  try {
    v = family_index(f);
  } catch (const Error&) {
    return false;
  }
  for (const auto& [rep, idx] : v.entries)
    if (idx != 0) return false;
  return true;
}

}  // namespace bfred
