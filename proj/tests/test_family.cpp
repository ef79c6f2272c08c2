#include <map>
#include <set>
#include <string>
#include <vector>

#include "bfred/errors.hpp"
#include "bfred/family.hpp"
#include "bfred/random_ops.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bfred;
using namespace testutil;

namespace {

ParamComplex path3() {
  ParamComplex c;
  c.vertices = {"a", "b", "c"};
  c.edges = {{"a", "b"}, {"b", "c"}};
  return c;
}

OperatorFamily constant_family(const ParamComplex& c, const BlockOperator& op) {
  OperatorFamily f;
  f.complex = c;
  for (const std::string& v : normalized_complex(c).vertices) f.assignment[v] = op;
  return f;
}

}  // namespace

TEST_CASE("complex normalization sorts, deduplicates, and validates") {
  ParamComplex c;
  c.vertices = {"b", "a"};
  c.edges = {{"b", "a"}, {"a", "b"}};
  ParamComplex n = normalized_complex(c);
  CHECK(n.vertices == std::vector<std::string>{"a", "b"});
  REQUIRE(n.edges.size() == 1);
  CHECK(n.edges[0] == std::make_pair(std::string("a"), std::string("b")));
  CHECK(complex_equal(c, n));

  ParamComplex dup;
  dup.vertices = {"a", "a"};
  CHECK_FAILS(normalized_complex(dup), "malformed_complex");

  ParamComplex loop;
  loop.vertices = {"a"};
  loop.edges = {{"a", "a"}};
  CHECK_FAILS(normalized_complex(loop), "malformed_complex");

  ParamComplex stray;
  stray.vertices = {"a"};
  stray.edges = {{"a", "z"}};
  CHECK_FAILS(normalized_complex(stray), "malformed_complex");

  ParamComplex unnamed;
  unnamed.vertices = {""};
  CHECK_FAILS(normalized_complex(unnamed), "malformed_complex");
}

TEST_CASE("connected components use the least vertex as representative") {
  ParamComplex c;
  c.vertices = {"d", "c", "b", "a", "e"};
  c.edges = {{"b", "a"}, {"c", "d"}};
  auto comps = connected_components(c);
  REQUIRE(comps.size() == 3);
  CHECK(comps.at("a") == std::vector<std::string>{"a", "b"});
  CHECK(comps.at("c") == std::vector<std::string>{"c", "d"});
  CHECK(comps.at("e") == std::vector<std::string>{"e"});
}

TEST_CASE("family validation catches missing operators, shape breaks, and bounds") {
  BlockOperator shift = toeplitz_operator(sym({{1, gq(1)}}));

  OperatorFamily missing;
  missing.complex = path3();
  missing.assignment["a"] = shift;
  missing.assignment["b"] = shift;
  CHECK_FAILS(validate_family(missing), "malformed_family");

  OperatorFamily broken = constant_family(path3(), shift);
  broken.assignment["c"] = finite_operator(mat({{1}}));
  CHECK_FAILS(validate_family(broken), "shape_mismatch");

  OperatorFamily stray_bound = constant_family(path3(), shift);
  stray_bound.edge_bounds[{"a", "c"}] = rq(1);
  CHECK_FAILS(validate_family(stray_bound), "malformed_family");

  OperatorFamily negative = constant_family(path3(), shift);
  negative.edge_bounds[{"a", "b"}] = rq(-1);
  CHECK_FAILS(validate_family(negative), "malformed_family");

  OperatorFamily tight = constant_family(path3(), shift);
  tight.assignment["b"] = toeplitz_operator(sym({{1, gq(2)}}));
  tight.edge_bounds[{"a", "b"}] = rq(1, 2);
  CHECK_FAILS(validate_family(tight), "edge_bound_violated");

  tight.edge_bounds[{"a", "b"}] = rq(1);
  CHECK_NOTHROW(validate_family(tight));

  /* Bounds keyed in either endpoint order refer to the same edge. */
  OperatorFamily reversed = constant_family(path3(), shift);
  reversed.edge_bounds[{"b", "a"}] = rq(0);
  CHECK_NOTHROW(validate_family(reversed));
}

TEST_CASE("family index is one entry per component") {
  OperatorFamily f = constant_family(path3(), toeplitz_operator(sym({{1, gq(1)}})));
  IndexVector u = family_index(f);
  REQUIRE(u.entries.size() == 1);
  CHECK(u.entries.at("a") == -1);

  ParamComplex two;
  two.vertices = {"p", "q"};
  OperatorFamily split;
  split.complex = two;
  split.assignment["p"] = toeplitz_operator(sym({{1, gq(1)}}));
  split.assignment["q"] = toeplitz_operator(sym({{-2, gq(1)}}));
  IndexVector v = family_index(split);
  CHECK(v.entries.at("p") == -1);
  CHECK(v.entries.at("q") == 2);

  split.complex.edges = {{"p", "q"}};
  CHECK_FAILS(family_index(split), "index_mismatch_within_component");

  OperatorFamily bad = constant_family(path3(), toeplitz_operator(sym({{1, gq(1)}})));
  bad.assignment["b"] = toeplitz_operator(sym({{1, gq(1)}, {0, gq(-1)}}));
  CHECK_FAILS(family_index(bad), "non_fredholm_at");
}

TEST_CASE("finite families over a path have index zero regardless of entries") {
  for (long x : {-1L, 0L, 1L}) {
    OperatorFamily f = constant_family(path3(), finite_operator(mat({{x}})));
    IndexVector u = family_index(f);
    REQUIRE(u.entries.size() == 1);
    CHECK(u.entries.at("a") == 0);
  }
}

TEST_CASE("product complexes layer the base and join consecutive layers") {
  ParamComplex base;
  base.vertices = {"a", "b"};
  base.edges = {{"a", "b"}};
  ParamComplex prod = product_complex(base, 2);

  CHECK(layer_vertex("a", 3) == "a@3");
  CHECK(prod.vertices.size() == 6);
  CHECK(prod.edges.size() == 7);  // 3 layer copies + 4 time edges

  std::set<std::pair<std::string, std::string>> edges(prod.edges.begin(), prod.edges.end());
  CHECK(edges.count({"a@0", "b@0"}) == 1);
  CHECK(edges.count({"a@2", "b@2"}) == 1);
  CHECK(edges.count({"a@0", "a@1"}) == 1);
  CHECK(edges.count({"b@1", "b@2"}) == 1);
  CHECK(edges.count({"a@0", "b@1"}) == 0);
}

TEST_CASE("a patch fade is accepted as an index-preserving homotopy") {
  ParamComplex base;
  base.vertices = {"a", "b"};
  base.edges = {{"a", "b"}};

  BlockOperator patched = toeplitz_patched(sym({{1, gq(1)}}), mat({{1}}));
  BlockOperator bare = toeplitz_operator(sym({{1, gq(1)}}));
  OperatorFamily s = constant_family(base, patched);
  OperatorFamily t = constant_family(base, bare);

  OperatorFamily h;
  h.complex = product_complex(base, 2);
  for (const std::string& v : base.vertices) {
    h.assignment[layer_vertex(v, 0)] = patched;
    ExactMatrix half = mat({{1}});
    half(0, 0) = GaussianRational(Rational(1, 2), Rational(0));
    h.assignment[layer_vertex(v, 1)] = toeplitz_patched(sym({{1, gq(1)}}), half);
    h.assignment[layer_vertex(v, 2)] = bare;
  }

  HomotopyReport rep = homotopy_check(h, s, t);
  CHECK(rep.layers == 2);
  REQUIRE(rep.per_layer.size() == 3);
  for (const IndexVector& u : rep.per_layer) {
    REQUIRE(u.entries.size() == 1);
    CHECK(u.entries.at("a") == -1);
  }
}

TEST_CASE("homotopies with wrong endpoints or drifting indices are rejected") {
  ParamComplex base;
  base.vertices = {"a"};

  BlockOperator shift = toeplitz_operator(sym({{1, gq(1)}}));
  OperatorFamily s = constant_family(base, shift);
  OperatorFamily t = constant_family(base, shift);

  OperatorFamily h;
  h.complex = product_complex(base, 1);
  h.assignment[layer_vertex("a", 0)] = toeplitz_operator(sym({{1, gq(2)}}));
  h.assignment[layer_vertex("a", 1)] = shift;
  CHECK_FAILS(homotopy_check(h, s, t), "endpoint_mismatch");

  OperatorFamily drift;
  drift.complex = product_complex(base, 2);
  drift.assignment[layer_vertex("a", 0)] = shift;
  drift.assignment[layer_vertex("a", 1)] = toeplitz_operator(sym({{2, gq(1)}}));
  drift.assignment[layer_vertex("a", 2)] = shift;
  CHECK_FAILS(homotopy_check(drift, s, t), "index_changed_along_homotopy");

  OperatorFamily flat = constant_family(base, shift);
  CHECK_FAILS(homotopy_check(flat, s, t), "endpoint_mismatch");

  OperatorFamily vanish;
  vanish.complex = product_complex(base, 2);
  vanish.assignment[layer_vertex("a", 0)] = shift;
  vanish.assignment[layer_vertex("a", 1)] = toeplitz_operator(sym({{1, gq(1)}, {0, gq(-1)}}));
  vanish.assignment[layer_vertex("a", 2)] = shift;
  CHECK_FAILS(homotopy_check(vanish, s, t), "non_fredholm_at");
}

TEST_CASE("synthesized families realize a prescribed index vector") {
  ParamComplex c;
  c.vertices = {"a", "b", "p", "q"};
  c.edges = {{"a", "b"}, {"p", "q"}};

  IndexVector u;
  u.entries["a"] = -1;
  u.entries["p"] = 3;
  OperatorFamily f = synthesize_family(c, u);
  IndexVector got = family_index(f);
  CHECK(got.entries == u.entries);

  IndexVector short_u;
  short_u.entries["a"] = -1;
  CHECK_FAILS(synthesize_family(c, short_u), "component_mismatch");

  IndexVector misnamed;
  misnamed.entries["a"] = -1;
  misnamed.entries["q"] = 3;  // q is a member, not the representative
  CHECK_FAILS(synthesize_family(c, misnamed), "component_mismatch");
}

TEST_CASE("round trips through synthesis preserve random index vectors") {
  OpGenerator gen(1234);
  for (int trial = 0; trial < 10; ++trial) {
    ParamComplex c = gen.complex();
    IndexVector u;
    for (const auto& [rep, members] : connected_components(c))
      u.entries[rep] = gen.int_in(-5, 5);
    IndexVector got = family_index(synthesize_family(c, u));
    CHECK(got.entries == u.entries);
  }
}

TEST_CASE("indices hold up under perturbations below the family margin") {
  OperatorFamily f = constant_family(path3(), toeplitz_operator(sym({{1, gq(1)}})));
  f.assignment["b"] = toeplitz_patched(sym({{1, gq(1)}}), mat({{1}}));
  LocalConstancyReport rep = local_constancy_check(f, 10, 99);
  CHECK(rep.trials == 10);
  CHECK(rep.failures == 0);
  CHECK(rep.margin > rq(0));
}

TEST_CASE("weyl families are exactly those with vanishing component indices") {
  ParamComplex c = path3();
  IndexVector zero;
  zero.entries["a"] = 0;
  CHECK(is_weyl_family(synthesize_family(c, zero)));

  IndexVector one;
  one.entries["a"] = 1;
  CHECK_FALSE(is_weyl_family(synthesize_family(c, one)));

  OperatorFamily invalid = constant_family(
      c, toeplitz_operator(sym({{1, gq(1)}, {0, gq(-1)}})));
  CHECK_FALSE(is_weyl_family(invalid));
}
