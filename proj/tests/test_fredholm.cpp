#include <algorithm>
#include <cmath>
#include <complex>

#include "bfred/errors.hpp"
#include "bfred/fredholm.hpp"
#include "bfred/random_ops.hpp"
#include "bfred/rootcount.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bfred;
using namespace testutil;

TEST_CASE("verdict classifies blocks and reports the first obstruction") {
  FredholmVerdict shift = fredholm_verdict(toeplitz_operator(sym({{1, gq(1)}})));
  CHECK(shift.is_fredholm);
  CHECK(shift.index == -1);
  CHECK(shift.reason == NotFredholmReason::none);
  CHECK(std::string(to_string(shift.reason)) == "ok");

  BlockOperator up = finite_operator(mat({{1}}));
  up.blocks.push_back(ToeplitzBlock{sym({{-1, gq(1)}}), std::nullopt});
  FredholmVerdict v = fredholm_verdict(up);
  CHECK(v.is_fredholm);
  CHECK(v.index == 1);

  BlockOperator zero_sym = finite_operator(mat({{1}}));
  zero_sym.blocks.push_back(ToeplitzBlock{sym({{1, gq(1)}}), std::nullopt});
  zero_sym.blocks.push_back(ToeplitzBlock{LaurentPoly(), std::nullopt});
  FredholmVerdict z = fredholm_verdict(zero_sym);
  CHECK_FALSE(z.is_fredholm);
  CHECK(z.reason == NotFredholmReason::zero_symbol_infinite_defect);
  CHECK(z.offending_block == 2);
  CHECK_FALSE(z.index.has_value());

  FredholmVerdict vanisher =
      fredholm_verdict(toeplitz_operator(sym({{1, gq(1)}, {0, gq(-1)}})));
  CHECK_FALSE(vanisher.is_fredholm);
  CHECK(vanisher.reason == NotFredholmReason::symbol_vanishes_on_circle);
  CHECK(std::string(to_string(vanisher.reason)) == "symbol_vanishes_on_circle");
}

TEST_CASE("index sums negative windings and ignores compact corrections") {
  CHECK(fredholm_index(toeplitz_operator(sym({{0, gq(1)}}))) == 0);
  CHECK(fredholm_index(toeplitz_operator(sym({{2, gq(1)}}))) == -2);
  CHECK(fredholm_index(toeplitz_patched(sym({{1, gq(1)}}), mat({{5}}))) == -1);

  BlockOperator mixed = finite_operator(mat({{0, 1}, {0, 0}}));
  mixed.blocks.push_back(ToeplitzBlock{sym({{-2, gq(1)}, {0, gq(4)}}), std::nullopt});
  mixed.blocks.push_back(ToeplitzBlock{sym({{1, gq(3)}}), std::nullopt});
  long w1 = winding_oracle(sym({{-2, gq(1)}, {0, gq(4)}}));
  long w2 = winding_oracle(sym({{1, gq(3)}}));
  CHECK(fredholm_index(mixed) == -(w1 + w2));

  CHECK_FAILS(fredholm_index(toeplitz_operator(sym({{1, gq(1)}, {0, gq(-1)}}))),
              "not_fredholm");
}

TEST_CASE("exact nullity and defect follow the kernel dichotomy") {
  NullityDefect shift = nullity_defect(toeplitz_operator(sym({{1, gq(1)}})), CountMode::exact);
  CHECK(shift.nullity.value == 0);
  CHECK(shift.defect.value == 1);
  CHECK(shift.nullity.certified);
  CHECK(shift.defect.certified);

  NullityDefect back =
      nullity_defect(toeplitz_operator(sym({{-1, gq(1)}})), CountMode::exact);
  CHECK(back.nullity.value == 1);
  CHECK(back.defect.value == 0);
  CHECK(back.nullity.certified);

  NullityDefect fin = nullity_defect(finite_operator(mat({{1, 2}, {2, 4}})), CountMode::exact);
  CHECK(fin.nullity.value == 1);
  CHECK(fin.defect.value == 1);
  CHECK(fin.nullity.certified);

  BlockOperator both = finite_operator(mat({{1, 2}, {2, 4}}));
  both.blocks.push_back(ToeplitzBlock{sym({{3, gq(1)}}), std::nullopt});
  NullityDefect nd = nullity_defect(both, CountMode::exact);
  CHECK(nd.nullity.value == 1);
  CHECK(nd.defect.value == 4);
  CHECK(nd.nullity.certified);
}

TEST_CASE("patched blocks fall back to finite sections and stay uncertified") {
  NullityDefect plain =
      nullity_defect(toeplitz_patched(sym({{1, gq(1)}}), mat({{5}})), CountMode::exact);
  CHECK(plain.nullity.value == 0);
  CHECK(plain.defect.value == 1);
  CHECK_FALSE(plain.nullity.certified);
  CHECK_FALSE(plain.defect.certified);

  /* Patch cancels the first column of the shift: e_0 joins the kernel
   * and the range drops two directions. */
  NullityDefect cooked = nullity_defect(
      toeplitz_patched(sym({{1, gq(1)}}), mat({{0, 0}, {-1, 0}})), CountMode::exact);
  CHECK(cooked.nullity.value == 1);
  CHECK(cooked.defect.value == 2);
  CHECK_FALSE(cooked.nullity.certified);
}

namespace {

/* Symbol built from linear factors whose roots stay off the annulus
 * 3/5 < |z| < 5/3.  Kernel vectors of the corresponding operators decay
 * at least like (3/5)^(n/degree), so truncations of size 256 push their
 * singular values far below the 1e-8 cutoff; symbols with roots close to
 * the circle would need much larger sections.  Winding is inside-root
 * count plus the monomial shift, by construction. */
LaurentPoly controlled_symbol(OpGenerator& gen, long& expected_winding) {
  static const GaussianRational inner_roots[] = {
      gq(0),
      {Rational(1, 2), Rational(0)},
      {Rational(-1, 2), Rational(0)},
      {Rational(0), Rational(1, 2)},
      {Rational(0), Rational(-1, 2)},
      {Rational(1, 4), Rational(1, 4)},
      {Rational(-2, 5), Rational(0)},
      {Rational(0), Rational(3, 8)},
  };
  LaurentPoly f = sym({{0, gq(1)}});
  long inside = gen.int_in(0, 2);
  long outside = gen.int_in(0, 2);
  long shift = gen.int_in(-2, 2);
  for (long i = 0; i < inside; ++i) {
    const GaussianRational& a = inner_roots[gen.int_in(0, 7)];
    LaurentPoly factor = sym({{1, gq(1)}});
    factor.set(0, GaussianRational(0) - a);
    f = f * factor;
  }
  for (long j = 0; j < outside; ++j) {
    const GaussianRational& c = inner_roots[gen.int_in(1, 7)];  // nonzero, root 1/c
    LaurentPoly factor = sym({{0, gq(1)}});
    factor.set(1, GaussianRational(0) - c);
    f = f * factor;
  }
  expected_winding = inside + shift;
  return f.shifted(shift);
}

}  // namespace

TEST_CASE("finite sections agree with exact counts when roots avoid the circle") {
  OpGenerator gen(2024);
  for (int trial = 0; trial < 12; ++trial) {
    BlockOperator op;
    long blocks = gen.int_in(1, 3);
    bool has_toeplitz = false;
    bool has_patch = false;
    for (long b = 0; b < blocks; ++b) {
      if (gen.int_in(0, 3) == 0) {
        long n = gen.int_in(1, 3);
        op.blocks.push_back(FiniteBlock{gen.matrix(n, n)});
        continue;
      }
      long w = 0;
      ToeplitzBlock tb{controlled_symbol(gen, w), std::nullopt};
      CHECK(winding(tb.symbol) == w);
      if (gen.coin()) {
        long n = gen.int_in(1, 2);
        tb.patch = gen.matrix(n, n);
        has_patch = true;
      }
      has_toeplitz = true;
      op.blocks.push_back(std::move(tb));
    }
    long index = fredholm_index(op);

    NullityDefect exact = nullity_defect(op, CountMode::exact);
    NullityDefect fs = nullity_defect(op, CountMode::finite_section);

    CHECK(exact.nullity.value - exact.defect.value == index);
    CHECK(fs.nullity.value - fs.defect.value == index);
    CHECK(exact.nullity.value == fs.nullity.value);
    CHECK(exact.defect.value == fs.defect.value);

    CHECK(exact.nullity.certified == !has_patch);
    CHECK(fs.nullity.certified == !has_toeplitz);
  }
}

TEST_CASE("margin examples: constants, shifts, and operators with no symbol") {
  CHECK(fredholm_margin(toeplitz_operator(sym({{0, gq(2)}}))) == rq(2));

  Rational away = fredholm_margin(toeplitz_operator(sym({{1, gq(1)}, {0, gq(-2)}})));
  CHECK(away >= rq(1, 2));
  CHECK(away <= rq(1));

  Rational shift = fredholm_margin(toeplitz_operator(sym({{1, gq(1)}})));
  CHECK(shift >= rq(1, 2));
  CHECK(shift <= rq(1));

  CHECK(fredholm_margin(finite_operator(mat({{0}}))) == rq(1));

  CHECK_FAILS(fredholm_margin(toeplitz_operator(sym({{1, gq(1)}, {0, gq(-1)}}))),
              "not_fredholm");
}

TEST_CASE("margin lower-bounds the true circle minimum") {
  OpGenerator gen(31337);
  for (int trial = 0; trial < 20; ++trial) {
    LaurentPoly f = gen.stable_symbol();
    Rational m = fredholm_margin(toeplitz_operator(f));
    CHECK(m > rq(0));

    double min_abs = 1e300;
    for (int i = 0; i < 4096; ++i) {
      double t = 2.0 * M_PI * i / 4096;
      min_abs = std::min(min_abs, std::abs(eval_cplx(f, {std::cos(t), std::sin(t)})));
    }
    CHECK(m.get_d() <= min_abs + 1e-9);
  }
}

TEST_CASE("index is stable under perturbations within the margin") {
  OpGenerator gen(808);
  for (int outer = 0; outer < 5; ++outer) {
    BlockOperator op = gen.fredholm_operator();
    long index = fredholm_index(op);
    Rational m = fredholm_margin(op);
    for (int inner = 0; inner < 10; ++inner) {
      BlockOperator p = gen.perturbation_within(op, m);
      CHECK(norm_bound(p) < m);
      BlockOperator moved = combine(op, p, CombineKind::add);
      FredholmVerdict v = fredholm_verdict(moved);
      REQUIRE(v.is_fredholm);
      CHECK(*v.index == index);
    }
  }
}
