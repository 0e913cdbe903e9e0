#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "isoconst/error.hpp"
#include "isoconst/orthogonality.hpp"
#include "isoconst/rng.hpp"

using namespace isoconst;

TEST_CASE("isosceles defect") {
  const SpaceSpec l1 = make_lp(1, 2);
  CHECK(iso_defect(l1, Vector{1, 1}, Vector{1, -1}) == 0.0);
  CHECK(iso_defect(make_lp(2, 2), Vector{1, 0}, Vector{1, 1}) > 0.0);
  CHECK(orthogonality_test(l1, OrthoKind::Isosceles, Vector{1, 1}, Vector{1, -1}));
  CHECK_FALSE(orthogonality_test(l1, OrthoKind::Isosceles, Vector{1, 0}, Vector{1, 1}));
}

TEST_CASE("all notions agree on euclidean orthogonal pairs") {
  const SpaceSpec l2 = make_lp(2, 2);
  const Vector x{0.6, 0.8}, y{-1.6, 1.2};
  for (OrthoKind k : {OrthoKind::Isosceles, OrthoKind::Pythagorean, OrthoKind::Birkhoff, OrthoKind::Roberts}) {
    CAPTURE(ortho_kind_name(k));
    CHECK(orthogonality_test(l2, k, x, y));
    CHECK_FALSE(orthogonality_test(l2, k, x, Vector{1, 0.2}));
  }
}

TEST_CASE("birkhoff is not symmetric in l1") {
  // x = (1,0), y = (1,1): ||x + t y||_1 = |1+t| + |t| >= 1, but ||y + t x|| < 2 for t = -1/2.
  const SpaceSpec l1 = make_lp(1, 2);
  CHECK(orthogonality_test(l1, OrthoKind::Birkhoff, Vector{1, 0}, Vector{1, 1}));
  CHECK_FALSE(orthogonality_test(l1, OrthoKind::Birkhoff, Vector{1, 1}, Vector{1, 0}));
}

TEST_CASE("pairs from equal-norm vectors are orthogonal") {
  SplitMix64 rng(5);
  for (const SpaceSpec& s : {make_lp(1.5, 3), make_octagon(), make_lp_inf(2)}) {
    const auto uv = sample_unit_vectors(s, 77, 2);
    const PairWitness w = pair_from_uv(s, uv[0], uv[1], 0.7);
    CHECK(orthogonality_test(s, OrthoKind::Isosceles, w.x, w.y));
    CHECK(norm(s, w.x - 0.7 * (uv[0] + uv[1])) < 1e-15);
  }
  CHECK_THROWS_AS(pair_from_uv(make_lp(2, 2), Vector{1, 0}, Vector{0, 2}, 1.0), ContractViolation);
  CHECK_THROWS_AS(pair_from_uv(make_lp(2, 2), Vector{1, 0}, Vector{0, 1}, 0.0), ContractViolation);
}

TEST_CASE("scales in the euclidean plane") {
  const SpaceSpec l2 = make_lp(2, 2);
  // Orthogonal directions: every lambda works, lambda = 1 among the representatives.
  const auto all = isosceles_scales(l2, Vector{1, 0}, Vector{0, 1});
  CHECK(all.size() > 2);
  CHECK(std::find(all.begin(), all.end(), 1.0) != all.end());
  // Non-orthogonal directions: none.
  CHECK(isosceles_scales(l2, Vector{1, 0}, unit(l2, Vector{1, 1})).empty());
}

TEST_CASE("scales are roots of the defect") {
  const ToleranceConfig tol;
  for (const SpaceSpec& s : {make_lp(3, 2), make_lp(1.5, 3), make_random_polyhedral(4, 5, 2)}) {
    CAPTURE(label(s));
    const auto xw = sample_unit_vectors(s, 31, 2);
    const auto y = isosceles_partner(s, xw[0], xw[1], 2.5);
    REQUIRE(y);
    CHECK(norm(s, *y) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(iso_defect(s, xw[0], 2.5 * *y)) <= 1e-12);
    const auto lams = isosceles_scales(s, xw[0], *y, tol);
    REQUIRE_FALSE(lams.empty());
    bool near = false;
    for (double l : lams) {
      CHECK(orthogonality_test(s, OrthoKind::Isosceles, xw[0], l * *y, tol));
      near = near || std::abs(l - 2.5) < 1e-8;
    }
    CHECK(near);
  }
}

TEST_CASE("partners") {
  const SpaceSpec s = make_lp(1.5, 2);
  const Vector x = unit(s, Vector{1, 0.3});
  CHECK_FALSE(isosceles_partner(s, x, -2.0 * x, 1.0));
  for (double d : {0.0, 0.5, 1.0, 1.7, 2.0}) {
    const auto y = chord_partner(s, x, Vector{0, 1}, d);
    REQUIRE(y);
    CHECK(norm(s, *y) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(norm(s, x - *y) == doctest::Approx(d).epsilon(1e-10));
  }
}
