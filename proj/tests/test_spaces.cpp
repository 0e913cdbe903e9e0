#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "isoconst/error.hpp"
#include "isoconst/rng.hpp"
#include "isoconst/serialize.hpp"
#include "isoconst/spaces.hpp"

using namespace isoconst;

namespace {

std::vector<SpaceSpec> zoo() {
  return {make_lp(1, 3),
          make_lp(2, 3),
          make_lp(1.5, 2),
          make_lp(3, 4),
          make_lp(7.25, 3),
          make_lp_inf(3),
          make_weighted_lp(Exponent::finite(2), {1.0, 3.0, 0.5}),
          make_weighted_lp(Exponent::inf(), {2.0, 0.25}),
          make_octagon(),
          make_random_polyhedral(11, 6, 3),
          make_discretized_sup(16, -1.0, 2.0)};
}

Vector random_vector(SplitMix64& rng, std::size_t dim) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.gaussian();
  return v;
}

}  // namespace

TEST_CASE("lp norms match hand values") {
  CHECK(norm(make_lp(1, 3), Vector{1, -2, 3}) == 6.0);
  CHECK(norm(make_lp(2, 2), Vector{3, 4}) == 5.0);
  CHECK(norm(make_lp_inf(3), Vector{1, -7, 3}) == 7.0);
  CHECK(norm(make_lp(3, 2), Vector{1, 1}) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));
  CHECK(norm(make_lp(1.5, 2), Vector{1, 1}) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("weighted and polyhedral norms") {
  CHECK(norm(make_weighted_lp(Exponent::finite(1), {2.0, 3.0}), Vector{1, -1}) == 5.0);
  CHECK(norm(make_weighted_lp(Exponent::inf(), {2.0, 3.0}), Vector{1, -1}) == 3.0);
  // Square with facets x = +-1, y = +-1 is the sup norm.
  const SpaceSpec sq = make_polyhedral(2, {Vector{1, 0}, Vector{0, 1}});
  CHECK(sq.functionals.size() == 4);
  CHECK(norm(sq, Vector{0.5, -2}) == 2.0);
  const SpaceSpec oct = make_octagon();
  CHECK(norm(oct, Vector{1, 0}) == doctest::Approx(1.0));
  CHECK(norm(oct, direction_2d(std::numbers::pi / 8)) == doctest::Approx(std::cos(std::numbers::pi / 8)));
}

TEST_CASE("discretized sup norm is the max over samples") {
  const SpaceSpec c = make_discretized_sup(5, 0.0, 1.0);
  const Vector f = sample_function(c, [](double r) { return r * r - 0.75; });
  CHECK(f.dim() == 5);
  CHECK(norm(c, f) == doctest::Approx(0.75));
  CHECK(grid_nodes(c).front() == 0.0);
  CHECK(grid_nodes(c).back() == 1.0);
}

TEST_CASE("norm axioms hold on random vectors") {
  SplitMix64 rng(123);
  for (const SpaceSpec& s : zoo()) {
    CAPTURE(label(s));
    for (int k = 0; k < 50; ++k) {
      const Vector x = random_vector(rng, s.dim), y = random_vector(rng, s.dim);
      const double c = 4.0 * rng.uniform() - 2.0;
      const double nx = norm(s, x), ny = norm(s, y);
      CHECK(nx > 0.0);
      CHECK(norm(s, c * x) == doctest::Approx(std::abs(c) * nx).epsilon(1e-13));
      CHECK(norm(s, x + y) <= nx + ny + 1e-12 * (nx + ny));
      CHECK(norm_combo(s, c, x, -0.5, y) == doctest::Approx(norm(s, combine(c, x, -0.5, y))).epsilon(1e-14));
      CHECK(norm(s, unit(s, x)) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(norm(s, Vector(s.dim)) == 0.0);
  }
}

TEST_CASE("validation names the broken rule") {
  CHECK_THROWS_WITH_AS(make_lp(0.5, 2), "p must be ≥ 1", ValidationError);
  CHECK_THROWS_AS(make_lp(2, 0), ValidationError);
  CHECK_THROWS_WITH_AS(make_polyhedral(2, {Vector{1, 0}, Vector{2, 0}}), "functionals must span the space (rank deficient)",
                       ValidationError);
  CHECK_THROWS_AS(make_weighted_lp(Exponent::finite(2), {1.0, -1.0}), ValidationError);
  CHECK_THROWS_AS(make_discretized_sup(1, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(make_discretized_sup(4, 1.0, 1.0), ValidationError);
  SpaceSpec broken = make_octagon();
  broken.functionals.pop_back();
  CHECK_THROWS_WITH_AS(validate(broken), "functionals must be closed under negation", ValidationError);
}

TEST_CASE("non-finite and mismatched inputs") {
  const SpaceSpec s = make_lp(2, 2);
  CHECK_THROWS_AS(norm(s, Vector{1, std::numeric_limits<double>::quiet_NaN()}), DomainError);
  CHECK_THROWS_AS(norm(s, Vector{1, 2, 3}), ContractViolation);
  CHECK_THROWS_AS(unit(s, Vector{0, 0}), DegenerateInput);
  CHECK_THROWS_AS((Vector{1, 2} + Vector{1}), ContractViolation);
}

TEST_CASE("hilbert detection") {
  CHECK(is_hilbert(make_lp(2, 5)));
  CHECK(is_hilbert(make_weighted_lp(Exponent::finite(2), {1.0, 4.0})));
  CHECK(is_hilbert(make_lp(1, 1)));
  CHECK_FALSE(is_hilbert(make_lp(1, 2)));
  CHECK_FALSE(is_hilbert(make_octagon()));
  CHECK_FALSE(is_hilbert(make_lp_inf(2)));
}

TEST_CASE("direction_2d is exact at multiples of pi/4") {
  const double pi = std::numbers::pi;
  CHECK(direction_2d(0.0) == Vector{1, 0});
  CHECK(direction_2d(pi / 2) == Vector{0, 1});
  CHECK(direction_2d(pi) == Vector{-1, 0});
  CHECK(direction_2d(-pi / 2) == Vector{0, -1});
  CHECK(direction_2d(2 * pi * 5 / 8)[0] == direction_2d(2 * pi * 5 / 8)[1]);
  CHECK(norm(make_lp(1, 2), boundary_point_2d(make_lp(1, 2), pi / 4)) == 1.0);
}

TEST_CASE("unit sampling is seeded") {
  const SpaceSpec s = make_lp(3, 4);
  const auto a = sample_unit_vectors(s, 9, 5), b = sample_unit_vectors(s, 9, 5), c = sample_unit_vectors(s, 10, 5);
  CHECK(a == b);
  CHECK(a != c);
  for (const Vector& v : a) CHECK(norm(s, v) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("json round trip") {
  for (const SpaceSpec& s : zoo()) {
    CAPTURE(label(s));
    const SpaceSpec back = parse_space_spec(to_json_text(s));
    CHECK(back == s);
  }
  SpaceSpec named = make_lp(4, 2);
  named.name = "quartic";
  CHECK(parse_space_spec(to_json_text(named)).name == "quartic");
}

TEST_CASE("json parsing rejects bad documents") {
  CHECK(parse_space_spec(R"({"family":"lp","p":"inf","dim":3})") == make_lp_inf(3));
  CHECK_THROWS_AS(parse_space_spec(R"({"family":"lp","p":2,"dim":2,"weights":[1,1]})"), ValidationError);
  CHECK_THROWS_AS(parse_space_spec(R"({"family":"cube","dim":2})"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_space_spec(R"({"family":"lp","p":0.5,"dim":2})"), "p must be ≥ 1", ValidationError);
  try {
    parse_space_spec(R"({"family": "lp", "p": 2,, "dim": 2})");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 25);  // the second comma, counted from 1
  }
  const SpaceSpec c = parse_space_spec(R"({"family":"discretized-sup","grid":8})");
  CHECK(c.dim == 8);
  CHECK(c.alpha == 0.0);
  CHECK(c.beta == 1.0);
}

TEST_CASE("shorthand") {
  CHECK(parse_space_shorthand("lp:1.5:3") == make_lp(1.5, 3));
  CHECK(parse_space_shorthand("lp:inf:2") == make_lp_inf(2));
  CHECK_THROWS_AS(parse_space_shorthand("lp:two:2"), ParseError);
  CHECK_THROWS_AS(parse_space_shorthand("lq:2:2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_space_shorthand("lp:0.5:2"), "p must be ≥ 1", ValidationError);
}

TEST_CASE("tolerance config") {
  ToleranceConfig t;
  CHECK_NOTHROW(t.validate());
  t.verify_tol = 1e-12;
  CHECK_THROWS_AS(t.validate(), ContractViolation);
  t = {};
  t.lambda_max = 1.0;
  CHECK_THROWS_AS(t.validate(), ContractViolation);
}
