#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "isoconst/constants.hpp"
#include "isoconst/rng.hpp"

using namespace isoconst;

namespace {

SpaceSpec random_space(SplitMix64& rng) {
  const std::size_t dim = rng.uniform() < 0.7 ? 2 : 3;
  switch (rng.next() % 4) {
    case 0:
      return make_lp(1.0 + 7.0 * rng.uniform(), dim);
    case 1:
      return make_lp_inf(dim);
    case 2:
      return make_weighted_lp(Exponent::finite(1.0 + 3.0 * rng.uniform()),
                              dim == 2 ? std::vector<double>{0.5 + rng.uniform(), 0.5 + rng.uniform()}
                                       : std::vector<double>{0.5 + rng.uniform(), 0.5 + rng.uniform(), 1.0});
    default:
      return make_random_polyhedral(rng.next(), 3 + rng.next() % 5, dim);
  }
}

}  // namespace

TEST_CASE("estimates respect the universal bounds") {
  constexpr std::array ids{ConstantId::CNJ,      ConstantId::CNJPrime, ConstantId::A2,       ConstantId::J,
                           ConstantId::HTilde,   ConstantId::HTildeSq, ConstantId::E,        ConstantId::EI,
                           ConstantId::LYJPrime, ConstantId::LYJI,     ConstantId::CNJI,     ConstantId::DeltaX};
  SplitMix64 rng(20240611);
  OptConfig cfg;
  cfg.restarts = 4;
  int checked = 0;
  for (int draw = 0; draw < 200; ++draw) {
    const SpaceSpec s = random_space(rng);
    ConstantQuery q;
    q.id = ids[rng.next() % ids.size()];
    q.tau = 0.1 + 4.0 * rng.uniform();
    q.upsilon = 0.1 + 4.0 * rng.uniform();
    q.t = 3.0 * rng.uniform();
    q.eps = 2.0 * rng.uniform();
    cfg.seed = rng.next();
    CAPTURE(draw);
    CAPTURE(label(s));
    CAPTURE(constant_id_name(q.id));
    const Estimate e = estimate_constant(s, q, cfg);
    const auto b = universal_bounds(q);
    REQUIRE(b);
    CHECK(e.value - b->lo >= -1e-9);
    CHECK(b->hi - e.value >= -1e-9);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("hilbert spaces hit the references") {
  SplitMix64 rng(7);
  OptConfig cfg;
  cfg.restarts = 8;
  for (int draw = 0; draw < 20; ++draw) {
    const double w1 = 0.2 + 3.0 * rng.uniform(), w2 = 0.2 + 3.0 * rng.uniform();
    const SpaceSpec s = make_weighted_lp(Exponent::finite(2), {w1, w2});
    ConstantQuery q;
    q.id = draw % 2 ? ConstantId::LYJI : ConstantId::E;
    q.tau = 0.5 + rng.uniform();
    q.upsilon = 0.5 + rng.uniform();
    q.t = 2.0 * rng.uniform();
    CHECK(estimate_constant(s, q, cfg).value == doctest::Approx(hilbert_reference(q)).epsilon(1e-8));
  }
}
