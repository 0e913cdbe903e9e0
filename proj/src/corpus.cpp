#include "isoconst/corpus.hpp"

#include <array>

namespace isoconst {

namespace {

constexpr std::array<std::string_view, 10> kNames{"l2-2",    "l1-2",       "linf-2", "l1.5-2", "l3-2",
                                                  "octagon", "randpoly-2", "l1-3",   "l2-3",   "csup-64"};

std::vector<SpaceSpec> by_name(std::initializer_list<std::string_view> names) {
  std::vector<SpaceSpec> out;
  for (std::string_view n : names) out.push_back(*named_space(n));
  return out;
}

}  // namespace

std::span<const std::string_view> named_space_ids() { return kNames; }

std::optional<SpaceSpec> named_space(std::string_view id) {
  if (id == "l2-2") return make_lp(2.0, 2);
  if (id == "l1-2") return make_lp(1.0, 2);
  if (id == "linf-2") return make_lp_inf(2);
  if (id == "l1.5-2") return make_lp(1.5, 2);
  if (id == "l3-2") return make_lp(3.0, 2);
  if (id == "octagon") return make_octagon();
  if (id == "randpoly-2") return make_random_polyhedral(kCorpusPolySeed, 4, 2);
  if (id == "l1-3") return make_lp(1.0, 3);
  if (id == "l2-3") return make_lp(2.0, 3);
  if (id == "csup-64") return make_discretized_sup(64, 0.0, 1.0);
  return std::nullopt;
}

std::vector<SpaceSpec> default_verify_corpus() { return by_name({"l2-2", "l1-2", "linf-2", "l1.5-2", "octagon"}); }

std::vector<SpaceSpec> planar_corpus() {
  return by_name({"l2-2", "l1-2", "linf-2", "l1.5-2", "l3-2", "octagon", "randpoly-2"});
}

}  // namespace isoconst
