#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "isoconst/spaces.hpp"

namespace isoconst {

// Seed of the random polyhedral norm in the named corpus.
inline constexpr std::uint64_t kCorpusPolySeed = 2;

// Named spaces: l2-2, l1-2, linf-2, l1.5-2, l3-2, octagon, randpoly-2,
// l1-3, l2-3, csup-64.
std::span<const std::string_view> named_space_ids();
std::optional<SpaceSpec> named_space(std::string_view id);

// l2-2, l1-2, linf-2, l1.5-2, octagon.
std::vector<SpaceSpec> default_verify_corpus();

// The 2-D desk corpus: l2-2, l1-2, linf-2, l1.5-2, l3-2, octagon, randpoly-2.
std::vector<SpaceSpec> planar_corpus();

}  // namespace isoconst
