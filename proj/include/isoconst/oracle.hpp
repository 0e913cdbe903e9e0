#pragma once

// Brute-force evaluation over angle grids of a 2-D unit sphere. Used to
// certify the optimizer at desk scale; shares no search code with it.

#include "isoconst/optimizer.hpp"

namespace isoconst {

struct OracleOptions {
  // Optional nested zoom around the best node: each level evaluates a
  // zoom_points x zoom_points grid over the +-1 cell box of the current
  // best and recenters. Level 0 is the plain product grid.
  int zoom_levels = 0;
  int zoom_points = 33;
};

// Objective on all (theta_u, theta_v) = (2 pi i / R, 2 pi j / R). R must be a
// multiple of 8 so every multiple of pi/4 is a node. bound_window is the
// largest change between the best node and its 8 neighbours; it is a
// heuristic gap, not a rigorous bound.
Estimate grid_sup_2d(const SpaceSpec& space, const PairObjective& objective, int resolution,
                     const OracleOptions& opts = {});
Estimate grid_inf_2d(const SpaceSpec& space, const PairObjective& objective, int resolution,
                     const OracleOptions& opts = {});

// Direct evaluation of an isosceles-constrained supremum: for every grid
// pair of directions (x, y) and every lambda from isosceles_scales the raw
// objective is evaluated at (x, lambda y). The witness is that raw pair,
// with lambda in meta. Pairs without a scaling contribute nothing.
Estimate constrained_grid_sup_2d(const SpaceSpec& space, const PairObjective& raw_objective, int resolution,
                                 const ToleranceConfig& tol = {});

}  // namespace isoconst
