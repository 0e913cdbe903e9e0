#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "isoconst/orthogonality.hpp"
#include "isoconst/spaces.hpp"

namespace isoconst {

// Objective over pairs of unit vectors. Must be pure; non-finite values
// mark infeasible points.
using PairObjective = std::function<double(const Vector&, const Vector&)>;

enum class Cert { GridCertified, HeuristicLowerBound, HeuristicUpperBound, Exact };

std::string_view cert_name(Cert c);

enum class Sense { Maximize, Minimize };

struct OptConfig {
  int restarts = 64;
  int max_iters = 400;         // Nelder-Mead iterations per simplex pass
  std::uint64_t seed = 0;
  double simplex_init = 0.25;  // initial simplex edge in chart coordinates
  double opt_tol = 1e-10;
  int lattice = 32;            // 2-D only: angle lattice scanned for one extra start; 0 disables
  int direct_resolution = 128; // 2-D constrained grid used by direct-mode estimators

  void validate() const;
};

struct Estimate {
  double value = 0.0;
  PairWitness witness;
  Cert cert = Cert::HeuristicLowerBound;
  long long evals = 0;
  std::optional<double> bound_window;  // oracle estimates only
};

// Multistart Nelder-Mead over S_X x S_X. Charts: the angle pair
// (theta_u, theta_v) in 2-D, normalized ambient coordinates otherwise.
// Restart r starts from sample_unit_vectors(seed ^ r); restarts whose start
// value is non-finite are discarded. The best result is chosen by value,
// then by the lexicographically smaller witness, so the outcome does not
// depend on evaluation order and never decreases when restarts grow.
Estimate optimize_pair_objective(const SpaceSpec& space, const PairObjective& objective, const OptConfig& cfg,
                                 Sense sense, std::span<const PairWitness> extra_starts = {});

// Same search, from the given starts only (no lattice, no random restarts).
Estimate optimize_from_starts(const SpaceSpec& space, const PairObjective& objective, const OptConfig& cfg,
                              Sense sense, std::span<const PairWitness> starts);

Estimate maximize_pair_objective(const SpaceSpec& space, const PairObjective& objective, const OptConfig& cfg);
Estimate minimize_pair_objective(const SpaceSpec& space, const PairObjective& objective, const OptConfig& cfg);

// One local search from `start` (unit vectors). The returned value is never
// worse than objective(start).
Estimate local_refine(const SpaceSpec& space, const PairObjective& objective, const PairWitness& start,
                      const OptConfig& cfg, Sense sense = Sense::Maximize);

// 1-D helpers shared by the estimators: maximum of f over [lo, hi] via an
// equispaced scan followed by golden-section search around the best node.
struct ScalarMax {
  double arg = 0.0;
  double value = 0.0;
};
ScalarMax scan_maximize(const std::function<double(double)>& f, double lo, double hi, int points);

}  // namespace isoconst
