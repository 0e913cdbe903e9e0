#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "isoconst/optimizer.hpp"

namespace isoconst {

enum class ConstantId {
  CNJ,           // von Neumann-Jordan constant
  CNJPrime,      // modified von Neumann-Jordan constant (unit sphere)
  A2,
  J,             // James constant, isosceles form
  H,             // isosceles constant, x _|_I y with x, y unit
  HTilde,        // x _|_I lambda y variant; equals A2
  HTildeSq,      // squared variant; equals CNJPrime
  E,             // skew constant E(t)
  EI,            // isosceles skew constant E_I(t); equals E(t)
  LYJPrime,      // modified skew von Neumann-Jordan constant
  LYJI,          // isosceles skew constant L^I_YJ(tau, upsilon)
  CNJI,          // von Neumann-Jordan quotient restricted to isosceles pairs
  DeltaX,        // modulus of convexity at eps
  A2ViaModulus,  // 1 + sup{eps/2 - delta(eps) : sqrt2 <= eps < 2}
};

// Substituted: the constraint is eliminated by u = (x+y)/2, v = (x-y)/2 and
// the supremum is taken over unit pairs. Direct: the raw quotient is
// evaluated on isosceles-orthogonal pairs found by root solving.
enum class EvalMode { Substituted, Direct };

struct ConstantQuery {
  ConstantId id = ConstantId::A2;
  double tau = 1.0;
  double upsilon = 1.0;
  double t = 0.0;
  double eps = 0.0;
  EvalMode mode = EvalMode::Substituted;

  void validate() const;
};

std::string_view constant_id_name(ConstantId id);
// Accepts canonical ids ("L_YJ_I") and CLI spellings ("l-yj-i"), case-insensitively.
std::optional<ConstantId> parse_constant_id(std::string_view text);
std::span<const ConstantId> all_constant_ids();
std::string_view mode_name(EvalMode m);
std::optional<EvalMode> parse_mode(std::string_view text);

bool supports_direct(ConstantId id);
bool uses_tau_upsilon(ConstantId id);
bool uses_t(ConstantId id);
bool uses_eps(ConstantId id);

// One quotient of the catalog evaluated at (a, b).
//   Substituted mode: (a, b) are the unit pair of the reduced supremum.
//     For C_NJ, (a, b) is any nonzero pair; for H, a _|_I b on the sphere
//     and the value includes the inner maximum over lambda in [0, lambda_max];
//     for J it is 2 / max(||a+b||, ||a-b||), the best common scaling of
//     (a+b, a-b) into the unit ball; for delta_X it is 1 - ||a+b||/2.
//   Direct mode: (a, b) must be isosceles orthogonal and not both zero; the
//     raw definition is evaluated (for J, a and b must lie in B_X).
// Throws NearDegenerate when a direct denominator ||a+b|| collapses.
double evaluate_objective(const SpaceSpec& space, const ConstantQuery& q, const Vector& a, const Vector& b,
                          const ToleranceConfig& tol = {});

// Estimate of the supremum (infimum for delta_X). The witness is a pair at
// which evaluate_objective reproduces the value; meta holds the inner
// parameter (s for C_NJ, lambda for H and direct mode, the common ball
// scaling for substituted J, eps for delta_X and A2_via_modulus).
Estimate estimate_constant(const SpaceSpec& space, const ConstantQuery& q, const OptConfig& cfg = {},
                           const ToleranceConfig& tol = {});

double modulus_convexity(const SpaceSpec& space, double eps, const OptConfig& cfg = {});
Estimate modulus_convexity_estimate(const SpaceSpec& space, double eps, const OptConfig& cfg = {});

// Objective 1 - ||x + y||/2 with y the point of the half circle from x
// towards w at distance eps from x.
PairObjective modulus_objective(const SpaceSpec& space, double eps);

Estimate a2_via_modulus(const SpaceSpec& space, const OptConfig& cfg = {});

// Value of the constant on every inner-product space.
double hilbert_reference(const ConstantQuery& q);

struct Interval {
  double lo;
  double hi;
};

// Universal bounds valid in every space, computed from the query's
// parameters. nullopt when no bound is catalogued.
std::optional<Interval> universal_bounds(const ConstantQuery& q);

}  // namespace isoconst
