#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "isoconst/spaces.hpp"

namespace isoconst {

enum class OrthoKind { Isosceles, Pythagorean, Birkhoff, Roberts };

std::string_view ortho_kind_name(OrthoKind k);

// A pair ranged over by a supremum, with an optional scaling parameter
// (lambda, an inner scale, or epsilon depending on the producer).
struct PairWitness {
  Vector x;
  Vector y;
  std::optional<double> meta;
};

// ||x + y|| - ||x - y||. Zero exactly when x is isosceles orthogonal to y.
double iso_defect(const SpaceSpec& space, const Vector& x, const Vector& y);

bool orthogonality_test(const SpaceSpec& space, OrthoKind kind, const Vector& x, const Vector& y,
                        const ToleranceConfig& tol = {});

// x = scale (u + v), y = scale (u - v). When ||u|| = ||v|| the result is
// isosceles orthogonal, so ranging (u, v) over the sphere squared covers
// every orthogonal pair up to scaling.
PairWitness pair_from_uv(const SpaceSpec& space, const Vector& u, const Vector& v, double scale,
                         const ToleranceConfig& tol = {});

// Positive lambda with x isosceles orthogonal to lambda*y, found by scanning
// (0, lambda_max] on 512 points. Sign changes are refined by bisection;
// stretches where the defect vanishes on the grid (up to rounding, 1e-14
// relative) yield representative points instead. Best effort: roots below
// the first grid step are missed.
std::vector<double> isosceles_scales(const SpaceSpec& space, const Vector& x, const Vector& y,
                                     const ToleranceConfig& tol = {});

// Unit y on the half circle from x towards w (within span{x, w}) with
// x isosceles orthogonal to lambda*y. Exists for every lambda > 0 because
// the defect changes sign between y = x and y = -x. Returns nullopt when w
// is parallel to x.
std::optional<Vector> isosceles_partner(const SpaceSpec& space, const Vector& x, const Vector& w, double lambda);

// Unit y on the same half circle with ||x - y|| = dist, 0 <= dist <= 2.
std::optional<Vector> chord_partner(const SpaceSpec& space, const Vector& x, const Vector& w, double dist);

}  // namespace isoconst
