#include "isoconst/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "isoconst/error.hpp"

namespace isoconst {

namespace {

void check_grid(const SpaceSpec& space, int resolution) {
  if (space.dim != 2) throw ContractViolation("grid oracle requires a 2-dimensional space");
  if (resolution < 8 || resolution % 8 != 0) {
    throw ContractViolation("grid resolution must be a multiple of 8 and at least 8");
  }
}

double safe_eval(const PairObjective& f, const Vector& x, const Vector& y) {
  try {
    return f(x, y);
  } catch (const NearDegenerate&) {
    return std::numeric_limits<double>::quiet_NaN();
  } catch (const DegenerateInput&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

// sign = +1 searches the maximum, -1 the minimum.
Estimate grid_search(const SpaceSpec& space, const PairObjective& objective, int resolution,
                     const OracleOptions& opts, double sign) {
  check_grid(space, resolution);
  const int R = resolution;
  const double h = 2.0 * std::numbers::pi / R;
  std::vector<Vector> pts;
  pts.reserve(static_cast<std::size_t>(R));
  for (int i = 0; i < R; ++i) pts.push_back(boundary_point_2d(space, h * i));

  std::vector<double> vals(static_cast<std::size_t>(R) * R, std::numeric_limits<double>::quiet_NaN());
  long long evals = 0, skipped = 0;
  int bi = -1, bj = -1;
  double best = 0.0;
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < R; ++j) {
      const double v = safe_eval(objective, pts[i], pts[j]);
      ++evals;
      if (!std::isfinite(v)) {
        ++skipped;
        continue;
      }
      vals[static_cast<std::size_t>(i) * R + j] = v;
      if (bi < 0 || sign * v > sign * best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  if (bi < 0) throw DegenerateObjective("objective is non-finite at every grid node");

  double window = 0.0;
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      const int i = (bi + di + R) % R, j = (bj + dj + R) % R;
      const double v = vals[static_cast<std::size_t>(i) * R + j];
      if (std::isfinite(v)) window = std::max(window, std::abs(v - best));
    }
  }

  Estimate e;
  e.value = best;
  e.witness = {pts[bi], pts[bj], std::nullopt};
  e.cert = Cert::GridCertified;
  e.bound_window = window;

  double cu = h * bi, cv = h * bj, half = h;
  for (int level = 0; level < opts.zoom_levels; ++level) {
    const int n = opts.zoom_points;
    const double step = 2.0 * half / (n - 1);
    double nu = cu, nv = cv;
    double local_window = 0.0;
    for (int a = 0; a < n; ++a) {
      const double tu = cu - half + step * a;
      const Vector x = boundary_point_2d(space, tu);
      for (int b = 0; b < n; ++b) {
        const double tv = cv - half + step * b;
        const Vector y = boundary_point_2d(space, tv);
        const double v = safe_eval(objective, x, y);
        ++evals;
        if (!std::isfinite(v)) {
          ++skipped;
          continue;
        }
        local_window = std::max(local_window, std::abs(v - e.value));
        if (sign * v > sign * e.value) {
          e.value = v;
          e.witness = {x, y, std::nullopt};
          nu = tu;
          nv = tv;
        }
      }
    }
    cu = nu;
    cv = nv;
    half = step;
    e.bound_window = std::min(*e.bound_window, local_window);
  }
  e.evals = evals;
  return e;
}

}  // namespace

Estimate grid_sup_2d(const SpaceSpec& space, const PairObjective& objective, int resolution,
                     const OracleOptions& opts) {
  return grid_search(space, objective, resolution, opts, 1.0);
}

Estimate grid_inf_2d(const SpaceSpec& space, const PairObjective& objective, int resolution,
                     const OracleOptions& opts) {
  return grid_search(space, objective, resolution, opts, -1.0);
}

Estimate constrained_grid_sup_2d(const SpaceSpec& space, const PairObjective& raw_objective, int resolution,
                                 const ToleranceConfig& tol) {
  check_grid(space, resolution);
  const int R = resolution;
  const double h = 2.0 * std::numbers::pi / R;
  std::vector<Vector> pts;
  for (int i = 0; i < R; ++i) pts.push_back(boundary_point_2d(space, h * i));

  Estimate e;
  e.cert = Cert::GridCertified;
  bool found = false;
  long long evals = 0;
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < R; ++j) {
      for (double lam : isosceles_scales(space, pts[i], pts[j], tol)) {
        Vector y = pts[j];
        y *= lam;
        const double v = safe_eval(raw_objective, pts[i], y);
        ++evals;
        if (!std::isfinite(v)) continue;
        if (!found || v > e.value) {
          e.value = v;
          e.witness = {pts[i], std::move(y), lam};
          found = true;
        }
      }
    }
  }
  if (!found) throw DegenerateObjective("no isosceles-orthogonal grid pair gave a finite value");
  e.evals = evals;
  return e;
}

}  // namespace isoconst
