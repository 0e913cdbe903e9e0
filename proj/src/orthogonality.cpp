#include "isoconst/orthogonality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "isoconst/error.hpp"

namespace isoconst {

namespace {

constexpr int kScalePoints = 512;
constexpr int kBirkhoffPoints = 1024;
constexpr int kRobertsPoints = 256;
constexpr int kBisectionSteps = 80;
// Grid nodes kept as roots without bisection must be zeros up to rounding:
// a node merely within eq_tol sits beside the root, and the raw quotients
// evaluated there can overshoot the supremum by the same relative amount.
constexpr double kFlatZero = 1e-14;

double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters = 80) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

// Bisection for the sign change of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < kBisectionSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Euclidean frame (e1, e2) of span{x, w}, e1 along x. Only a path
// parametrization; it carries no metric meaning for the space's norm.
std::optional<std::pair<Vector, Vector>> plane_frame(const Vector& x, const Vector& w) {
  const double xx = dot(x, x);
  if (xx == 0.0) return std::nullopt;
  Vector e1 = x;
  e1 *= 1.0 / std::sqrt(xx);
  Vector e2 = combine(1.0, w, -dot(w, e1), e1);
  const double n2 = std::sqrt(dot(e2, e2));
  if (!(n2 > 1e-12 * std::sqrt(dot(w, w)))) return std::nullopt;
  e2 *= 1.0 / n2;
  return std::make_pair(std::move(e1), std::move(e2));
}

Vector half_circle_point(const SpaceSpec& space, const Vector& e1, const Vector& e2, double phi) {
  return unit(space, combine(std::cos(phi), e1, std::sin(phi), e2));
}

}  // namespace

std::string_view ortho_kind_name(OrthoKind k) {
  switch (k) {
    case OrthoKind::Isosceles: return "isosceles";
    case OrthoKind::Pythagorean: return "pythagorean";
    case OrthoKind::Birkhoff: return "birkhoff";
    case OrthoKind::Roberts: return "roberts";
  }
  return "?";
}

double iso_defect(const SpaceSpec& space, const Vector& x, const Vector& y) {
  return norm_combo(space, 1.0, x, 1.0, y) - norm_combo(space, 1.0, x, -1.0, y);
}

bool orthogonality_test(const SpaceSpec& space, OrthoKind kind, const Vector& x, const Vector& y,
                        const ToleranceConfig& tol) {
  switch (kind) {
    case OrthoKind::Isosceles: {
      const double p = norm_combo(space, 1.0, x, 1.0, y);
      const double m = norm_combo(space, 1.0, x, -1.0, y);
      return std::abs(p - m) <= tol.eq_tol * std::max({p, m, 1.0});
    }
    case OrthoKind::Pythagorean: {
      const double d = norm_combo(space, 1.0, x, -1.0, y);
      const double nx = norm(space, x), ny = norm(space, y);
      return std::abs(d * d - nx * nx - ny * ny) <= tol.eq_tol * (nx * nx + ny * ny + 1.0);
    }
    case OrthoKind::Birkhoff: {
      const double nx = norm(space, x);
      const auto f = [&](double t) { return norm_combo(space, 1.0, x, t, y); };
      const double L = tol.lambda_max;
      const double h = 2.0 * L / (kBirkhoffPoints - 1);
      int best = 0;
      double best_val = f(-L);
      for (int k = 1; k < kBirkhoffPoints; ++k) {
        const double v = f(-L + h * k);
        if (v < best_val) {
          best_val = v;
          best = k;
        }
      }
      const double lo = -L + h * std::max(best - 1, 0);
      const double hi = -L + h * std::min(best + 1, kBirkhoffPoints - 1);
      const double refined = std::min(best_val, golden_min(f, lo, hi));
      return refined >= nx - tol.eq_tol * (nx + 1.0);
    }
    case OrthoKind::Roberts: {
      const double h = tol.lambda_max / (kRobertsPoints - 1);
      for (int k = 0; k < kRobertsPoints; ++k) {
        const double lam = h * k;
        const double p = norm_combo(space, 1.0, x, lam, y);
        const double m = norm_combo(space, 1.0, x, -lam, y);
        if (std::abs(p - m) > tol.eq_tol * std::max({p, m, 1.0})) return false;
      }
      return true;
    }
  }
  return false;
}

PairWitness pair_from_uv(const SpaceSpec& space, const Vector& u, const Vector& v, double scale,
                         const ToleranceConfig& tol) {
  if (!(scale > 0.0)) throw ContractViolation("pair_from_uv needs a positive scale");
  const double nu = norm(space, u), nv = norm(space, v);
  if (std::abs(nu - nv) > tol.eq_tol * std::max({nu, nv, 1.0})) {
    throw ContractViolation("pair_from_uv needs ||u|| = ||v||");
  }
  return PairWitness{combine(scale, u, scale, v), combine(scale, u, -scale, v), std::nullopt};
}

std::vector<double> isosceles_scales(const SpaceSpec& space, const Vector& x, const Vector& y,
                                     const ToleranceConfig& tol) {
  const double h = tol.lambda_max / kScalePoints;
  std::vector<double> g(kScalePoints + 1, 0.0);
  std::vector<char> zero(kScalePoints + 1, 0);
  for (int k = 1; k <= kScalePoints; ++k) {
    const double lam = h * k;
    const double p = norm_combo(space, 1.0, x, lam, y);
    const double m = norm_combo(space, 1.0, x, -lam, y);
    g[k] = p - m;
    zero[k] = std::abs(g[k]) <= std::min(tol.eq_tol, kFlatZero) * std::max({p, m, 1.0});
  }
  const auto defect = [&](double lam) {
    return norm_combo(space, 1.0, x, lam, y) - norm_combo(space, 1.0, x, -lam, y);
  };

  std::vector<double> out;
  int k = 1;
  while (k <= kScalePoints) {
    if (zero[k]) {
      int j = k;
      while (j + 1 <= kScalePoints && zero[j + 1]) ++j;
      out.push_back(h * k);
      for (int m = k + 1; m < j; ++m) {
        if (m % 4 == 0) out.push_back(h * m);
      }
      if (j > k) out.push_back(h * j);
      k = j + 1;
      continue;
    }
    if (k > 1 && !zero[k - 1] && ((g[k - 1] > 0.0) != (g[k] > 0.0))) {
      out.push_back(bisect(defect, h * (k - 1), h * k));
    }
    ++k;
  }
  return out;
}

std::optional<Vector> isosceles_partner(const SpaceSpec& space, const Vector& x, const Vector& w, double lambda) {
  if (!(lambda > 0.0)) throw ContractViolation("isosceles_partner needs lambda > 0");
  const auto frame = plane_frame(x, w);
  if (!frame) return std::nullopt;
  const auto& [e1, e2] = *frame;
  const auto defect = [&](double phi) {
    const Vector y = half_circle_point(space, e1, e2, phi);
    return norm_combo(space, 1.0, x, lambda, y) - norm_combo(space, 1.0, x, -lambda, y);
  };
  const double phi = bisect(defect, 0.0, std::acos(-1.0));
  return half_circle_point(space, e1, e2, phi);
}

std::optional<Vector> chord_partner(const SpaceSpec& space, const Vector& x, const Vector& w, double dist) {
  if (!(dist >= 0.0 && dist <= 2.0)) throw ContractViolation("chord length must lie in [0, 2]");
  const auto frame = plane_frame(x, w);
  if (!frame) return std::nullopt;
  const auto& [e1, e2] = *frame;
  if (dist == 0.0) return half_circle_point(space, e1, e2, 0.0);
  const auto gap = [&](double phi) {
    return norm_combo(space, 1.0, x, -1.0, half_circle_point(space, e1, e2, phi)) - dist;
  };
  const double phi = bisect(gap, 0.0, std::acos(-1.0));
  return half_circle_point(space, e1, e2, phi);
}

}  // namespace isoconst
