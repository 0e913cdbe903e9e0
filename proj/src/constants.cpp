#include "isoconst/constants.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include "isoconst/error.hpp"
#include "isoconst/oracle.hpp"
#include "isoconst/rng.hpp"

namespace isoconst {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr std::uint64_t kDirectSalt = 0x5eed'd1ec'7000'0001ULL;

constexpr std::array kAllIds{ConstantId::CNJ,      ConstantId::CNJPrime, ConstantId::A2,     ConstantId::J,
                             ConstantId::H,        ConstantId::HTilde,   ConstantId::HTildeSq, ConstantId::E,
                             ConstantId::EI,       ConstantId::LYJPrime, ConstantId::LYJI,   ConstantId::CNJI,
                             ConstantId::DeltaX,   ConstantId::A2ViaModulus};

double sq(double v) { return v * v; }

struct PlusMinus {
  double plus;
  double minus;
};

PlusMinus plus_minus(const SpaceSpec& s, const Vector& a, const Vector& b) {
  return {norm_combo(s, 1.0, a, 1.0, b), norm_combo(s, 1.0, a, -1.0, b)};
}

double a2_form(const SpaceSpec& s, const Vector& a, const Vector& b) {
  const auto [p, m] = plus_minus(s, a, b);
  return (p + m) / 2.0;
}

double cnj_prime_form(const SpaceSpec& s, const Vector& a, const Vector& b) {
  const auto [p, m] = plus_minus(s, a, b);
  return (sq(p) + sq(m)) / 4.0;
}

double e_form(const SpaceSpec& s, double t, const Vector& a, const Vector& b) {
  return sq(norm_combo(s, 1.0, a, t, b)) + sq(norm_combo(s, t, a, -1.0, b));
}

double cnj_form(const SpaceSpec& s, const Vector& a, const Vector& b) {
  const double na = norm(s, a), nb = norm(s, b);
  const double den = 2.0 * (sq(na) + sq(nb));
  if (!(den > 0.0)) throw ContractViolation("C_NJ needs (x, y) != (0, 0)");
  const auto [p, m] = plus_minus(s, a, b);
  return (sq(p) + sq(m)) / den;
}

// max over lambda in [0, lambda_max] of (1 + lambda) / ||a + lambda b||.
ScalarMax h_inner(const SpaceSpec& s, const Vector& a, const Vector& b, double lambda_max) {
  return scan_maximize([&](double lam) { return (1.0 + lam) / norm_combo(s, 1.0, a, lam, b); }, 0.0, lambda_max,
                       129);
}

ScalarMax cnj_inner(const SpaceSpec& s, const Vector& u, const Vector& v) {
  return scan_maximize(
      [&](double r) {
        const double p = norm_combo(s, 1.0, u, r, v), m = norm_combo(s, 1.0, u, -r, v);
        return (sq(p) + sq(m)) / (2.0 * (1.0 + r * r));
      },
      0.0, 1.0, 33);
}

double near_degenerate_guard(double den, double scale) {
  if (den < 1e-12 * scale) throw NearDegenerate("denominator ||x + y|| is numerically zero");
  return den;
}

// Raw isosceles-constrained quotient; no orthogonality check.
double direct_raw(const SpaceSpec& s, const ConstantQuery& q, const Vector& a, const Vector& b) {
  const double na = norm(s, a), nb = norm(s, b);
  const double scale = std::max(na, nb);
  if (!(scale > 0.0)) throw ContractViolation("direct objective needs (x, y) != (0, 0)");
  const auto [p, m] = plus_minus(s, a, b);
  switch (q.id) {
    case ConstantId::HTilde:
      return (na + nb) / near_degenerate_guard(p, scale);
    case ConstantId::HTildeSq:
      return (sq(na) + sq(nb)) / sq(near_degenerate_guard(p, scale));
    case ConstantId::EI: {
      const double t = q.t;
      const double n1 = norm_combo(s, t + 1.0, a, 1.0 - t, b), n2 = norm_combo(s, 1.0 - t, a, -(t + 1.0), b);
      return (sq(n1) + sq(n2)) / sq(near_degenerate_guard(p, scale));
    }
    case ConstantId::LYJI: {
      const double tau = q.tau, up = q.upsilon;
      const double n1 = norm_combo(s, tau + up, a, up - tau, b), n2 = norm_combo(s, up - tau, a, -(tau + up), b);
      return (sq(n1) + sq(n2)) / (sq(up) * sq(near_degenerate_guard(p, scale)));
    }
    case ConstantId::CNJI:
      return (sq(p) + sq(m)) / (2.0 * (sq(na) + sq(nb)));
    case ConstantId::J:
      return p;
    default:
      throw NotAvailable("no direct form for " + std::string(constant_id_name(q.id)));
  }
}

// The function maximized over unit pairs plus the map from an optimizer
// pair to the reported witness.
struct Prepared {
  PairObjective objective;
  std::function<PairWitness(const PairWitness&)> expand;
};

Prepared prepare_substituted(const SpaceSpec& s, const ConstantQuery& q, const ToleranceConfig& tol) {
  const auto identity = [](const PairWitness& w) { return w; };
  switch (q.id) {
    case ConstantId::CNJ:
      return {[&s](const Vector& u, const Vector& v) { return cnj_inner(s, u, v).value; },
              [&s](const PairWitness& w) {
                const ScalarMax r = cnj_inner(s, w.x, w.y);
                Vector y = w.y;
                y *= r.arg;
                return PairWitness{w.x, std::move(y), r.arg};
              }};
    case ConstantId::H: {
      const double lmax = tol.lambda_max;
      return {[&s, lmax](const Vector& x, const Vector& w) {
                const auto y = isosceles_partner(s, x, w, 1.0);
                if (!y) return kNaN;
                return h_inner(s, x, *y, lmax).value;
              },
              [&s, lmax](const PairWitness& w) {
                const auto y = isosceles_partner(s, w.x, w.y, 1.0);
                if (!y) return w;
                return PairWitness{w.x, *y, h_inner(s, w.x, *y, lmax).arg};
              }};
    }
    case ConstantId::J:
      return {[&s](const Vector& u, const Vector& v) {
                const auto [p, m] = plus_minus(s, u, v);
                return 2.0 / std::max(p, m);
              },
              [&s](const PairWitness& w) {
                const auto [p, m] = plus_minus(s, w.x, w.y);
                return PairWitness{w.x, w.y, 1.0 / std::max(p, m)};
              }};
    default: {
      const ConstantQuery copy = q;
      return {[&s, copy, tol](const Vector& a, const Vector& b) { return evaluate_objective(s, copy, a, b, tol); },
              identity};
    }
  }
}

struct DirectBest {
  double value = kNaN;
  double lambda = 0.0;
};

DirectBest direct_best(const SpaceSpec& s, const ConstantQuery& q, const ToleranceConfig& tol, const Vector& x,
                       const Vector& y) {
  DirectBest best;
  for (double lam : isosceles_scales(s, x, y, tol)) {
    Vector ly = y;
    ly *= lam;
    double v = kNaN;
    try {
      v = direct_raw(s, q, x, ly);
    } catch (const NearDegenerate&) {
      continue;
    }
    if (q.id == ConstantId::J) v /= std::max(1.0, lam);
    if (std::isfinite(v) && (!std::isfinite(best.value) || v > best.value)) best = {v, lam};
  }
  return best;
}

PairWitness direct_witness(const SpaceSpec& s, const ConstantQuery& q, const ToleranceConfig& tol,
                           const PairWitness& w) {
  const DirectBest b = direct_best(s, q, tol, w.x, w.y);
  if (!std::isfinite(b.value)) return w;
  Vector x = w.x, y = w.y;
  y *= b.lambda;
  if (q.id == ConstantId::J) {
    const double m = std::max(1.0, b.lambda);
    x *= 1.0 / m;
    y *= 1.0 / m;
  }
  return {std::move(x), std::move(y), b.lambda};
}

Estimate estimate_direct(const SpaceSpec& s, const ConstantQuery& q, const OptConfig& cfg,
                         const ToleranceConfig& tol) {
  const PairObjective objective = [&](const Vector& x, const Vector& y) {
    return direct_best(s, q, tol, x, y).value;
  };

  std::vector<PairWitness> starts;
  std::optional<Estimate> grid;
  if (s.dim == 2) {
    const ConstantQuery copy = q;
    const PairObjective raw = [&s, copy](const Vector& x, const Vector& y) {
      double v = direct_raw(s, copy, x, y);
      if (copy.id == ConstantId::J) v /= std::max(1.0, norm(s, y));
      return v;
    };
    grid = constrained_grid_sup_2d(s, raw, cfg.direct_resolution, tol);
    starts.push_back({grid->witness.x, unit(s, grid->witness.y), std::nullopt});
  }
  // Feasible seeds: on strictly convex smooth norms a random pair of
  // directions admits an isosceles scaling only on a null set.
  const int seeds = s.dim == 2 ? std::min(cfg.restarts, 8) : cfg.restarts;
  for (int r = 0; r < seeds; ++r) {
    const std::uint64_t seed = derive_seed(cfg.seed ^ kDirectSalt, static_cast<std::uint64_t>(r));
    const auto xw = sample_unit_vectors(s, seed, 2);
    SplitMix64 rng(seed);
    const double lam = std::exp(std::log(tol.lambda_max) * (2.0 * rng.uniform() - 1.0));
    if (auto y = isosceles_partner(s, xw[0], xw[1], lam)) starts.push_back({xw[0], *y, std::nullopt});
  }

  Estimate est = optimize_from_starts(s, objective, cfg, Sense::Maximize, starts);
  est.witness = direct_witness(s, q, tol, est.witness);
  if (grid) {
    est.evals += grid->evals;
    if (grid->value > est.value) {
      est.value = grid->value;
      PairWitness w = grid->witness;
      if (q.id == ConstantId::J && *w.meta > 1.0) {
        w.x *= 1.0 / *w.meta;
        w.y *= 1.0 / *w.meta;
      }
      est.witness = std::move(w);
    }
  }
  est.cert = Cert::HeuristicLowerBound;
  return est;
}

void check_unit(const SpaceSpec& s, const Vector& v, const ToleranceConfig& tol, const char* what) {
  if (std::abs(norm(s, v) - 1.0) > 1e3 * tol.eq_tol) throw ContractViolation(std::string(what) + " must be a unit vector");
}

double modulus_2d_at(const SpaceSpec& s, double eps, double theta, Vector* bx, Vector* by) {
  const Vector x = boundary_point_2d(s, theta);
  double best = kNaN;
  for (double side : {1.0, -1.0}) {
    const Vector w = direction_2d(theta + side * std::numbers::pi / 2.0);
    const auto y = chord_partner(s, x, w, eps);
    if (!y) continue;
    const double v = std::max(0.0, 1.0 - norm_combo(s, 1.0, x, 1.0, *y) / 2.0);
    if (!std::isfinite(best) || v < best) {
      best = v;
      if (bx) *bx = x;
      if (by) *by = *y;
    }
  }
  return best;
}

Estimate modulus_2d(const SpaceSpec& s, double eps) {
  constexpr int kAngles = 512;
  const double h = 2.0 * std::numbers::pi / kAngles;
  double best = kNaN;
  int bk = -1;
  long long evals = 0;
  for (int k = 0; k < kAngles; ++k) {
    const double v = modulus_2d_at(s, eps, h * k, nullptr, nullptr);
    ++evals;
    if (std::isfinite(v) && (bk < 0 || v < best)) {
      best = v;
      bk = k;
    }
  }
  if (bk < 0) throw Infeasible("no chord of the requested length was found");
  const ScalarMax r = scan_maximize(
      [&](double th) {
        ++evals;
        const double v = modulus_2d_at(s, eps, th, nullptr, nullptr);
        return std::isfinite(v) ? -v : -std::numeric_limits<double>::infinity();
      },
      h * (bk - 1), h * (bk + 1), 3);
  Estimate e;
  Vector x, y;
  const double theta = -r.value < best ? r.arg : h * bk;
  e.value = modulus_2d_at(s, eps, theta, &x, &y);
  e.witness = {std::move(x), std::move(y), eps};
  e.cert = Cert::HeuristicUpperBound;
  e.evals = evals;
  return e;
}

}  // namespace

void ConstantQuery::validate() const {
  if (uses_tau_upsilon(id)) {
    if (!(std::isfinite(tau) && tau > 0.0)) throw DomainError("tau must be a positive real");
    if (!(std::isfinite(upsilon) && upsilon > 0.0)) throw DomainError("upsilon must be a positive real");
  }
  if (uses_t(id) && !(std::isfinite(t) && t >= 0.0)) throw DomainError("t must be a real >= 0");
  if (uses_eps(id) && !(eps >= 0.0 && eps <= 2.0)) throw DomainError("eps must lie in [0, 2]");
  if (mode == EvalMode::Direct && !supports_direct(id)) {
    throw DomainError("direct mode is not defined for " + std::string(constant_id_name(id)));
  }
}

std::string_view constant_id_name(ConstantId id) {
  switch (id) {
    case ConstantId::CNJ: return "C_NJ";
    case ConstantId::CNJPrime: return "C_NJ_prime";
    case ConstantId::A2: return "A2";
    case ConstantId::J: return "J";
    case ConstantId::H: return "H";
    case ConstantId::HTilde: return "H_tilde";
    case ConstantId::HTildeSq: return "H_tilde_sq";
    case ConstantId::E: return "E";
    case ConstantId::EI: return "E_I";
    case ConstantId::LYJPrime: return "L_YJ_prime";
    case ConstantId::LYJI: return "L_YJ_I";
    case ConstantId::CNJI: return "C_NJ_I";
    case ConstantId::DeltaX: return "delta_X";
    case ConstantId::A2ViaModulus: return "A2_via_modulus";
  }
  return "?";
}

namespace {

std::string fold(std::string_view text) {
  std::string out;
  for (char c : text) out.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

std::optional<ConstantId> parse_constant_id(std::string_view text) {
  const std::string key = fold(text);
  for (ConstantId id : kAllIds) {
    if (fold(constant_id_name(id)) == key) return id;
  }
  return std::nullopt;
}

std::span<const ConstantId> all_constant_ids() { return kAllIds; }

std::string_view mode_name(EvalMode m) { return m == EvalMode::Direct ? "direct" : "substituted"; }

std::optional<EvalMode> parse_mode(std::string_view text) {
  const std::string key = fold(text);
  if (key == "direct") return EvalMode::Direct;
  if (key == "substituted") return EvalMode::Substituted;
  return std::nullopt;
}

bool supports_direct(ConstantId id) {
  switch (id) {
    case ConstantId::H:
    case ConstantId::HTilde:
    case ConstantId::HTildeSq:
    case ConstantId::EI:
    case ConstantId::LYJI:
    case ConstantId::CNJI:
    case ConstantId::J:
      return true;
    default:
      return false;
  }
}

bool uses_tau_upsilon(ConstantId id) { return id == ConstantId::LYJPrime || id == ConstantId::LYJI; }
bool uses_t(ConstantId id) { return id == ConstantId::E || id == ConstantId::EI; }
bool uses_eps(ConstantId id) { return id == ConstantId::DeltaX; }

double evaluate_objective(const SpaceSpec& space, const ConstantQuery& q, const Vector& a, const Vector& b,
                          const ToleranceConfig& tol) {
  q.validate();
  if (a.dim() != space.dim || b.dim() != space.dim) throw ContractViolation("vector dimension does not match space");
  if (q.mode == EvalMode::Direct && q.id != ConstantId::H) {
    if (a.is_zero() && b.is_zero()) throw ContractViolation("direct objective needs (x, y) != (0, 0)");
    if (!orthogonality_test(space, OrthoKind::Isosceles, a, b, tol)) {
      throw ContractViolation("pair is not isosceles orthogonal");
    }
    if (q.id == ConstantId::J) {
      const double lim = 1.0 + 1e3 * tol.eq_tol;
      if (norm(space, a) > lim || norm(space, b) > lim) throw ContractViolation("J needs x, y in the unit ball");
    }
    return direct_raw(space, q, a, b);
  }

  switch (q.id) {
    case ConstantId::CNJ:
      return cnj_form(space, a, b);
    case ConstantId::CNJPrime:
    case ConstantId::HTildeSq:
      return cnj_prime_form(space, a, b);
    case ConstantId::A2:
    case ConstantId::HTilde:
      return a2_form(space, a, b);
    case ConstantId::J: {
      const auto [p, m] = plus_minus(space, a, b);
      return 2.0 / std::max(p, m);
    }
    case ConstantId::H: {
      check_unit(space, a, tol, "x");
      check_unit(space, b, tol, "y");
      if (!orthogonality_test(space, OrthoKind::Isosceles, a, b, tol)) {
        throw ContractViolation("pair is not isosceles orthogonal");
      }
      return h_inner(space, a, b, tol.lambda_max).value;
    }
    case ConstantId::E:
    case ConstantId::EI:
      return e_form(space, q.t, a, b);
    case ConstantId::LYJPrime: {
      const double tau = q.tau, up = q.upsilon;
      return (sq(norm_combo(space, tau, a, up, b)) + sq(norm_combo(space, up, a, -tau, b))) /
             (2.0 * (sq(tau) + sq(up)));
    }
    case ConstantId::LYJI:
      return e_form(space, q.tau / q.upsilon, a, b);
    case ConstantId::CNJI: {
      const auto [p, m] = plus_minus(space, a, b);
      return 4.0 / (sq(p) + sq(m));
    }
    case ConstantId::DeltaX:
      return 1.0 - norm_combo(space, 1.0, a, 1.0, b) / 2.0;
    case ConstantId::A2ViaModulus:
      break;
  }
  throw NotAvailable("A2_via_modulus has no pointwise objective");
}

Estimate estimate_constant(const SpaceSpec& space, const ConstantQuery& q, const OptConfig& cfg,
                           const ToleranceConfig& tol) {
  q.validate();
  cfg.validate();
  tol.validate();
  if (q.id == ConstantId::DeltaX) return modulus_convexity_estimate(space, q.eps, cfg);
  if (q.id == ConstantId::A2ViaModulus) return a2_via_modulus(space, cfg);
  if (q.mode == EvalMode::Direct && q.id != ConstantId::H) return estimate_direct(space, q, cfg, tol);

  const Prepared prep = prepare_substituted(space, q, tol);
  Estimate est = maximize_pair_objective(space, prep.objective, cfg);
  est.witness = prep.expand(est.witness);
  return est;
}

PairObjective modulus_objective(const SpaceSpec& space, double eps) {
  return [&space, eps](const Vector& x, const Vector& w) {
    const auto y = chord_partner(space, x, w, eps);
    if (!y) return kNaN;
    return std::max(0.0, 1.0 - norm_combo(space, 1.0, x, 1.0, *y) / 2.0);
  };
}

Estimate modulus_convexity_estimate(const SpaceSpec& space, double eps, const OptConfig& cfg) {
  if (!(eps >= 0.0 && eps <= 2.0)) throw DomainError("eps must lie in [0, 2]");
  cfg.validate();
  if (eps == 0.0) {
    const Vector x = space.dim == 2 ? boundary_point_2d(space, 0.0) : sample_unit_vectors(space, cfg.seed, 1)[0];
    Estimate e;
    e.value = 0.0;
    e.witness = {x, x, 0.0};
    e.cert = Cert::Exact;
    return e;
  }
  if (space.dim == 2) return modulus_2d(space, eps);

  Estimate e = minimize_pair_objective(space, modulus_objective(space, eps), cfg);
  if (auto y = chord_partner(space, e.witness.x, e.witness.y, eps)) e.witness.y = *y;
  e.witness.meta = eps;
  return e;
}

double modulus_convexity(const SpaceSpec& space, double eps, const OptConfig& cfg) {
  return modulus_convexity_estimate(space, eps, cfg).value;
}

Estimate a2_via_modulus(const SpaceSpec& space, const OptConfig& cfg) {
  constexpr int kPoints = 64;
  const double lo = kSqrt2, hi = 2.0 - 1e-6;
  const double h = (hi - lo) / (kPoints - 1);
  long long evals = 0;
  std::vector<double> eps(kPoints), delta(kPoints);
  double running = 0.0;
  for (int k = 0; k < kPoints; ++k) {
    eps[k] = k == kPoints - 1 ? hi : lo + h * k;
    const Estimate d = modulus_convexity_estimate(space, eps[k], cfg);
    evals += d.evals;
    running = std::max(running, d.value);
    delta[k] = running;
  }
  int bk = 0;
  for (int k = 1; k < kPoints; ++k) {
    if (eps[k] / 2.0 - delta[k] > eps[bk] / 2.0 - delta[bk]) bk = k;
  }
  const double floor_delta = bk > 0 ? delta[bk - 1] : 0.0;
  const ScalarMax r = scan_maximize(
      [&](double e) {
        const Estimate d = modulus_convexity_estimate(space, e, cfg);
        evals += d.evals;
        return e / 2.0 - std::max(d.value, floor_delta);
      },
      eps[std::max(bk - 1, 0)], eps[std::min(bk + 1, kPoints - 1)], 3);
  const double best_eps = r.value > eps[bk] / 2.0 - delta[bk] ? r.arg : eps[bk];

  Estimate out = modulus_convexity_estimate(space, best_eps, cfg);
  out.value = 1.0 + std::max(r.value, eps[bk] / 2.0 - delta[bk]);
  out.witness.meta = best_eps;
  out.cert = Cert::HeuristicLowerBound;
  out.evals = evals;
  return out;
}

double hilbert_reference(const ConstantQuery& q) {
  q.validate();
  switch (q.id) {
    case ConstantId::CNJ:
    case ConstantId::CNJPrime:
    case ConstantId::HTildeSq:
    case ConstantId::LYJPrime:
    case ConstantId::CNJI:
      return 1.0;
    case ConstantId::A2:
    case ConstantId::J:
    case ConstantId::H:
    case ConstantId::HTilde:
    case ConstantId::A2ViaModulus:
      return kSqrt2;
    case ConstantId::E:
    case ConstantId::EI:
      return 2.0 * (1.0 + sq(q.t));
    case ConstantId::LYJI:
      return 2.0 * (sq(q.tau) + sq(q.upsilon)) / sq(q.upsilon);
    case ConstantId::DeltaX:
      return 1.0 - std::sqrt(1.0 - sq(q.eps) / 4.0);
  }
  throw NotAvailable("no Hilbert reference");
}

std::optional<Interval> universal_bounds(const ConstantQuery& q) {
  q.validate();
  const double tau = q.tau, up = q.upsilon, t = q.t;
  switch (q.id) {
    case ConstantId::CNJ:
    case ConstantId::CNJPrime:
    case ConstantId::HTildeSq:
    case ConstantId::CNJI:
      return Interval{1.0, 2.0};
    case ConstantId::A2:
    case ConstantId::HTilde:
    case ConstantId::J:
    case ConstantId::A2ViaModulus:
      return Interval{kSqrt2, 2.0};
    case ConstantId::E:
    case ConstantId::EI:
      return Interval{2.0 * (1.0 + t * t), 2.0 * sq(1.0 + t)};
    case ConstantId::LYJPrime:
      return Interval{1.0, 1.0 + 2.0 * tau * up / (sq(tau) + sq(up))};
    case ConstantId::LYJI:
      return Interval{2.0 * (sq(tau) + sq(up)) / sq(up), 2.0 * sq(tau + up) / sq(up)};
    case ConstantId::DeltaX:
      return Interval{0.0, 1.0};
    case ConstantId::H:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace isoconst
