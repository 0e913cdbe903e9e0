#include "isoconst/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "isoconst/error.hpp"
#include "isoconst/rng.hpp"

namespace isoconst {

namespace {

constexpr int kSimplexPasses = 4;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Point = std::vector<double>;

// Maps chart coordinates to a pair on the unit sphere.
class Chart {
 public:
  explicit Chart(const SpaceSpec& space) : space_(space), angular_(space.dim == 2) {}

  std::size_t size() const { return angular_ ? 2 : 2 * space_.dim; }

  PairWitness pair(const Point& p) const {
    if (angular_) return {boundary_point_2d(space_, p[0]), boundary_point_2d(space_, p[1]), std::nullopt};
    const std::size_t n = space_.dim;
    Vector a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = p[i];
      b[i] = p[n + i];
    }
    return {unit(space_, a), unit(space_, b), std::nullopt};
  }

  Point coords(const PairWitness& w) const {
    if (angular_) return {std::atan2(w.x[1], w.x[0]), std::atan2(w.y[1], w.y[0])};
    Point p(w.x.data());
    p.insert(p.end(), w.y.data().begin(), w.y.data().end());
    return p;
  }

  // Ambient charts drift in scale; pull them back to the sphere.
  void normalize(Point& p) const {
    if (angular_) return;
    const PairWitness w = pair(p);
    p = coords(w);
  }

 private:
  const SpaceSpec& space_;
  bool angular_;
};

struct Candidate {
  double value = kInf;  // minimization value (sign-flipped for maximize)
  PairWitness witness;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.witness.x != b.witness.x) return a.witness.x < b.witness.x;
  return a.witness.y < b.witness.y;
}

class LocalSearch {
 public:
  LocalSearch(const SpaceSpec& space, const PairObjective& objective, const OptConfig& cfg, Sense sense)
      : chart_(space), objective_(objective), cfg_(cfg), sign_(sense == Sense::Maximize ? -1.0 : 1.0) {}

  long long evals() const { return evals_; }

  double eval_pair(const PairWitness& w) {
    ++evals_;
    double v = 0.0;
    try {
      v = objective_(w.x, w.y);
    } catch (const DegenerateInput&) {
      return kInf;
    } catch (const NearDegenerate&) {
      return kInf;
    }
    if (!std::isfinite(v)) return kInf;
    return sign_ * v;
  }

  double eval(const Point& p) {
    PairWitness w;
    try {
      w = chart_.pair(p);
    } catch (const DegenerateInput&) {
      ++evals_;
      return kInf;
    }
    return eval_pair(w);
  }

  Candidate run(const PairWitness& start) {
    Candidate best{eval_pair(start), start};
    Point p = chart_.coords(start);
    double step = cfg_.simplex_init;
    for (int pass = 0; pass < kSimplexPasses; ++pass) {
      double fp = kInf;
      Point q = nelder_mead(p, step, fp);
      chart_.normalize(q);
      if (!std::isfinite(fp)) break;
      const double improvement = best.value - fp;
      Candidate c{0.0, chart_.pair(q)};
      c.value = eval_pair(c.witness);
      if (better(c, best)) best = c;
      p = chart_.coords(best.witness);
      if (pass > 0 && improvement <= cfg_.opt_tol * (1.0 + std::abs(best.value))) break;
      step *= 0.25;
    }
    return best;
  }

 private:
  Point nelder_mead(const Point& start, double step, double& f_out) {
    const std::size_t d = start.size();
    std::vector<Point> v(d + 1, start);
    std::vector<double> f(d + 1);
    for (std::size_t i = 1; i <= d; ++i) v[i][i - 1] += step;
    for (std::size_t i = 0; i <= d; ++i) f[i] = eval(v[i]);

    std::vector<std::size_t> order(d + 1);
    Point centroid(d), trial(d), trial2(d);
    for (int iter = 0; iter < cfg_.max_iters; ++iter) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
      const std::size_t best = order.front(), worst = order.back(), second = order[d - 1];

      double diameter = 0.0;
      for (std::size_t i = 0; i <= d; ++i) {
        for (std::size_t k = 0; k < d; ++k) diameter = std::max(diameter, std::abs(v[i][k] - v[best][k]));
      }
      const bool flat = std::isfinite(f[worst]) &&
                        (f[worst] - f[best]) <= cfg_.opt_tol * (1.0 + std::abs(f[best]));
      if ((flat && diameter < 1e-7) || diameter < 1e-13) break;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= d; ++i) {
        if (i == worst) continue;
        for (std::size_t k = 0; k < d; ++k) centroid[k] += v[i][k] / static_cast<double>(d);
      }
      for (std::size_t k = 0; k < d; ++k) trial[k] = centroid[k] + (centroid[k] - v[worst][k]);
      const double fr = eval(trial);

      if (fr < f[best]) {
        for (std::size_t k = 0; k < d; ++k) trial2[k] = centroid[k] + 2.0 * (centroid[k] - v[worst][k]);
        const double fe = eval(trial2);
        if (fe < fr) {
          v[worst] = trial2;
          f[worst] = fe;
        } else {
          v[worst] = trial;
          f[worst] = fr;
        }
        continue;
      }
      if (fr < f[second]) {
        v[worst] = trial;
        f[worst] = fr;
        continue;
      }
      const bool outside = fr < f[worst];
      for (std::size_t k = 0; k < d; ++k) {
        trial2[k] = outside ? centroid[k] + 0.5 * (trial[k] - centroid[k])
                            : centroid[k] + 0.5 * (v[worst][k] - centroid[k]);
      }
      const double fc = eval(trial2);
      if ((outside && fc <= fr) || (!outside && fc < f[worst])) {
        v[worst] = trial2;
        f[worst] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= d; ++i) {
        if (i == best) continue;
        for (std::size_t k = 0; k < d; ++k) v[i][k] = v[best][k] + 0.5 * (v[i][k] - v[best][k]);
        f[i] = eval(v[i]);
      }
    }
    const auto it = std::min_element(f.begin(), f.end());
    f_out = *it;
    return v[static_cast<std::size_t>(it - f.begin())];
  }

  Chart chart_;
  const PairObjective& objective_;
  const OptConfig& cfg_;
  double sign_;
  long long evals_ = 0;
};

Estimate to_estimate(const Candidate& c, Sense sense, long long evals) {
  Estimate e;
  e.value = sense == Sense::Maximize ? -c.value : c.value;
  e.witness = c.witness;
  e.cert = sense == Sense::Maximize ? Cert::HeuristicLowerBound : Cert::HeuristicUpperBound;
  e.evals = evals;
  return e;
}

}  // namespace

std::string_view cert_name(Cert c) {
  switch (c) {
    case Cert::GridCertified: return "grid-certified";
    case Cert::HeuristicLowerBound: return "heuristic-lower-bound";
    case Cert::HeuristicUpperBound: return "heuristic-upper-bound";
    case Cert::Exact: return "exact";
  }
  return "?";
}

void OptConfig::validate() const {
  if (restarts < 1) throw ContractViolation("restarts must be >= 1");
  if (max_iters < 1) throw ContractViolation("max_iters must be >= 1");
  if (!(simplex_init > 0.0)) throw ContractViolation("simplex_init must be > 0");
  if (!(opt_tol > 0.0)) throw ContractViolation("opt_tol must be > 0");
  if (lattice < 0 || lattice % 8 != 0) throw ContractViolation("lattice must be a non-negative multiple of 8");
  if (direct_resolution < 8 || direct_resolution % 8 != 0) {
    throw ContractViolation("direct_resolution must be a positive multiple of 8");
  }
}

namespace {

Estimate run_multistart(const SpaceSpec& space, const PairObjective& objective, const OptConfig& cfg, Sense sense,
                        std::span<const PairWitness> extra_starts, bool random_starts) {
  cfg.validate();
  LocalSearch search(space, objective, cfg, sense);
  Candidate best;
  bool found = false;

  const auto try_start = [&](const PairWitness& start) {
    if (!std::isfinite(search.eval_pair(start))) return;
    Candidate c = search.run(start);
    if (!found || better(c, best)) best = c;
    found = true;
  };

  if (random_starts && space.dim == 2 && cfg.lattice > 0) {
    const double h = 2.0 * std::numbers::pi / cfg.lattice;
    std::vector<Vector> pts;
    for (int i = 0; i < cfg.lattice; ++i) pts.push_back(boundary_point_2d(space, h * i));
    Candidate lat;
    bool any = false;
    for (const Vector& u : pts) {
      for (const Vector& v : pts) {
        Candidate c{search.eval_pair({u, v, std::nullopt}), {u, v, std::nullopt}};
        if (std::isfinite(c.value) && (!any || better(c, lat))) {
          lat = c;
          any = true;
        }
      }
    }
    if (any) try_start(lat.witness);
  }
  for (const PairWitness& s : extra_starts) try_start(s);
  for (int r = 0; random_starts && r < cfg.restarts; ++r) {
    const auto uv = sample_unit_vectors(space, derive_seed(cfg.seed, static_cast<std::uint64_t>(r)), 2);
    try_start({uv[0], uv[1], std::nullopt});
  }
  if (!found) throw DegenerateObjective("objective is non-finite at every start");
  return to_estimate(best, sense, search.evals());
}

}  // namespace

Estimate optimize_pair_objective(const SpaceSpec& space, const PairObjective& objective, const OptConfig& cfg,
                                 Sense sense, std::span<const PairWitness> extra_starts) {
  return run_multistart(space, objective, cfg, sense, extra_starts, true);
}

Estimate optimize_from_starts(const SpaceSpec& space, const PairObjective& objective, const OptConfig& cfg,
                              Sense sense, std::span<const PairWitness> starts) {
  return run_multistart(space, objective, cfg, sense, starts, false);
}

Estimate maximize_pair_objective(const SpaceSpec& space, const PairObjective& objective, const OptConfig& cfg) {
  return optimize_pair_objective(space, objective, cfg, Sense::Maximize);
}

Estimate minimize_pair_objective(const SpaceSpec& space, const PairObjective& objective, const OptConfig& cfg) {
  return optimize_pair_objective(space, objective, cfg, Sense::Minimize);
}

Estimate local_refine(const SpaceSpec& space, const PairObjective& objective, const PairWitness& start,
                      const OptConfig& cfg, Sense sense) {
  cfg.validate();
  LocalSearch search(space, objective, cfg, sense);
  if (!std::isfinite(search.eval_pair(start))) throw DegenerateObjective("objective is non-finite at the start");
  const Candidate c = search.run(start);
  return to_estimate(c, sense, search.evals());
}

ScalarMax scan_maximize(const std::function<double(double)>& f, double lo, double hi, int points) {
  if (points < 2 || !(hi >= lo)) throw ContractViolation("scan_maximize needs points >= 2 and hi >= lo");
  const double h = (hi - lo) / (points - 1);
  ScalarMax best{lo, f(lo)};
  int best_k = 0;
  for (int k = 1; k < points; ++k) {
    const double t = k == points - 1 ? hi : lo + h * k;
    const double v = f(t);
    if (v > best.value) {
      best = {t, v};
      best_k = k;
    }
  }
  double a = lo + h * std::max(best_k - 1, 0);
  double b = lo + h * std::min(best_k + 1, points - 1);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 60 && (b - a) > 1e-14 * (1.0 + std::abs(a)); ++i) {
    if (fc >= fd) {
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
  if (fc > best.value) best = {c, fc};
  if (fd > best.value) best = {d, fd};
  return best;
}

}  // namespace isoconst
