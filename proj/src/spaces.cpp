#include "isoconst/spaces.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "isoconst/error.hpp"
#include "isoconst/rng.hpp"

namespace isoconst {

namespace {

constexpr std::size_t kStackDim = 64;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double pow_p(double t, double p) {
  if (p == 1.5) return t * std::sqrt(t);
  if (p == 3.0) return t * t * t;
  if (p == 4.0) return (t * t) * (t * t);
  return std::pow(t, p);
}

double root_p(double s, double p) {
  if (p == 3.0) return std::cbrt(s);
  if (p == 1.5) return std::cbrt(s * s);
  return std::pow(s, 1.0 / p);
}

// Shared by Lp (weights == nullptr) and WeightedLp. The weighted sup norm is
// max w_i |x_i|; finite p uses (sum w_i |x_i|^p)^(1/p).
double lp_norm(std::span<const double> x, const Exponent& p, const double* weights) {
  const auto w = [weights](std::size_t i) { return weights != nullptr ? weights[i] : 1.0; };
  double m = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("non-finite vector entry");
    m = std::max(m, std::abs(v));
  }
  if (p.infinite) {
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, w(i) * std::abs(x[i]));
    return best;
  }
  if (p.value == 1.0) {
    CompensatedSum s;
    for (std::size_t i = 0; i < x.size(); ++i) s.add(w(i) * std::abs(x[i]));
    return s.value();
  }
  if (m == 0.0) return 0.0;
  if (p.value == 2.0) {
    CompensatedSum s;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = x[i] / m;
      s.add(w(i) * r * r);
    }
    return m * std::sqrt(s.value());
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w(i) * pow_p(std::abs(x[i]) / m, p.value);
  return m * root_p(s, p.value);
}

double polyhedral_norm(std::span<const double> x, const std::vector<Vector>& functionals) {
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("non-finite vector entry");
  }
  double best = 0.0;
  for (const Vector& a : functionals) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += a[i] * x[i];
    best = std::max(best, std::abs(s));
  }
  return best;
}

double sup_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("non-finite vector entry");
    m = std::max(m, std::abs(v));
  }
  return m;
}

std::size_t numeric_rank(std::vector<Vector> rows, std::size_t dim) {
  double scale = 0.0;
  for (const Vector& r : rows) {
    for (double v : r.coords()) scale = std::max(scale, std::abs(v));
  }
  const double eps = 1e-12 * std::max(scale, 1.0);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
    }
    if (std::abs(rows[pivot][col]) <= eps) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const double f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < dim; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Lp: return "lp";
    case Family::WeightedLp: return "weighted-lp";
    case Family::Polyhedral: return "polyhedral";
    case Family::DiscretizedSup: return "discretized-sup";
  }
  return "?";
}

void ToleranceConfig::validate() const {
  if (!(eq_tol > 0.0 && eq_tol <= opt_tol && opt_tol <= verify_tol && verify_tol < 1.0)) {
    throw ContractViolation("tolerances must satisfy 0 < eq_tol <= opt_tol <= verify_tol < 1");
  }
  if (!(lambda_max > 1.0) || !std::isfinite(lambda_max)) {
    throw ContractViolation("lambda_max must be a finite value > 1");
  }
}

void validate(const SpaceSpec& s) {
  if (s.dim < 1) throw ValidationError("dim must be ≥ 1");
  switch (s.family) {
    case Family::Lp:
    case Family::WeightedLp:
      if (!s.p.infinite) {
        if (!std::isfinite(s.p.value)) throw ValidationError("p must be finite or \"inf\"");
        if (!(s.p.value >= 1.0)) throw ValidationError("p must be ≥ 1");
      }
      if (s.family == Family::WeightedLp) {
        if (s.weights.size() != s.dim) throw ValidationError("weights count must equal dim");
        for (double w : s.weights) {
          if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("weights must be finite and > 0");
        }
      }
      break;
    case Family::Polyhedral: {
      if (s.functionals.empty()) throw ValidationError("polyhedral norm needs at least one functional");
      for (const Vector& a : s.functionals) {
        if (a.dim() != s.dim) throw ValidationError("functional dimension must equal dim");
        if (!a.all_finite()) throw ValidationError("functional entries must be finite");
      }
      for (const Vector& a : s.functionals) {
        if (std::find(s.functionals.begin(), s.functionals.end(), -a) == s.functionals.end()) {
          throw ValidationError("functionals must be closed under negation");
        }
      }
      if (numeric_rank(s.functionals, s.dim) < s.dim) {
        throw ValidationError("functionals must span the space (rank deficient)");
      }
      break;
    }
    case Family::DiscretizedSup:
      if (s.grid < 2) throw ValidationError("grid must be ≥ 2");
      if (s.dim != s.grid) throw ValidationError("discretized-sup dim must equal grid");
      if (!std::isfinite(s.alpha) || !std::isfinite(s.beta) || !(s.alpha < s.beta)) {
        throw ValidationError("alpha < beta required");
      }
      break;
  }
}

SpaceSpec make_lp(double p, std::size_t dim) {
  SpaceSpec s;
  s.family = Family::Lp;
  s.dim = dim;
  s.p = std::isinf(p) ? Exponent::inf() : Exponent::finite(p);
  validate(s);
  return s;
}

SpaceSpec make_lp_inf(std::size_t dim) { return make_lp(std::numeric_limits<double>::infinity(), dim); }

SpaceSpec make_weighted_lp(Exponent p, std::vector<double> weights) {
  SpaceSpec s;
  s.family = Family::WeightedLp;
  s.dim = weights.size();
  s.p = p;
  s.weights = std::move(weights);
  validate(s);
  return s;
}

SpaceSpec make_polyhedral(std::size_t dim, std::vector<Vector> functionals) {
  SpaceSpec s;
  s.family = Family::Polyhedral;
  s.dim = dim;
  for (const Vector& a : functionals) {
    if (a.dim() != dim) throw ValidationError("functional dimension must equal dim");
    if (!a.all_finite()) throw ValidationError("functional entries must be finite");
    if (a.is_zero()) continue;
    if (std::find(s.functionals.begin(), s.functionals.end(), a) == s.functionals.end()) {
      s.functionals.push_back(a);
    }
  }
  const std::size_t base = s.functionals.size();
  for (std::size_t i = 0; i < base; ++i) {
    Vector neg = -s.functionals[i];
    if (std::find(s.functionals.begin(), s.functionals.end(), neg) == s.functionals.end()) {
      s.functionals.push_back(std::move(neg));
    }
  }
  validate(s);
  return s;
}

SpaceSpec make_discretized_sup(std::size_t grid, double alpha, double beta) {
  SpaceSpec s;
  s.family = Family::DiscretizedSup;
  s.dim = grid;
  s.grid = grid;
  s.alpha = alpha;
  s.beta = beta;
  validate(s);
  return s;
}

SpaceSpec make_regular_polygon(std::size_t k) {
  if (k < 2) throw ContractViolation("regular polygon needs k >= 2 facet pairs");
  std::vector<Vector> fs;
  for (std::size_t j = 0; j < k; ++j) {
    fs.push_back(direction_2d(std::numbers::pi * static_cast<double>(j) / static_cast<double>(k)));
  }
  return make_polyhedral(2, std::move(fs));
}

SpaceSpec make_octagon() {
  SpaceSpec s = make_regular_polygon(4);
  s.name = "octagon";
  return s;
}

SpaceSpec make_random_polyhedral(std::uint64_t seed, std::size_t count, std::size_t dim) {
  if (count < dim) throw ContractViolation("need at least dim functionals");
  SplitMix64 rng(seed);
  std::vector<Vector> fs;
  for (std::size_t j = 0; j < count; ++j) {
    Vector a(dim);
    for (std::size_t i = 0; i < dim; ++i) a[i] = rng.gaussian();
    // Radii in [0.8, 1.2] keep the ball away from a regular polygon.
    const double r = (0.8 + 0.4 * rng.uniform()) / std::sqrt(dot(a, a));
    fs.push_back(r * a);
  }
  SpaceSpec s = make_polyhedral(dim, std::move(fs));
  s.name = "randpoly-" + std::to_string(dim) + "-s" + std::to_string(seed);
  return s;
}

bool is_hilbert(const SpaceSpec& s) {
  if (s.dim == 1) return true;
  return (s.family == Family::Lp || s.family == Family::WeightedLp) && !s.p.infinite && s.p.value == 2.0;
}

std::string label(const SpaceSpec& s) {
  if (!s.name.empty()) return s.name;
  const std::string p = s.p.infinite ? "inf" : format_number(s.p.value);
  switch (s.family) {
    case Family::Lp: return "lp:" + p + ":" + std::to_string(s.dim);
    case Family::WeightedLp: return "weighted-lp:" + p + ":" + std::to_string(s.dim);
    case Family::Polyhedral:
      return "polyhedral:" + std::to_string(s.dim) + ":" + std::to_string(s.functionals.size());
    case Family::DiscretizedSup: return "discretized-sup:" + std::to_string(s.grid);
  }
  return "?";
}

double norm(const SpaceSpec& space, std::span<const double> x) {
  if (x.size() != space.dim) {
    throw ContractViolation("vector dimension " + std::to_string(x.size()) + " does not match space dimension " +
                            std::to_string(space.dim));
  }
  switch (space.family) {
    case Family::Lp: return lp_norm(x, space.p, nullptr);
    case Family::WeightedLp: return lp_norm(x, space.p, space.weights.data());
    case Family::Polyhedral: return polyhedral_norm(x, space.functionals);
    case Family::DiscretizedSup: return sup_norm(x);
  }
  return 0.0;
}

double norm(const SpaceSpec& space, const Vector& x) { return norm(space, x.coords()); }

double norm_combo(const SpaceSpec& space, double a, const Vector& x, double b, const Vector& y) {
  const std::size_t n = x.dim();
  if (y.dim() != n) throw ContractViolation("vector dimension mismatch");
  if (n <= kStackDim) {
    std::array<double, kStackDim> buf;
    for (std::size_t i = 0; i < n; ++i) buf[i] = a * x[i] + b * y[i];
    return norm(space, std::span<const double>(buf.data(), n));
  }
  return norm(space, combine(a, x, b, y));
}

Vector unit(const SpaceSpec& space, const Vector& x) {
  const double n = norm(space, x);
  if (n == 0.0) throw DegenerateInput("cannot normalize the zero vector");
  Vector out = x;
  out *= 1.0 / n;
  return out;
}

Vector direction_2d(double theta) {
  constexpr double quarter = std::numbers::pi / 4.0;
  const double k = std::round(theta / quarter);
  if (std::abs(theta - k * quarter) <= 1e-13 * std::max(1.0, std::abs(theta))) {
    static const double s = std::sqrt(0.5);
    static const std::array<std::array<double, 2>, 8> table{{
        {1.0, 0.0}, {s, s}, {0.0, 1.0}, {-s, s}, {-1.0, 0.0}, {-s, -s}, {0.0, -1.0}, {s, -s}}};
    long idx = static_cast<long>(std::fmod(k, 8.0));
    if (idx < 0) idx += 8;
    return Vector{table[static_cast<std::size_t>(idx)][0], table[static_cast<std::size_t>(idx)][1]};
  }
  return Vector{std::cos(theta), std::sin(theta)};
}

Vector boundary_point_2d(const SpaceSpec& space, double theta) {
  if (space.dim != 2) throw ContractViolation("boundary_point_2d requires a 2-dimensional space");
  if (!std::isfinite(theta)) throw DomainError("non-finite angle");
  return unit(space, direction_2d(theta));
}

std::vector<Vector> sample_unit_vectors(const SpaceSpec& space, std::uint64_t seed, std::size_t n) {
  if (n < 1) throw ContractViolation("sample_unit_vectors needs n >= 1");
  SplitMix64 rng(seed);
  std::vector<Vector> out;
  out.reserve(n);
  while (out.size() < n) {
    Vector g(space.dim);
    for (std::size_t i = 0; i < space.dim; ++i) g[i] = rng.gaussian();
    if (g.is_zero()) continue;
    out.push_back(unit(space, g));
  }
  return out;
}

double SplitMix64::gaussian() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> grid_nodes(const SpaceSpec& space) {
  if (space.family != Family::DiscretizedSup) throw ContractViolation("grid_nodes needs a discretized-sup space");
  std::vector<double> r(space.grid);
  const double h = (space.beta - space.alpha) / static_cast<double>(space.grid - 1);
  for (std::size_t k = 0; k < space.grid; ++k) r[k] = space.alpha + h * static_cast<double>(k);
  r.back() = space.beta;
  return r;
}

Vector sample_function(const SpaceSpec& space, const std::function<double(double)>& f) {
  const std::vector<double> r = grid_nodes(space);
  Vector v(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) v[k] = f(r[k]);
  return v;
}

SpaceSpec parse_space_shorthand(std::string_view text) {
  const std::string s(text);
  const auto c1 = s.find(':');
  const auto c2 = s.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos || s.substr(0, c1) != "lp") {
    throw ParseError("expected shorthand lp:<p>:<dim>", 0);
  }
  const std::string ptext = s.substr(c1 + 1, c2 - c1 - 1);
  const std::string dtext = s.substr(c2 + 1);
  double p = 0.0;
  if (ptext == "inf") {
    p = std::numeric_limits<double>::infinity();
  } else {
    try {
      std::size_t used = 0;
      p = std::stod(ptext, &used);
      if (used != ptext.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("bad exponent '" + ptext + "'", c1 + 1);
    }
  }
  long dim = 0;
  try {
    std::size_t used = 0;
    dim = std::stol(dtext, &used);
    if (used != dtext.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError("bad dimension '" + dtext + "'", c2 + 1);
  }
  if (dim < 1) throw ValidationError("dim must be ≥ 1");
  return make_lp(p, static_cast<std::size_t>(dim));
}

}  // namespace isoconst
