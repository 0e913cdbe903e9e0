#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "isoconst/vector.hpp"

namespace isoconst {

enum class Family { Lp, WeightedLp, Polyhedral, DiscretizedSup };

std::string_view family_name(Family f);

// Exponent of an lp-type norm. Infinity is a distinct state rather than a
// large double so the power formula is never used for the sup norm.
struct Exponent {
  double value = 2.0;
  bool infinite = false;

  static Exponent finite(double p) { return {p, false}; }
  static Exponent inf() { return {0.0, true}; }

  friend bool operator==(const Exponent&, const Exponent&) = default;
};

// Descriptor of a finite-dimensional real normed space. Build through the
// make_* factories or parse_space_spec; both validate.
struct SpaceSpec {
  Family family = Family::Lp;
  std::size_t dim = 2;
  Exponent p;                       // Lp, WeightedLp
  std::vector<double> weights;      // WeightedLp
  std::vector<Vector> functionals;  // Polyhedral, closed under negation
  std::size_t grid = 0;             // DiscretizedSup, equals dim
  double alpha = 0.0;               // DiscretizedSup sample interval
  double beta = 1.0;
  std::string name;                 // optional display label

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

struct ToleranceConfig {
  double eq_tol = 1e-10;      // norm-equality predicates
  double opt_tol = 1e-10;     // local refinement convergence
  double verify_tol = 1e-3;   // identity reports
  double lambda_max = 16.0;   // scan bound for scaling searches

  // 0 < eq_tol <= opt_tol <= verify_tol < 1 and lambda_max > 1.
  void validate() const;
};

SpaceSpec make_lp(double p, std::size_t dim);
SpaceSpec make_lp_inf(std::size_t dim);
SpaceSpec make_weighted_lp(Exponent p, std::vector<double> weights);
// Adds the negation of every functional that is missing one.
SpaceSpec make_polyhedral(std::size_t dim, std::vector<Vector> functionals);
SpaceSpec make_discretized_sup(std::size_t grid, double alpha, double beta);

// Polyhedral norm whose unit ball is the regular 2k-gon with facet normals
// at angles j*pi/k.
SpaceSpec make_regular_polygon(std::size_t k);
SpaceSpec make_octagon();
// `count` random facet directions (plus negations) in dimension `dim`.
SpaceSpec make_random_polyhedral(std::uint64_t seed, std::size_t count, std::size_t dim = 2);

// Throws ValidationError naming the broken rule.
void validate(const SpaceSpec& space);

bool is_hilbert(const SpaceSpec& space);

// Short human label: the explicit name if set, otherwise derived.
std::string label(const SpaceSpec& space);

double norm(const SpaceSpec& space, const Vector& x);
double norm(const SpaceSpec& space, std::span<const double> x);

// ||a*x + b*y|| without allocating.
double norm_combo(const SpaceSpec& space, double a, const Vector& x, double b, const Vector& y);

Vector unit(const SpaceSpec& space, const Vector& x);

// Unit direction (cos t, sin t) with exact values at multiples of pi/4.
Vector direction_2d(double theta);
Vector boundary_point_2d(const SpaceSpec& space, double theta);

// Normalized Gaussian directions from SplitMix64(seed).
std::vector<Vector> sample_unit_vectors(const SpaceSpec& space, std::uint64_t seed, std::size_t n);

// Sample points r_0 = alpha, ..., r_{grid-1} = beta of a discretized-sup space.
std::vector<double> grid_nodes(const SpaceSpec& space);
Vector sample_function(const SpaceSpec& space, const std::function<double(double)>& f);

SpaceSpec parse_space_spec(std::string_view text);
std::string to_json_text(const SpaceSpec& space);

// `lp:<p>:<dim>` with p a number or `inf`.
SpaceSpec parse_space_shorthand(std::string_view text);

}  // namespace isoconst
