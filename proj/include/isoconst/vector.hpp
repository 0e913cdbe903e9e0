#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace isoconst {

// A point of a finite-dimensional real vector space. Value type; the
// coordinates are plain doubles in the standard basis.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : coords_(dim, 0.0) {}
  Vector(std::initializer_list<double> init) : coords_(init) {}
  explicit Vector(std::vector<double> coords) : coords_(std::move(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& data() const noexcept { return coords_; }

  bool all_finite() const noexcept;
  bool is_zero() const noexcept;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double c);

  friend bool operator==(const Vector&, const Vector&) = default;
  // Lexicographic; used only for deterministic tie-breaking.
  friend auto operator<=>(const Vector& a, const Vector& b) { return a.coords_ <=> b.coords_; }

 private:
  std::vector<double> coords_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(double c, Vector a);

// a*x + b*y
Vector combine(double a, const Vector& x, double b, const Vector& y);

// Euclidean inner product of coordinates (not the space's norm).
double dot(const Vector& a, const Vector& b);

}  // namespace isoconst
