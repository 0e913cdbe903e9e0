#include "isoconst/vector.hpp"

#include <cmath>

#include "isoconst/error.hpp"

namespace isoconst {

namespace {
void require_same_dim(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) {
    throw ContractViolation("vector dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}
}  // namespace

bool Vector::all_finite() const noexcept {
  for (double c : coords_) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

bool Vector::is_zero() const noexcept {
  for (double c : coords_) {
    if (c != 0.0) return false;
  }
  return true;
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Vector& Vector::operator*=(double c) {
  for (double& v : coords_) v *= c;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double c, Vector a) { return a *= c; }

Vector combine(double a, const Vector& x, double b, const Vector& y) {
  require_same_dim(x, y);
  Vector out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace isoconst
