#include "cotube/subspace.hpp"

#include <stdexcept>

namespace cotube {

Subspace Subspace::zero(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.cols_ = MatrixXd(ambient, 0);
  return s;
}

Subspace Subspace::full(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.cols_ = MatrixXd::Identity(ambient, ambient);
  return s;
}

Subspace Subspace::span_of(const MatrixXd& columns) {
  Subspace s;
  s.ambient_ = static_cast<int>(columns.rows());
  s.cols_ = orthonormal_span(columns);
  return s;
}

Subspace Subspace::kernel_of(const MatrixXd& map) {
  Subspace s;
  s.ambient_ = static_cast<int>(map.cols());
  s.cols_ = kernel_basis(map);
  return s;
}

Subspace Subspace::from_orthonormal(const MatrixXd& columns) {
  Subspace s;
  s.ambient_ = static_cast<int>(columns.rows());
  s.cols_ = columns;
  if (columns.cols() > 0) {
    const double res =
        (columns.transpose() * columns - MatrixXd::Identity(columns.cols(), columns.cols()))
            .norm();
    if (res > 1e-8) throw std::invalid_argument("Subspace: columns are not orthonormal");
  }
  return s;
}

MatrixXd Subspace::projector() const { return cols_ * cols_.transpose(); }

VectorXd Subspace::coords_of(const VectorXd& v) const { return cols_.transpose() * v; }

VectorXd Subspace::embed(const VectorXd& coords) const { return cols_ * coords; }

VectorXd Subspace::project(const VectorXd& v) const { return cols_ * (cols_.transpose() * v); }

double Subspace::containment_residual(const Subspace& other) const {
  if (other.dim() == 0) return 0.0;
  return (other.cols_ - cols_ * (cols_.transpose() * other.cols_)).norm();
}

bool Subspace::contains(const Subspace& other, double tol) const {
  return containment_residual(other) < tol;
}

bool Subspace::same_as(const Subspace& other, double tol) const {
  return dim() == other.dim() && contains(other, tol) && other.contains(*this, tol);
}

Subspace Subspace::complement_within(const Subspace& inside) const {
  if (inside.containment_residual(*this) > 1e-8)
    throw std::invalid_argument("complement_within: subspace not contained in the ambient one");
  // Null space of (this in inside-coordinates), embedded back.
  const MatrixXd coords = inside.cols_.transpose() * cols_;  // t x r
  const MatrixXd null_in = kernel_basis(coords.transpose()); // t x (t-r)
  Subspace out;
  out.ambient_ = ambient_;
  out.cols_ = inside.cols_ * null_in;  // product of orthonormal factors
  return out;
}

Subspace Subspace::complement() const {
  Subspace out;
  out.ambient_ = ambient_;
  out.cols_ = kernel_basis(cols_.transpose());
  return out;
}

Subspace Subspace::intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) throw std::invalid_argument("intersect: ambient mismatch");
  const int m = a.ambient_;
  MatrixXd stacked(2 * m, m);
  stacked.topRows(m) = MatrixXd::Identity(m, m) - a.projector();
  stacked.bottomRows(m) = MatrixXd::Identity(m, m) - b.projector();
  return Subspace::kernel_of(stacked);
}

Subspace Subspace::sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) throw std::invalid_argument("sum: ambient mismatch");
  MatrixXd joined(a.ambient_, a.dim() + b.dim());
  joined.leftCols(a.dim()) = a.cols_;
  joined.rightCols(b.dim()) = b.cols_;
  return Subspace::span_of(joined);
}

}  // namespace cotube
