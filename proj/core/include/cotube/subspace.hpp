#pragma once

#include <Eigen/Dense>

#include "cotube/numerics.hpp"

namespace cotube {

/// A linear subspace of R^m held as an m x r matrix of orthonormal basis
/// columns. All ambient inner products in this library are the identity in
/// the working coordinates (the Lie algebra metric is normalized to the
/// identity on the catalog basis, Q carries the Euclidean metric), so
/// orthonormality is plain columns^T columns = I.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(int ambient);
  static Subspace full(int ambient);
  /// Orthonormalizes the given spanning columns (rank-revealing).
  static Subspace span_of(const MatrixXd& columns);
  /// Null space of a linear map given by its matrix.
  static Subspace kernel_of(const MatrixXd& map);
  /// Wraps columns that are already orthonormal (debug-checked).
  static Subspace from_orthonormal(const MatrixXd& columns);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(cols_.cols()); }
  const MatrixXd& columns() const { return cols_; }

  MatrixXd projector() const;                    // P = C C^T
  VectorXd coords_of(const VectorXd& v) const;   // C^T v
  VectorXd embed(const VectorXd& coords) const;  // C coords
  VectorXd project(const VectorXd& v) const;     // C C^T v

  /// Frobenius norm of (I - P_this) other_columns; zero iff other is contained.
  double containment_residual(const Subspace& other) const;
  bool contains(const Subspace& other, double tol = 1e-9) const;
  bool same_as(const Subspace& other, double tol = 1e-9) const;

  /// Orthogonal complement of this inside `inside` (this must be contained).
  Subspace complement_within(const Subspace& inside) const;
  /// Orthogonal complement inside the full ambient space.
  Subspace complement() const;

  static Subspace intersect(const Subspace& a, const Subspace& b);
  static Subspace sum(const Subspace& a, const Subspace& b);

 private:
  int ambient_ = 0;
  MatrixXd cols_;  // ambient_ x dim
};

}  // namespace cotube
