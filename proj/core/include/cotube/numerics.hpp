#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

namespace cotube {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Default tolerances used across the library. Exact algebraic identities
/// are checked at `exact`, anything passing through a finite-difference
/// engine at `fd`.
struct Tolerances {
  double exact = 1e-9;
  double fd = 1e-6;
  double fd_step = 1e-5;
  int samples = 50;
};

/// Scale-aware rank threshold: 1e-9 times the largest singular value,
/// floored at 1.
double rank_threshold(double largest_singular_value);

/// Numerical rank of a matrix (SVD based).
int rank_of(const MatrixXd& m);

/// Orthonormal basis of the right null space of `m`, columns sign-normalized
/// so the largest-magnitude entry of each column is positive. A matrix with
/// zero rows has the full identity as its null space.
MatrixXd kernel_basis(const MatrixXd& m);

/// Orthonormal basis of the column span of `m` (sign-normalized).
MatrixXd orthonormal_span(const MatrixXd& m);

/// Canonical symplectic form matrix on R^{2n} = Q + Q*, pairing
/// ((u1,v1),(u2,v2)) -> <v2,u1> - <v1,u2>.
MatrixXd canonical_omega(int n);

/// Deterministic RNG with explicit state. Gaussian variates come from a
/// hand-rolled Box-Muller so streams are identical across standard library
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  double uniform();                // in [0,1)
  double gaussian();
  VectorXd gaussian_vector(int n);
  MatrixXd gaussian_matrix(int rows, int cols);

  std::uint64_t next_raw();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Central finite difference of a vector-valued curve at t = 0.
VectorXd central_difference(const std::function<VectorXd(double)>& curve, double step);

}  // namespace cotube
