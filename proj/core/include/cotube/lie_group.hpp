#pragma once

#include <Eigen/Dense>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cotube/numerics.hpp"
#include "cotube/subspace.hpp"

namespace cotube {

/// Element of the Lie algebra g in basis coordinates.
struct AlgebraVector {
  VectorXd coords;
  AlgebraVector() = default;
  explicit AlgebraVector(VectorXd c) : coords(std::move(c)) {}
};

/// Element of g*, paired against AlgebraVector by the Euclidean dot product
/// of coordinates (the basis of g* is dual to the basis of g).
struct DualVector {
  VectorXd coords;
  DualVector() = default;
  explicit DualVector(VectorXd c) : coords(std::move(c)) {}
};

struct GroupElement {
  MatrixXd matrix;
  GroupElement() = default;
  explicit GroupElement(MatrixXd m) : matrix(std::move(m)) {}
};

/// A matrix Lie group with a fixed algebra basis: structure constants,
/// exponential, (co)adjoint operators, an invariant inner product on g, and
/// Haar sampling for the catalog kinds (SO(2), SO(3), tori as block-diagonal
/// rotations, finite products of these, and the trivial group).
class LieGroupModel {
 public:
  enum class Kind { SO2, SO3, Torus, Product, Trivial };

  static LieGroupModel so2();
  static LieGroupModel so3();
  static LieGroupModel torus(int k);
  static LieGroupModel trivial();
  static LieGroupModel product(const std::vector<LieGroupModel>& factors);

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  int n() const { return n_; }              // matrix dimension
  int dim() const { return d_; }            // algebra dimension
  const std::vector<MatrixXd>& basis() const { return basis_; }
  const MatrixXd& metric() const { return metric_; }
  void set_metric(const MatrixXd& metric);

  /// Structure constants c^k_{ij} with [E_i,E_j] = sum_k c^k_{ij} E_k,
  /// stored as d matrices indexed by k.
  const std::vector<MatrixXd>& structure() const { return structure_; }

  MatrixXd algebra_matrix(const AlgebraVector& xi) const;  // sum xi_i E_i
  /// Expands a matrix in the algebra basis; residual above tolerance throws.
  VectorXd algebra_coords(const MatrixXd& m) const;

  AlgebraVector bracket(const AlgebraVector& xi, const AlgebraVector& eta) const;
  /// Bracket evaluated through the stored structure constants.
  AlgebraVector structure_bracket(const AlgebraVector& xi, const AlgebraVector& eta) const;

  GroupElement exp(const AlgebraVector& xi) const;
  GroupElement inverse(const GroupElement& g) const;
  bool is_in_group(const GroupElement& g, double tol = 1e-10) const;

  AlgebraVector Ad(const GroupElement& g, const AlgebraVector& xi) const;
  /// <Ad_star(g,nu), xi> = <nu, Ad(g,xi)>.
  DualVector Ad_star(const GroupElement& g, const DualVector& nu) const;
  /// <ad_star(xi,nu), eta> = <nu, [xi,eta]>.
  DualVector ad_star(const AlgebraVector& xi, const DualVector& nu) const;
  /// Coadjoint action g . nu = Ad*_{g^{-1}} nu.
  DualVector coadjoint(const GroupElement& g, const DualVector& nu) const;

  MatrixXd Ad_matrix(const GroupElement& g) const;        // d x d, columns Ad(g,E_i)
  MatrixXd ad_star_matrix(const AlgebraVector& xi) const; // d x d, nu -> ad*_xi nu
  MatrixXd coadjoint_matrix(const GroupElement& g) const; // nu -> Ad*_{g^{-1}} nu

  GroupElement haar_sample(Rng& rng) const;

  /// Largest Jacobi-identity residual of the stored structure constants.
  double jacobi_residual() const;
  /// Largest bracket-closure residual over basis pairs.
  double closure_residual() const;
  /// Spot-check of Ad_H-invariance of the metric over group samples.
  double metric_invariance_residual(Rng& rng, int samples) const;

  /// Orthogonal complement of S inside `inside` with respect to an SPD
  /// metric on the ambient coordinates (defaults to the model metric when
  /// ambient == dim). Throws if S is not contained in `inside`.
  static Subspace orthogonal_complement(const Subspace& s, const Subspace& inside,
                                        const MatrixXd& metric);

 private:
  LieGroupModel() = default;
  void finalize();  // structure constants, cached expansions, checks

  std::string name_;
  Kind kind_ = Kind::Trivial;
  int n_ = 1;
  int d_ = 0;
  std::vector<MatrixXd> basis_;
  std::vector<MatrixXd> structure_;
  MatrixXd metric_;
  std::vector<LieGroupModel> factors_;          // Product only
  std::vector<int> factor_n_, factor_d_;        // block offsets
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> basis_expand_;  // flattened basis
};

}  // namespace cotube
