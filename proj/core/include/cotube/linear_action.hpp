#pragma once

#include <Eigen/Dense>

#include <memory>
#include <vector>

#include "cotube/lie_group.hpp"
#include "cotube/subspace.hpp"

namespace cotube {

/// Point of T*Q identified with Q + Q*, pairing by dot product.
struct CotangentPoint {
  VectorXd a;      // base point in Q
  VectorXd alpha;  // covector in Q*
};

/// Point of T*(G x A) in left trivialization, G x g* x A x A*. The first and
/// third components are base coordinates, the second and fourth are fibers.
struct GxAPoint {
  GroupElement g;
  VectorXd nu;     // g*-coordinates
  VectorXd a;      // A-coordinates
  VectorXd delta;  // A*-coordinates
};

/// Tangent vector at a GxAPoint, group part in body coordinates.
struct GxATangent {
  VectorXd gdot;      // g
  VectorXd nudot;     // g*
  VectorXd adot;      // A
  VectorXd deltadot;  // A*
};

/// Linear representation of G on Q = R^n together with the induced
/// infinitesimal, dual, and cotangent-lifted actions.
class LinearAction {
 public:
  /// Defining representation of a catalog group (dimQ = matrix dimension).
  static LinearAction standard(std::shared_ptr<const LieGroupModel> group);
  /// Trivial action of the trivial group on R^{dimQ}.
  static LinearAction trivial_on(std::shared_ptr<const LieGroupModel> group, int dimQ);

  const LieGroupModel& group() const { return *group_; }
  std::shared_ptr<const LieGroupModel> group_ptr() const { return group_; }
  int dimQ() const { return dimQ_; }

  /// rho(xi) = sum xi_i rho_i.
  MatrixXd infinitesimal(const AlgebraVector& xi) const;
  const std::vector<MatrixXd>& rho() const { return rho_; }
  /// Matrix of the group element acting on Q.
  MatrixXd act(const GroupElement& g) const;

  VectorXd infinitesimal_action(const AlgebraVector& xi, const VectorXd& a) const;
  /// <xi.alpha, b> = -<alpha, xi.b> for all b.
  VectorXd infinitesimal_dual_action(const AlgebraVector& xi, const VectorXd& alpha) const;

  /// <a diamond_l alpha, xi> = <alpha, xi.a> for xi in l; returned in
  /// l-basis coordinates.
  VectorXd diamond(const VectorXd& a, const VectorXd& alpha, const Subspace& l) const;
  DualVector diamond_full(const VectorXd& a, const VectorXd& alpha) const;

  /// Momentum map of the cotangent lift: J(q,p) = q diamond p.
  DualVector momentum(const CotangentPoint& z) const;

  /// Cotangent-lifted action on T*Q.
  CotangentPoint lift(const GroupElement& g, const CotangentPoint& z) const;

  /// Columns rho_i q; its span is the orbit tangent g.q.
  MatrixXd orbit_map_config(const VectorXd& q) const;

  /// Largest residual of rho([xi,eta]) - [rho(xi),rho(eta)] over basis pairs.
  double representation_residual() const;
  /// Finite-difference residual of d/dt act(exp(t xi)) = rho(xi) at t=0.
  double compatibility_residual(const AlgebraVector& xi, double step) const;

 private:
  enum class RepKind { Defining, TrivialRep };
  std::shared_ptr<const LieGroupModel> group_;
  RepKind rep_ = RepKind::Defining;
  int dimQ_ = 0;
  std::vector<MatrixXd> rho_;
};

/// Momentum map of the lifted left-multiplication action on T*(G x A):
/// J_G(g,nu,a,delta) = Ad*_{g^{-1}} nu.
DualVector momentum_JG(const LinearAction& action, const GxAPoint& x);

/// Momentum map of the lifted twist action of the subgroup with algebra k,
/// J_K(g,nu,a,delta) = -nu|_k + a diamond_k delta, computed in A-coordinates
/// (A given by its orthonormal basis in Q). Returned in k-basis coordinates.
VectorXd momentum_JK(const LinearAction& action, const Subspace& A, const Subspace& k,
                     const GxAPoint& x);

/// Left-trivialized canonical symplectic form on T*(G x A) at base fiber nu:
/// <g1,n2> - <g2,n1> + <nu,[g1,g2]> + <a1,d2> - <a2,d1>.
double canonical_form_left_trivialized(const LieGroupModel& model, const VectorXd& nu,
                                       const GxATangent& v1, const GxATangent& v2);

/// Matrix of the above form in the standard tangent basis
/// (gdot | nudot | adot | deltadot), sized 2 dim(g) + 2 dim(A).
MatrixXd canonical_form_matrix(const LieGroupModel& model, const VectorXd& nu, int dimA);

}  // namespace cotube
