#pragma once

#include <Eigen/Dense>

#include "cotube/linear_action.hpp"

namespace cotube {

struct CaseFlags {
  bool K_subset_Gmu = false;
  bool alpha_zero = false;
  bool Gmu_full = false;
  bool H_equals_K = false;
};

/// All point-local data at z = (q,p): the isotropy algebras k = g_q,
/// h = g_z, g_mu, the linear slice A = (g.q)^perp in Q, alpha = z|_A,
/// B = (k.alpha)^annihilator inside A, and the splittings m = h^perp,
/// k = (m cap k) + h.
struct SliceChart {
  LinearAction action;
  VectorXd q;      // configuration
  VectorXd p;      // conjugate momentum (Q*-coordinates)
  VectorXd mu;     // J(q,p) in g*

  Subspace k;      // isotropy algebra of q, subspace of g
  Subspace h;      // isotropy algebra of z
  Subspace gmu;    // isotropy algebra of mu
  Subspace m;      // h^perp in g
  Subspace mk;     // m cap k (= complement of h inside k)

  Subspace A;      // slice in Q (ambient dimQ)
  VectorXd alpha;  // z|_A in A-coordinates
  Subspace B;      // annihilator of k.alpha inside A (ambient dim A)
  Subspace Bperp;  // orthogonal complement of B in A
  Subspace k_alpha_orbit;  // span of k.alpha inside A* (A-coordinates)

  CaseFlags flags;

  int dimQ() const { return action.dimQ(); }
  int dimG() const { return action.group().dim(); }
  int dimA() const { return A.dim(); }
  int dimB() const { return B.dim(); }

  /// Matrix of the K-invariant infinitesimal action restricted to A,
  /// rho_A(xi) = A^T rho(xi) A, for xi in g-coordinates.
  MatrixXd action_on_A(const VectorXd& xi_g) const;
  /// Matrix of a group element acting on A in A-coordinates.
  MatrixXd act_on_A(const GroupElement& g) const;

  /// a diamond_l delta for a, delta in A-coordinates and l a subspace of g;
  /// returned in l-basis coordinates.
  VectorXd diamond_A(const VectorXd& a, const VectorXd& delta, const Subspace& l) const;

  /// Embeds a covector given in l-basis coordinates into g* (extension by
  /// zero on the orthogonal complement of l).
  VectorXd embed_dual(const Subspace& l, const VectorXd& coords) const;

  /// Haar-ish sample of the identity component of the subgroup with
  /// algebra l (exp of a uniform ball sample in l).
  GroupElement sample_subgroup(const Subspace& l, Rng& rng, double radius = 3.0) const;
};

/// Kernel of xi -> xi.q.
Subspace isotropy_algebra_config(const LinearAction& action, const VectorXd& q);
/// Kernel of xi -> (xi.q, xi.p).
Subspace isotropy_algebra_point(const LinearAction& action, const CotangentPoint& z);
/// Kernel of xi -> ad*_xi mu.
Subspace isotropy_algebra_momentum(const LieGroupModel& model, const DualVector& mu);

/// Assembles the full chart at z = (q,p). Throws if the Euclidean metric on
/// Q fails the K-invariance spot-check (possible only for user extensions).
SliceChart build_slice_chart(const LinearAction& action, const VectorXd& q, const VectorXd& p);

CaseFlags check_case_flags(const SliceChart& chart);

/// Residual of the identity h = gmu cap k_alpha (both containments).
double remark_H_residual(const SliceChart& chart);

}  // namespace cotube
