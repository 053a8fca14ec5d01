#pragma once

#include <Eigen/Dense>

#include "cotube/slice_chart.hpp"

namespace cotube {

/// Symplectic normal space N_s = ker dJ(z) / g_mu.z, with orthogonal
/// quotient representatives and the reduced form on them. Vectors live in
/// T_z(T*Q) = Q + Q* stacked as (dq; dp).
struct NormalSpaceData {
  Subspace kerdJ;
  Subspace orbit_gmu;
  Subspace reps;        // complement of orbit_gmu inside kerdJ
  MatrixXd omega_red;   // reduced form on reps
  double smallest_retained_sv = 0.0;  // conditioning of the kernel cut
};

NormalSpaceData symplectic_normal_space(const SliceChart& chart);

/// Witt-Artin decomposition T_z(T*Q) = T1 + (T0 + N0) + N1.
struct WittArtinData {
  Subspace T1;  // complement of T0 in g.z
  Subspace T0;  // g_mu.z
  Subspace N0;  // Lagrangian complement of T0 in (T1+N1)^omega
  Subspace N1;  // complement of T0 in ker dJ
};

WittArtinData witt_artin(const SliceChart& chart);

/// KKS form: +/- <mu, [xi,eta]>.
double kks_form(const LieGroupModel& model, const DualVector& mu, int sign,
                const AlgebraVector& xi, const AlgebraVector& eta);

/// The smooth model O_mu x T*A with form omega^-_{O_mu} + omega_{T*A} and
/// the K-action momentum J'_K(nu,a,delta) = -nu|_k + a diamond_k delta.
struct OmuTAModel {
  Subspace tangent;            // T_mu O_mu as a subspace of g* (dim t)
  MatrixXd omega_minus;        // KKS-minus form on the tangent basis
  MatrixXd omega_model;        // block form on (t | A | A*) coordinates
  int dimA = 0;

  /// K-action matrices on model coordinates for a group element fixing mu.
  MatrixXd action_matrix(const SliceChart& chart, const GroupElement& g) const;
};

OmuTAModel model_OmuTA(const SliceChart& chart);

/// J'_K at a model tuple (nu in g*, a and delta in A-coordinates), in
/// k-basis coordinates.
VectorXd model_momentum_JK(const SliceChart& chart, const VectorXd& nu, const VectorXd& a,
                           const VectorXd& delta);

/// A linear map between symplectic vector spaces carried with the two form
/// matrices it is supposed to intertwine: map^T omega_target map = omega_source.
struct SplittingMap {
  MatrixXd map;
  MatrixXd omega_source;
  MatrixXd omega_target;
  double congruence_residual() const;
};

/// Symplectic normal space of the product G x K action at x = (e,mu,0,alpha)
/// inside T*(G x A), plus the three quotient maps realized on orthogonal
/// representatives: to N_s(z), to the G_mu-reduced space, and to the
/// N_s(mu,0,alpha) model inside O_mu x T*A. Coordinates on T_x(T*(G x A))
/// are stacked (gdot d | nudot d | adot r | deltadot r).
struct TangentChainData {
  Subspace ker_x;
  Subspace orbit_x;     // g_mu.x + k.x
  Subspace reps_x;
  MatrixXd omega_x;     // reduced form on reps_x

  SplittingMap piK;     // N_s(x) -> N_s(z) representatives
  SplittingMap piGmu;   // N_s(x) -> reduced-space normal representatives
  SplittingMap theta;   // N_s(x) -> model N_s(mu,0,alpha) representatives

  Subspace R1;          // representatives of T(J_G^{-1}(mu)/G_mu) at x
  Subspace piGmu_target_reps;  // inside R1-coordinates
  Subspace model_reps;  // inside (t | A | A*) coordinates
  OmuTAModel model;

  NormalSpaceData nsd_z;
  double smallest_retained_sv = 0.0;
};

TangentChainData tangent_level_chain(const SliceChart& chart);

/// Composite N_s(z) -> N_s(mu,0,alpha) of the chain (theta after piK^{-1}).
SplittingMap chain_composite(const TangentChainData& chain);

/// Splitting N_s(z) = T_mu O_mu + B + B* available when K is contained in
/// G_mu; target form is KKS-minus on the orbit block plus the canonical form
/// on B + B*.
SplittingMap splitting_K_subset_Gmu(const SliceChart& chart, const NormalSpaceData& nsd);

/// Splitting N_s(z) = N_s(mu) + A + A* available when alpha = 0, with
/// N_s(mu) the symplectic normal space at mu of the K-coadjoint action on
/// (O_mu, omega^-), realized on representatives inside T_mu O_mu.
SplittingMap splitting_alpha0(const SliceChart& chart, const NormalSpaceData& nsd);

/// Representatives of N_s(mu) inside T_mu O_mu (helper shared with reports).
Subspace nsmu_representatives(const SliceChart& chart, const OmuTAModel& model);

/// H-action matrix on the N_s(z) representatives (act then reproject).
MatrixXd h_action_on_reps(const SliceChart& chart, const NormalSpaceData& nsd,
                          const GroupElement& h);

/// H-action matrix on the target coordinates of splitting_K_subset_Gmu.
MatrixXd h_action_on_split_target(const SliceChart& chart, const OmuTAModel& model,
                                  const GroupElement& h);
/// H-action matrix on the target coordinates of splitting_alpha0.
MatrixXd h_action_on_alpha0_target(const SliceChart& chart, const OmuTAModel& model,
                                   const Subspace& nsmu_reps, const GroupElement& h);

}  // namespace cotube
