#pragma once

#include <Eigen/Dense>

#include "cotube/normal_form.hpp"
#include "cotube/slice_chart.hpp"

namespace cotube {

/// Point of the covering model space G x m* x B x B*.
struct ModelPoint {
  GroupElement g;
  VectorXd nu;     // m*-coordinates
  VectorXd a;      // B-coordinates
  VectorXd delta;  // B*-coordinates
};

struct AmbientCotangent {
  VectorXd point;     // Q
  VectorXd covector;  // Q*
};

/// The constructive symplectic tube at a point with fully isotropic momentum
/// (G_mu = G): the Gamma*_delta solver, the sigma map, the pushforward
/// through the configuration slice, and the composed tube with a certified
/// validity radius for delta.
struct TubeChart {
  SliceChart chart;
  VectorXd mu;       // g*
  VectorXd alpha_A;  // A-coordinates of alpha
  double U_bound = 0.0;        // validity radius for |delta|
  double cond_at_zero = 1.0;   // Gamma-system condition number at delta = 0
  GxAPoint base_x;             // x = (e, mu, 0, alpha)

  int dimM() const { return chart.m.dim(); }
  int dimB() const { return chart.B.dim(); }
};

/// Requires chart.flags.Gmu_full; throws std::domain_error otherwise.
TubeChart build_tube_chart(const SliceChart& chart, double cond_limit = 1e8,
                           std::uint64_t direction_seed = 12345);

/// Square matrix of (xi, eps) -> xi.(alpha+delta) + eps from
/// (m cap k) + B* to A*, in A-coordinates; its conditioning bounds the
/// tube validity region.
MatrixXd gamma_system_matrix(const TubeChart& tc, const VectorXd& delta_B);
double gamma_condition(const TubeChart& tc, const VectorXd& delta_B);

/// The unique c in B^perp with <c, xi.(alpha+delta)+eps> = <nubar,xi> for
/// all xi in m cap k and eps in B*; input nubar in (m cap k)-coordinates,
/// output in A-coordinates. Throws if the system is singular.
VectorXd gamma_star(const TubeChart& tc, const VectorXd& delta_B, const VectorXd& nubar);

/// sigma(g,nu,a,delta) = (g, mu+nu, a + Gamma*_delta(-nu|_{m cap k} +
/// a diamond_{m cap k} delta), alpha+delta). Input: nu in g*-coordinates,
/// a in B-coordinates, delta in B*-coordinates; output in A-coordinates.
/// Checks J_H(input) = 0 within tol.
GxAPoint sigma_map(const TubeChart& tc, const GroupElement& g, const VectorXd& nu,
                   const VectorXd& a_B, const VectorXd& delta_B, double tol = 1e-9);

/// Evaluates T*s^{-1} after the reduction map phi on a point of
/// J_K^{-1}(0): base g.(q+a), covector solved from
/// <p, g.(xi.(q+a) + adot)> = <nu,xi> + <beta,adot> over k^perp + A.
/// Input a, delta in A-coordinates.
AmbientCotangent phi_pushforward(const SliceChart& chart, const GxAPoint& w,
                                 double jk_tol = 1e-9);

/// Exact tangent of phi_pushforward at w along v (group part in body
/// coordinates); returned as the (base velocity, covector velocity) pair.
AmbientCotangent phi_pushforward_differential(const SliceChart& chart, const GxAPoint& w,
                                              const GxATangent& v);

/// The symplectic tube on the covering space: phi_pushforward of sigma
/// applied to (g, nu extended by a diamond_h delta, a, delta). Maps
/// (e,0,0,0) to z.
AmbientCotangent tube_evaluate(const TubeChart& tc, const ModelPoint& m);

/// Same tube through the exchange maps, the cotangent-lifted fiber
/// translation, and the momentum shift; agrees with tube_evaluate pointwise.
AmbientCotangent tube_alternative(const TubeChart& tc, const ModelPoint& m);

/// l(g, sigma, v) = (g, sigma + J_{N_s}(v), v) with J_{N_s}(a,delta) =
/// a diamond_h delta; lands in J_H^{-1}(0). Input sigma in m*-coordinates.
GxAPoint l_map(const TubeChart& tc, const GroupElement& g, const VectorXd& sigma_m,
               const VectorXd& a_B, const VectorXd& delta_B);

/// J_Y([g,sigma,v]) = Ad*_{g^{-1}}(mu + sigma + J_{N_s}(v)).
DualVector model_momentum(const TubeChart& tc, const ModelPoint& m);

/// Exchange map chi: T*W -> T*W*, (a, alpha) -> (alpha, -a).
void exchange_map(const VectorXd& a, const VectorXd& alpha, VectorXd& alpha_out, VectorXd& a_out);

/// H-twist on model coordinates: (g,nu,a,delta) ->
/// (g h^{-1}, h.nu, h.a, h.delta).
ModelPoint model_twist(const TubeChart& tc, const GroupElement& h, const ModelPoint& m);

/// Pullback of the canonical form on T*Q through the covering-space tube
/// map by central finite differences, as a matrix over the covering tangent
/// coordinates (gdot in g | nudot in m* | adot in B | deltadot in B*).
/// With `richardson` the step-halved extrapolant (4 P(h/2) - P(h)) / 3 is
/// returned, cancelling the leading O(h^2) truncation term.
MatrixXd tube_pullback_form_fd(const TubeChart& tc, const ModelPoint& m, double step,
                               bool richardson = false);

/// The matching model-side form: pullback of the left-trivialized canonical
/// form on T*(G x B) through the l map (analytic).
MatrixXd model_side_form(const TubeChart& tc, const ModelPoint& m);

/// Pullback of the canonical form on T*(G x A) through sigma by finite
/// differences, restricted to the given tangent directions of T*(G x B).
MatrixXd sigma_pullback_form_fd(const TubeChart& tc, const GxAPoint& w,
                                const std::vector<GxATangent>& dirs, double step);
/// Canonical form on T*(G x B) over the same directions.
MatrixXd gxb_form_matrix(const TubeChart& tc, const GxAPoint& w,
                         const std::vector<GxATangent>& dirs);

}  // namespace cotube
