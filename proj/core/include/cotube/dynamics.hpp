#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cotube/tube.hpp"

namespace cotube {

/// Hamiltonian on T*Q, with optional exact gradient callbacks; when absent,
/// gradients fall back to central finite differences (step 1e-6).
struct HamiltonianSpec {
  std::function<double(const VectorXd& q, const VectorXd& p)> ambient;
  std::function<VectorXd(const VectorXd& q, const VectorXd& p)> dq;  // optional
  std::function<VectorXd(const VectorXd& q, const VectorXd& p)> dp;  // optional

  /// "free": |p|^2/2. "central": |p|^2/2 + c (|q| - r0)^2 / 2 with
  /// params = {c, r0}. Both are invariant under the orthogonal catalog
  /// actions.
  static HamiltonianSpec catalog(const std::string& kind, const std::vector<double>& params);

  /// Spot-check of G-invariance: max |H(g.z) - H(z)| over samples.
  double invariance_residual(const LinearAction& action, Rng& rng, int samples,
                             double scale = 1.0) const;
};

/// h(nu,a,delta) = H(tube_evaluate at g = identity).
std::function<double(const VectorXd&, const VectorXd&, const VectorXd&)> model_hamiltonian(
    const TubeChart& tc, const HamiltonianSpec& H);

/// z = FL(xi.q) = (q, mass_metric (xi.q)); the resulting chart has alpha = 0.
CotangentPoint relative_equilibrium(const LinearAction& action, const VectorXd& q,
                                    const AlgebraVector& xi, const MatrixXd& mass_metric);

/// Reconstruction (bundle) vector field in slice coordinates for G_mu = G:
/// X_m = D_{m*} h, X_B = D_{B*} h, X_{B*} = -D_B h, and
/// X_{m*} = P_{m*} ad*_{X_m}(rho + J_{N_s}(v)).
struct BundleField {
  VectorXd X_m;      // m-coordinates
  VectorXd X_mstar;  // m*-coordinates
  VectorXd X_B;      // B-coordinates
  VectorXd X_Bstar;  // B*-coordinates
};

BundleField bundle_vector_field(const TubeChart& tc,
                                const std::function<double(const VectorXd&, const VectorXd&,
                                                           const VectorXd&)>& h,
                                const VectorXd& nu, const VectorXd& a, const VectorXd& delta,
                                double fd_step = 1e-6);

/// Reconstruction field blocks for the alpha = 0 refinement, where the
/// normal space splits as N_s(mu) + A + A*. Assembled at a point for
/// reporting; only the fully isotropic case is integrated. The Hamiltonian
/// is a function of (nu in m*, w in N_s(mu) representatives, a, delta).
struct ReconstructionFieldAlpha0 {
  VectorXd X_m;      // m-coordinates
  VectorXd X_mstar;  // m*-coordinates
  VectorXd X_nsmu;   // N_s(mu) representative coordinates
  VectorXd X_A;      // A-coordinates
  VectorXd X_Astar;  // A*-coordinates
};

ReconstructionFieldAlpha0 reconstruction_field_alpha0(
    const SliceChart& chart,
    const std::function<double(const VectorXd&, const VectorXd&, const VectorXd&,
                               const VectorXd&)>& h,
    const VectorXd& nu, const VectorXd& w, const VectorXd& a, const VectorXd& delta,
    double fd_step = 1e-6);

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<ModelPoint> model_states;          // model runs
  std::vector<CotangentPoint> ambient_states;    // ambient runs
  std::vector<VectorXd> momentum;                // J along the trajectory
  std::vector<double> energy;
};

/// Fixed-step integration of the bundle equations; the group factor is
/// advanced by a 4th-order Munthe-Kaas step (exponential of dexpinv-corrected
/// RK4 increments) so iterates stay on the group. Throws if a state leaves
/// the tube validity region, reporting the step index.
TrajectoryRecord integrate_model(const TubeChart& tc, const HamiltonianSpec& H,
                                 const ModelPoint& initial, double dt, int steps);

/// Plain RK4 on Hamilton's equations qdot = dH/dp, pdot = -dH/dq.
TrajectoryRecord integrate_ambient(const LinearAction& action, const HamiltonianSpec& H,
                                   const CotangentPoint& initial, double dt, int steps);

struct FlowComparison {
  double sup_error = 0.0;       // sup_t |tube(model state) - ambient state|
  double momentum_drift = 0.0;  // max |J - J(0)| along the ambient run
  double energy_drift = 0.0;
};

/// Runs both integrators from matched initial conditions (ambient starts at
/// tube_evaluate(initial)) and reports the discrepancies.
FlowComparison compare_flows(const TubeChart& tc, const HamiltonianSpec& H,
                             const ModelPoint& initial, double dt, int steps);

}  // namespace cotube
