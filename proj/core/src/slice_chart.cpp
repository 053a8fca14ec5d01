#include "cotube/slice_chart.hpp"

#include <stdexcept>

namespace cotube {

Subspace isotropy_algebra_config(const LinearAction& action, const VectorXd& q) {
  return Subspace::kernel_of(action.orbit_map_config(q));
}

Subspace isotropy_algebra_point(const LinearAction& action, const CotangentPoint& z) {
  const int d = action.group().dim();
  const int n = action.dimQ();
  MatrixXd stacked(2 * n, d);
  for (int i = 0; i < d; ++i) {
    stacked.col(i).head(n) = action.rho()[i] * z.a;
    stacked.col(i).tail(n) = -action.rho()[i].transpose() * z.alpha;
  }
  return Subspace::kernel_of(stacked);
}

Subspace isotropy_algebra_momentum(const LieGroupModel& model, const DualVector& mu) {
  const int d = model.dim();
  MatrixXd columns(d, d);
  for (int i = 0; i < d; ++i) {
    VectorXd ei = VectorXd::Zero(d);
    ei(i) = 1.0;
    columns.col(i) = model.ad_star(AlgebraVector(ei), mu).coords;
  }
  return Subspace::kernel_of(columns);
}

MatrixXd SliceChart::action_on_A(const VectorXd& xi_g) const {
  return A.columns().transpose() * action.infinitesimal(AlgebraVector(xi_g)) * A.columns();
}

MatrixXd SliceChart::act_on_A(const GroupElement& g) const {
  return A.columns().transpose() * action.act(g) * A.columns();
}

VectorXd SliceChart::diamond_A(const VectorXd& a, const VectorXd& delta,
                               const Subspace& l) const {
  VectorXd out(l.dim());
  for (int j = 0; j < l.dim(); ++j)
    out(j) = delta.dot(action_on_A(l.columns().col(j)) * a);
  return out;
}

VectorXd SliceChart::embed_dual(const Subspace& l, const VectorXd& coords) const {
  return l.columns() * coords;
}

GroupElement SliceChart::sample_subgroup(const Subspace& l, Rng& rng, double radius) const {
  if (l.dim() == 0) return GroupElement(MatrixXd::Identity(action.group().n(), action.group().n()));
  const VectorXd c = radius * rng.gaussian_vector(l.dim());
  return action.group().exp(AlgebraVector(l.embed(c)));
}

SliceChart build_slice_chart(const LinearAction& action, const VectorXd& q, const VectorXd& p) {
  if (q.size() != action.dimQ() || p.size() != action.dimQ())
    throw std::invalid_argument("build_slice_chart: q/p dimension mismatch");

  SliceChart c{action, q, p};
  c.mu = action.momentum(CotangentPoint{q, p}).coords;

  c.k = isotropy_algebra_config(action, q);
  c.h = isotropy_algebra_point(action, CotangentPoint{q, p});
  c.gmu = isotropy_algebra_momentum(action.group(), DualVector(c.mu));
  c.m = c.h.complement();
  c.mk = c.h.complement_within(c.k);

  // A = (g.q)^perp with the Euclidean metric on Q (K-invariant for the
  // catalog actions; spot-checked below).
  const Subspace orbit_q = Subspace::span_of(action.orbit_map_config(q));
  c.A = orbit_q.complement();
  c.alpha = c.A.coords_of(p);

  // B = annihilator of k.alpha inside A; with the Euclidean identification
  // this is the kernel of the pairings against a basis of k.alpha.
  MatrixXd kalpha(c.A.dim(), c.k.dim());
  for (int j = 0; j < c.k.dim(); ++j) {
    const MatrixXd rhoA = c.action_on_A(c.k.columns().col(j));
    kalpha.col(j) = -rhoA.transpose() * c.alpha;  // zeta . alpha, inverse dual
  }
  c.k_alpha_orbit = Subspace::span_of(kalpha);
  c.B = Subspace::kernel_of(c.k_alpha_orbit.columns().transpose());
  c.Bperp = c.B.complement();

  // Spot-check K-invariance of the Q-metric on subgroup samples.
  Rng rng(0xC0FFEE);
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const GroupElement g = c.sample_subgroup(c.k, rng);
    const MatrixXd m = action.act(g);
    worst = std::max(worst, (m.transpose() * m - MatrixXd::Identity(m.rows(), m.cols())).norm());
  }
  if (worst > 1e-8)
    throw std::runtime_error(
        "build_slice_chart: Q-metric failed the K-invariance spot-check (residual " +
        std::to_string(worst) + ")");

  c.flags = check_case_flags(c);
  return c;
}

CaseFlags check_case_flags(const SliceChart& chart) {
  CaseFlags f;
  f.K_subset_Gmu = chart.gmu.contains(chart.k);
  f.alpha_zero = chart.alpha.size() == 0 || chart.alpha.norm() < 1e-10;
  f.Gmu_full = chart.gmu.dim() == chart.dimG();
  f.H_equals_K = chart.h.dim() == chart.k.dim();
  return f;
}

double remark_H_residual(const SliceChart& chart) {
  // k_alpha = {xi in k : xi.alpha = 0}, computed inside k-coordinates.
  MatrixXd pairings(chart.A.dim(), chart.k.dim());
  for (int j = 0; j < chart.k.dim(); ++j) {
    const MatrixXd rhoA = chart.action_on_A(chart.k.columns().col(j));
    pairings.col(j) = -rhoA.transpose() * chart.alpha;
  }
  const MatrixXd null_in_k = kernel_basis(pairings);
  const Subspace k_alpha = Subspace::span_of(chart.k.columns() * null_in_k);
  const Subspace cap = Subspace::intersect(chart.gmu, k_alpha);
  if (cap.dim() != chart.h.dim())
    return 1.0 + std::abs(static_cast<double>(cap.dim() - chart.h.dim()));
  return std::max(cap.containment_residual(chart.h), chart.h.containment_residual(cap));
}

}  // namespace cotube
