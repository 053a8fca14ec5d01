#include "cotube/linear_action.hpp"

namespace cotube {

LinearAction LinearAction::standard(std::shared_ptr<const LieGroupModel> group) {
  LinearAction a;
  a.group_ = std::move(group);
  a.rep_ = RepKind::Defining;
  a.dimQ_ = a.group_->n();
  a.rho_ = a.group_->basis();
  return a;
}

LinearAction LinearAction::trivial_on(std::shared_ptr<const LieGroupModel> group, int dimQ) {
  if (group->dim() != 0)
    throw std::invalid_argument("trivial_on: only the trivial group acts trivially here");
  LinearAction a;
  a.group_ = std::move(group);
  a.rep_ = RepKind::TrivialRep;
  a.dimQ_ = dimQ;
  return a;
}

MatrixXd LinearAction::infinitesimal(const AlgebraVector& xi) const {
  if (xi.coords.size() != group_->dim())
    throw std::invalid_argument("infinitesimal: dimension mismatch");
  MatrixXd m = MatrixXd::Zero(dimQ_, dimQ_);
  for (int i = 0; i < group_->dim(); ++i) m += xi.coords(i) * rho_[i];
  return m;
}

MatrixXd LinearAction::act(const GroupElement& g) const {
  if (rep_ == RepKind::TrivialRep) return MatrixXd::Identity(dimQ_, dimQ_);
  return g.matrix;
}

VectorXd LinearAction::infinitesimal_action(const AlgebraVector& xi, const VectorXd& a) const {
  if (a.size() != dimQ_) throw std::invalid_argument("infinitesimal_action: dimension mismatch");
  return infinitesimal(xi) * a;
}

VectorXd LinearAction::infinitesimal_dual_action(const AlgebraVector& xi,
                                                 const VectorXd& alpha) const {
  if (alpha.size() != dimQ_)
    throw std::invalid_argument("infinitesimal_dual_action: dimension mismatch");
  return -infinitesimal(xi).transpose() * alpha;
}

VectorXd LinearAction::diamond(const VectorXd& a, const VectorXd& alpha,
                               const Subspace& l) const {
  if (a.size() != dimQ_ || alpha.size() != dimQ_ || l.ambient() != group_->dim())
    throw std::invalid_argument("diamond: dimension mismatch");
  VectorXd out(l.dim());
  for (int j = 0; j < l.dim(); ++j)
    out(j) = alpha.dot(infinitesimal_action(AlgebraVector(l.columns().col(j)), a));
  return out;
}

DualVector LinearAction::diamond_full(const VectorXd& a, const VectorXd& alpha) const {
  const int d = group_->dim();
  VectorXd out(d);
  for (int i = 0; i < d; ++i) out(i) = alpha.dot(rho_[i] * a);
  return DualVector(out);
}

DualVector LinearAction::momentum(const CotangentPoint& z) const {
  return diamond_full(z.a, z.alpha);
}

CotangentPoint LinearAction::lift(const GroupElement& g, const CotangentPoint& z) const {
  const MatrixXd m = act(g);
  // Inverse dual action on the covector; for general invertible m this is
  // m^{-T} alpha. Catalog representations are orthogonal.
  return CotangentPoint{m * z.a, m.inverse().transpose() * z.alpha};
}

MatrixXd LinearAction::orbit_map_config(const VectorXd& q) const {
  MatrixXd out(dimQ_, group_->dim());
  for (int i = 0; i < group_->dim(); ++i) out.col(i) = rho_[i] * q;
  return out;
}

double LinearAction::representation_residual() const {
  const int d = group_->dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      VectorXd ei = VectorXd::Zero(d), ej = VectorXd::Zero(d);
      ei(i) = 1.0;
      ej(j) = 1.0;
      const AlgebraVector br = group_->bracket(AlgebraVector(ei), AlgebraVector(ej));
      const MatrixXd lhs = infinitesimal(br);
      const MatrixXd rhs = rho_[i] * rho_[j] - rho_[j] * rho_[i];
      worst = std::max(worst, (lhs - rhs).norm());
    }
  return worst;
}

double LinearAction::compatibility_residual(const AlgebraVector& xi, double step) const {
  const MatrixXd plus = act(group_->exp(AlgebraVector(VectorXd(step * xi.coords))));
  const MatrixXd minus = act(group_->exp(AlgebraVector(VectorXd(-step * xi.coords))));
  return ((plus - minus) / (2.0 * step) - infinitesimal(xi)).norm();
}

DualVector momentum_JG(const LinearAction& action, const GxAPoint& x) {
  return action.group().coadjoint(x.g, DualVector(x.nu));
}

VectorXd momentum_JK(const LinearAction& action, const Subspace& A, const Subspace& k,
                     const GxAPoint& x) {
  if (x.nu.size() != action.group().dim() || x.a.size() != A.dim() ||
      x.delta.size() != A.dim())
    throw std::invalid_argument("momentum_JK: dimension mismatch");
  VectorXd out(k.dim());
  for (int j = 0; j < k.dim(); ++j) {
    const AlgebraVector zeta(k.columns().col(j));
    const MatrixXd rhoA =
        A.columns().transpose() * action.infinitesimal(zeta) * A.columns();
    out(j) = -k.columns().col(j).dot(x.nu) + x.delta.dot(rhoA * x.a);
  }
  return out;
}

double canonical_form_left_trivialized(const LieGroupModel& model, const VectorXd& nu,
                                       const GxATangent& v1, const GxATangent& v2) {
  const AlgebraVector g1(v1.gdot), g2(v2.gdot);
  const AlgebraVector br = model.bracket(g1, g2);
  return v1.gdot.dot(v2.nudot) - v2.gdot.dot(v1.nudot) + nu.dot(br.coords) +
         v1.adot.dot(v2.deltadot) - v2.adot.dot(v1.deltadot);
}

MatrixXd canonical_form_matrix(const LieGroupModel& model, const VectorXd& nu, int dimA) {
  const int d = model.dim();
  const int total = 2 * d + 2 * dimA;
  MatrixXd omega = MatrixXd::Zero(total, total);
  // <g1,n2> - <g2,n1> blocks.
  omega.block(0, d, d, d) = MatrixXd::Identity(d, d);
  omega.block(d, 0, d, d) = -MatrixXd::Identity(d, d);
  // <nu,[g1,g2]> block.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      VectorXd ei = VectorXd::Zero(d), ej = VectorXd::Zero(d);
      ei(i) = 1.0;
      ej(j) = 1.0;
      omega(i, j) += nu.dot(
          model.structure_bracket(AlgebraVector(ei), AlgebraVector(ej)).coords);
    }
  // Canonical T*A block.
  omega.block(2 * d, 2 * d + dimA, dimA, dimA) = MatrixXd::Identity(dimA, dimA);
  omega.block(2 * d + dimA, 2 * d, dimA, dimA) = -MatrixXd::Identity(dimA, dimA);
  return omega;
}

}  // namespace cotube
