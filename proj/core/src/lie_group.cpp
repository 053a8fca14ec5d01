#include "cotube/lie_group.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace cotube {

namespace {

MatrixXd so2_generator() {
  MatrixXd e(2, 2);
  e << 0, -1, 1, 0;
  return e;
}

std::vector<MatrixXd> so3_basis() {
  MatrixXd e1 = MatrixXd::Zero(3, 3), e2 = MatrixXd::Zero(3, 3), e3 = MatrixXd::Zero(3, 3);
  e1(1, 2) = -1; e1(2, 1) = 1;
  e2(0, 2) = 1;  e2(2, 0) = -1;
  e3(0, 1) = -1; e3(1, 0) = 1;
  return {e1, e2, e3};
}

}  // namespace

LieGroupModel LieGroupModel::so2() {
  LieGroupModel m;
  m.name_ = "SO(2)";
  m.kind_ = Kind::SO2;
  m.n_ = 2;
  m.basis_ = {so2_generator()};
  m.finalize();
  return m;
}

LieGroupModel LieGroupModel::so3() {
  LieGroupModel m;
  m.name_ = "SO(3)";
  m.kind_ = Kind::SO3;
  m.n_ = 3;
  m.basis_ = so3_basis();
  m.finalize();
  return m;
}

LieGroupModel LieGroupModel::torus(int k) {
  if (k < 1) throw std::invalid_argument("torus: need k >= 1");
  LieGroupModel m;
  m.name_ = "T^" + std::to_string(k);
  m.kind_ = Kind::Torus;
  m.n_ = 2 * k;
  for (int i = 0; i < k; ++i) {
    MatrixXd e = MatrixXd::Zero(2 * k, 2 * k);
    e.block(2 * i, 2 * i, 2, 2) = so2_generator();
    m.basis_.push_back(e);
  }
  m.finalize();
  return m;
}

LieGroupModel LieGroupModel::trivial() {
  LieGroupModel m;
  m.name_ = "trivial";
  m.kind_ = Kind::Trivial;
  m.n_ = 1;
  m.finalize();
  return m;
}

LieGroupModel LieGroupModel::product(const std::vector<LieGroupModel>& factors) {
  if (factors.empty()) throw std::invalid_argument("product: need at least one factor");
  LieGroupModel m;
  m.kind_ = Kind::Product;
  m.factors_ = factors;
  m.name_ = "";
  int n = 0, d = 0;
  for (const auto& f : factors) {
    m.factor_n_.push_back(n);
    m.factor_d_.push_back(d);
    n += f.n_;
    d += f.d_;
    m.name_ += (m.name_.empty() ? "" : " x ") + f.name_;
  }
  m.n_ = n;
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    for (const auto& e : factors[fi].basis_) {
      MatrixXd big = MatrixXd::Zero(n, n);
      big.block(m.factor_n_[fi], m.factor_n_[fi], factors[fi].n_, factors[fi].n_) = e;
      m.basis_.push_back(big);
    }
  }
  m.finalize();
  return m;
}

void LieGroupModel::finalize() {
  d_ = static_cast<int>(basis_.size());
  // Normalized invariant inner product: identity on the catalog basis
  // coordinates (proportional to the Frobenius form blockwise, hence
  // Ad-invariant for these groups).
  metric_ = MatrixXd::Identity(d_, d_);

  if (d_ > 0) {
    MatrixXd flat(n_ * n_, d_);
    for (int i = 0; i < d_; ++i)
      flat.col(i) = Eigen::Map<const VectorXd>(basis_[i].data(), n_ * n_);
    basis_expand_.compute(flat);
    if (basis_expand_.rank() < d_)
      throw std::invalid_argument("LieGroupModel: basis matrices are linearly dependent");
  }

  structure_.assign(d_, MatrixXd::Zero(d_, d_));
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j < d_; ++j) {
      const MatrixXd comm = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      const VectorXd c = algebra_coords(comm);
      for (int k = 0; k < d_; ++k) structure_[k](i, j) = c(k);
    }
  }
}

void LieGroupModel::set_metric(const MatrixXd& metric) {
  if (metric.rows() != d_ || metric.cols() != d_)
    throw std::invalid_argument("set_metric: dimension mismatch");
  if ((metric - metric.transpose()).norm() > 1e-12)
    throw std::invalid_argument("set_metric: not symmetric");
  Eigen::LLT<MatrixXd> llt(metric);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("set_metric: not positive definite");
  metric_ = metric;
}

MatrixXd LieGroupModel::algebra_matrix(const AlgebraVector& xi) const {
  if (xi.coords.size() != d_) throw std::invalid_argument("algebra_matrix: dimension mismatch");
  MatrixXd m = MatrixXd::Zero(n_, n_);
  for (int i = 0; i < d_; ++i) m += xi.coords(i) * basis_[i];
  return m;
}

VectorXd LieGroupModel::algebra_coords(const MatrixXd& m) const {
  if (d_ == 0) {
    if (m.norm() > 1e-8) throw std::runtime_error("algebra_coords: matrix not in the algebra");
    return VectorXd(0);
  }
  const VectorXd flat = Eigen::Map<const VectorXd>(m.data(), n_ * n_);
  const VectorXd c = basis_expand_.solve(flat);
  MatrixXd rec = MatrixXd::Zero(n_, n_);
  for (int i = 0; i < d_; ++i) rec += c(i) * basis_[i];
  if ((rec - m).norm() > 1e-8 * std::max(1.0, m.norm()))
    throw std::runtime_error("algebra_coords: matrix not in the algebra span");
  return c;
}

AlgebraVector LieGroupModel::bracket(const AlgebraVector& xi, const AlgebraVector& eta) const {
  if (xi.coords.size() != d_ || eta.coords.size() != d_)
    throw std::invalid_argument("bracket: dimension mismatch");
  const MatrixXd a = algebra_matrix(xi), b = algebra_matrix(eta);
  return AlgebraVector(algebra_coords(a * b - b * a));
}

AlgebraVector LieGroupModel::structure_bracket(const AlgebraVector& xi,
                                               const AlgebraVector& eta) const {
  VectorXd out(d_);
  for (int k = 0; k < d_; ++k)
    out(k) = xi.coords.transpose() * structure_[k] * eta.coords;
  return AlgebraVector(out);
}

GroupElement LieGroupModel::exp(const AlgebraVector& xi) const {
  return GroupElement(algebra_matrix(xi).exp());
}

GroupElement LieGroupModel::inverse(const GroupElement& g) const {
  return GroupElement(g.matrix.inverse());
}

bool LieGroupModel::is_in_group(const GroupElement& g, double tol) const {
  if (g.matrix.rows() != n_ || g.matrix.cols() != n_) return false;
  const double orth = (g.matrix.transpose() * g.matrix - MatrixXd::Identity(n_, n_)).norm();
  return orth < tol && g.matrix.determinant() > 0.0;
}

AlgebraVector LieGroupModel::Ad(const GroupElement& g, const AlgebraVector& xi) const {
  const MatrixXd m = g.matrix * algebra_matrix(xi) * g.matrix.inverse();
  return AlgebraVector(algebra_coords(m));
}

MatrixXd LieGroupModel::Ad_matrix(const GroupElement& g) const {
  MatrixXd out(d_, d_);
  const MatrixXd ginv = g.matrix.inverse();
  for (int i = 0; i < d_; ++i)
    out.col(i) = algebra_coords(g.matrix * basis_[i] * ginv);
  return out;
}

DualVector LieGroupModel::Ad_star(const GroupElement& g, const DualVector& nu) const {
  if (nu.coords.size() != d_) throw std::invalid_argument("Ad_star: dimension mismatch");
  return DualVector(Ad_matrix(g).transpose() * nu.coords);
}

MatrixXd LieGroupModel::ad_star_matrix(const AlgebraVector& xi) const {
  // <ad*_xi nu, eta> = <nu, [xi, eta]>; [xi,E_j]^k = sum_i xi_i c^k_{ij}.
  MatrixXd ad(d_, d_);
  for (int k = 0; k < d_; ++k)
    for (int j = 0; j < d_; ++j)
      ad(k, j) = xi.coords.dot(structure_[k].col(j));
  return ad.transpose();
}

DualVector LieGroupModel::ad_star(const AlgebraVector& xi, const DualVector& nu) const {
  if (xi.coords.size() != d_ || nu.coords.size() != d_)
    throw std::invalid_argument("ad_star: dimension mismatch");
  return DualVector(ad_star_matrix(xi) * nu.coords);
}

DualVector LieGroupModel::coadjoint(const GroupElement& g, const DualVector& nu) const {
  return Ad_star(inverse(g), nu);
}

MatrixXd LieGroupModel::coadjoint_matrix(const GroupElement& g) const {
  return Ad_matrix(inverse(g)).transpose();
}

GroupElement LieGroupModel::haar_sample(Rng& rng) const {
  switch (kind_) {
    case Kind::Trivial:
      return GroupElement(MatrixXd::Identity(n_, n_));
    case Kind::SO2:
    case Kind::SO3: {
      const MatrixXd a = rng.gaussian_matrix(n_, n_);
      Eigen::HouseholderQR<MatrixXd> qr(a);
      MatrixXd q = qr.householderQ();
      const MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int i = 0; i < n_; ++i)
        if (r(i, i) < 0) q.col(i) = -q.col(i);
      if (q.determinant() < 0) q.col(n_ - 1) = -q.col(n_ - 1);
      return GroupElement(q);
    }
    case Kind::Torus: {
      MatrixXd g = MatrixXd::Identity(n_, n_);
      for (int i = 0; i < d_; ++i) {
        const double th = 2.0 * M_PI * rng.uniform();
        g.block(2 * i, 2 * i, 2, 2) << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      }
      return GroupElement(g);
    }
    case Kind::Product: {
      MatrixXd g = MatrixXd::Zero(n_, n_);
      for (std::size_t fi = 0; fi < factors_.size(); ++fi) {
        const GroupElement gf = factors_[fi].haar_sample(rng);
        g.block(factor_n_[fi], factor_n_[fi], factors_[fi].n_, factors_[fi].n_) = gf.matrix;
      }
      return GroupElement(g);
    }
  }
  throw std::logic_error("haar_sample: unsupported group kind");
}

double LieGroupModel::jacobi_residual() const {
  double worst = 0.0;
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k)
        for (int l = 0; l < d_; ++l) {
          double s = 0.0;
          for (int m = 0; m < d_; ++m) {
            s += structure_[m](j, k) * structure_[l](i, m);
            s += structure_[m](k, i) * structure_[l](j, m);
            s += structure_[m](i, j) * structure_[l](k, m);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double LieGroupModel::closure_residual() const {
  double worst = 0.0;
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) {
      const MatrixXd comm = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      MatrixXd rec = MatrixXd::Zero(n_, n_);
      for (int k = 0; k < d_; ++k) rec += structure_[k](i, j) * basis_[k];
      worst = std::max(worst, (comm - rec).norm());
    }
  return worst;
}

double LieGroupModel::metric_invariance_residual(Rng& rng, int samples) const {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const GroupElement g = haar_sample(rng);
    const MatrixXd adm = Ad_matrix(g);
    worst = std::max(worst, (adm.transpose() * metric_ * adm - metric_).norm());
  }
  return worst;
}

Subspace LieGroupModel::orthogonal_complement(const Subspace& s, const Subspace& inside,
                                              const MatrixXd& metric) {
  const int m = s.ambient();
  const bool euclidean = (metric.rows() == 0) ||
                         (metric - MatrixXd::Identity(m, m)).norm() < 1e-14;
  if (euclidean) {
    if (inside.containment_residual(s) > 1e-8)
      throw std::invalid_argument("orthogonal_complement: S not contained in `inside`");
    return s.complement_within(inside);
  }
  // Transform to coordinates where the metric is Euclidean, complement, and
  // transform back (columns re-orthonormalized against the metric).
  Eigen::LLT<MatrixXd> llt(metric);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("orthogonal_complement: metric not positive definite");
  const MatrixXd L = llt.matrixL();
  const Subspace sw = Subspace::span_of(L.transpose() * s.columns());
  const Subspace iw = Subspace::span_of(L.transpose() * inside.columns());
  if (iw.containment_residual(sw) > 1e-8)
    throw std::invalid_argument("orthogonal_complement: S not contained in `inside`");
  const Subspace cw = sw.complement_within(iw);
  const MatrixXd back = L.transpose().inverse() * cw.columns();
  return Subspace::span_of(back);
}

}  // namespace cotube
