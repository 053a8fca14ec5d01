#include "cotube/numerics.hpp"

#include <cmath>

namespace cotube {

double rank_threshold(double largest_singular_value) {
  return 1e-9 * std::max(largest_singular_value, 1.0);
}

namespace {

// Columns get a deterministic orientation: largest-magnitude entry positive.
void sign_normalize(MatrixXd& cols) {
  for (int j = 0; j < cols.cols(); ++j) {
    int idx = 0;
    cols.col(j).cwiseAbs().maxCoeff(&idx);
    if (cols(idx, j) < 0.0) cols.col(j) = -cols.col(j);
  }
}

}  // namespace

int rank_of(const MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  const double tau = rank_threshold(svd.singularValues()(0));
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tau) ++r;
  return r;
}

MatrixXd kernel_basis(const MatrixXd& m) {
  const int n = static_cast<int>(m.cols());
  if (m.rows() == 0 || n == 0) return MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tau = rank_threshold(sv.size() > 0 ? sv(0) : 0.0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) ++r;
  MatrixXd out = svd.matrixV().rightCols(n - r);
  sign_normalize(out);
  return out;
}

MatrixXd orthonormal_span(const MatrixXd& m) {
  if (m.cols() == 0 || m.rows() == 0) return MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double tau = rank_threshold(sv.size() > 0 ? sv(0) : 0.0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) ++r;
  MatrixXd out = svd.matrixU().leftCols(r);
  sign_normalize(out);
  return out;
}

MatrixXd canonical_omega(int n) {
  MatrixXd omega = MatrixXd::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = MatrixXd::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -MatrixXd::Identity(n, n);
  return omega;
}

std::uint64_t Rng::next_raw() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

VectorXd Rng::gaussian_vector(int n) {
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = gaussian();
  return v;
}

MatrixXd Rng::gaussian_matrix(int rows, int cols) {
  MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gaussian();
  return m;
}

VectorXd central_difference(const std::function<VectorXd(double)>& curve, double step) {
  return (curve(step) - curve(-step)) / (2.0 * step);
}

}  // namespace cotube
