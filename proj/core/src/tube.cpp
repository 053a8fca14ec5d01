#include "cotube/tube.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cotube {

namespace {

// Columns of the square solve (xi_perp, adot) -> xi_perp.(q + a) + adot over
// a basis of k^perp and the A-basis; the phi pushforward inverts its
// transpose.
MatrixXd slice_frame_matrix(const SliceChart& chart, const Subspace& kperp,
                            const VectorXd& a_A) {
  const int n = chart.dimQ();
  const VectorXd base = chart.q + chart.A.embed(a_A);
  MatrixXd s(n, kperp.dim() + chart.dimA());
  for (int j = 0; j < kperp.dim(); ++j)
    s.col(j) = chart.action.infinitesimal(AlgebraVector(kperp.columns().col(j))) * base;
  s.rightCols(chart.dimA()) = chart.A.columns();
  return s;
}

VectorXd phi_rhs(const SliceChart& chart, const Subspace& kperp, const VectorXd& nu,
                 const VectorXd& delta_A) {
  VectorXd r(kperp.dim() + chart.dimA());
  r.head(kperp.dim()) = kperp.columns().transpose() * nu;
  r.tail(chart.dimA()) = delta_A;
  return r;
}

}  // namespace

AmbientCotangent phi_pushforward(const SliceChart& chart, const GxAPoint& w, double jk_tol) {
  if (jk_tol > 0.0) {
    const VectorXd jk = momentum_JK(chart.action, chart.A, chart.k, w);
    if (jk.size() > 0 && jk.norm() > jk_tol)
      throw std::domain_error("phi_pushforward: point is not in J_K^{-1}(0), |J_K| = " +
                              std::to_string(jk.norm()));
  }
  const Subspace kperp = chart.k.complement();
  const MatrixXd s = slice_frame_matrix(chart, kperp, w.a);
  Eigen::PartialPivLU<MatrixXd> lu(s.transpose());
  const double rc = lu.rcond();
  if (!(rc > 1e-14))
    throw std::domain_error("phi_pushforward: slice frame is singular at this point");
  const VectorXd u = lu.solve(phi_rhs(chart, kperp, w.nu, w.delta));
  const MatrixXd act = chart.action.act(w.g);
  AmbientCotangent out;
  out.point = act * (chart.q + chart.A.embed(w.a));
  out.covector = act.inverse().transpose() * u;
  return out;
}

AmbientCotangent phi_pushforward_differential(const SliceChart& chart, const GxAPoint& w,
                                              const GxATangent& v) {
  const Subspace kperp = chart.k.complement();
  const MatrixXd s = slice_frame_matrix(chart, kperp, w.a);
  Eigen::PartialPivLU<MatrixXd> lu(s.transpose());
  const VectorXd u = lu.solve(phi_rhs(chart, kperp, w.nu, w.delta));

  // sdot: columns xi_j.(A adot) in the k^perp block, zero on the A block.
  const VectorXd adot_Q = chart.A.embed(v.adot);
  MatrixXd sdot = MatrixXd::Zero(s.rows(), s.cols());
  for (int j = 0; j < kperp.dim(); ++j)
    sdot.col(j) = chart.action.infinitesimal(AlgebraVector(kperp.columns().col(j))) * adot_Q;

  const VectorXd rdot = phi_rhs(chart, kperp, v.nudot, v.deltadot);
  const VectorXd udot = lu.solve(rdot - sdot.transpose() * u);

  const MatrixXd act = chart.action.act(w.g);
  const MatrixXd gdot_mat = chart.action.infinitesimal(AlgebraVector(v.gdot));
  AmbientCotangent out;
  out.point = act * (gdot_mat * (chart.q + chart.A.embed(w.a)) + adot_Q);
  out.covector = act.inverse().transpose() * (gdot_mat * u + udot);
  return out;
}

TubeChart build_tube_chart(const SliceChart& chart, double cond_limit,
                           std::uint64_t direction_seed) {
  if (!chart.flags.Gmu_full)
    throw std::domain_error(
        "build_tube_chart: out of theorem scope, the tube construction requires G_mu = G "
        "(fully isotropic momentum)");
  TubeChart tc;
  tc.chart = chart;
  tc.mu = chart.mu;
  tc.alpha_A = chart.alpha;
  tc.base_x = GxAPoint{GroupElement(MatrixXd::Identity(chart.action.group().n(),
                                                       chart.action.group().n())),
                       chart.mu, VectorXd::Zero(chart.dimA()), chart.alpha};
  tc.cond_at_zero = gamma_condition(tc, VectorXd::Zero(chart.dimB()));

  // Validity radius: largest rho with the Gamma-system condition number
  // below cond_limit for |delta| <= rho, by bisection over sampled
  // directions. Charts with m cap k = {0} have a constant system.
  const double cap = 1e6;
  if (chart.mk.dim() == 0 || chart.dimB() == 0) {
    tc.U_bound = cap;
    return tc;
  }
  Rng rng(direction_seed);
  std::vector<VectorXd> dirs;
  for (int s = 0; s < 16; ++s) {
    VectorXd dir = rng.gaussian_vector(chart.dimB());
    if (dir.norm() < 1e-12) continue;
    dirs.push_back(dir / dir.norm());
  }
  for (int i = 0; i < chart.dimB(); ++i) {
    VectorXd e = VectorXd::Zero(chart.dimB());
    e(i) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  auto admissible = [&](double rho) {
    for (const auto& dir : dirs)
      if (!(gamma_condition(tc, VectorXd(rho * dir)) < cond_limit)) return false;
    return true;
  };
  double lo = 0.0, hi = 1.0;
  while (hi < cap && admissible(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  if (hi >= cap) {
    tc.U_bound = cap;
    return tc;
  }
  for (int it = 0; it < 60 && (hi - lo) > 1e-9 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? lo : hi) = mid;
  }
  tc.U_bound = lo;
  return tc;
}

MatrixXd gamma_system_matrix(const TubeChart& tc, const VectorXd& delta_B) {
  const SliceChart& c = tc.chart;
  const int r = c.dimA();
  const VectorXd target = tc.alpha_A + c.B.embed(delta_B);  // alpha + delta in A*-coords
  MatrixXd t(r, c.mk.dim() + c.dimB());
  for (int j = 0; j < c.mk.dim(); ++j) {
    const MatrixXd rhoA = c.action_on_A(c.mk.columns().col(j));
    t.col(j) = -rhoA.transpose() * target;  // xi.(alpha+delta), inverse dual
  }
  t.rightCols(c.dimB()) = c.B.columns();
  return t;
}

double gamma_condition(const TubeChart& tc, const VectorXd& delta_B) {
  const MatrixXd t = gamma_system_matrix(tc, delta_B);
  if (t.cols() == 0) return 1.0;
  Eigen::JacobiSVD<MatrixXd> svd(t);
  const double smin = svd.singularValues().minCoeff();
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return svd.singularValues().maxCoeff() / smin;
}

VectorXd gamma_star(const TubeChart& tc, const VectorXd& delta_B, const VectorXd& nubar) {
  const SliceChart& c = tc.chart;
  if (nubar.size() != c.mk.dim() || delta_B.size() != c.dimB())
    throw std::invalid_argument("gamma_star: dimension mismatch");
  if (c.mk.dim() == 0) return VectorXd::Zero(c.dimA());
  const MatrixXd t = gamma_system_matrix(tc, delta_B);
  Eigen::PartialPivLU<MatrixXd> lu(t.transpose());
  if (!(lu.rcond() > 1e-14))
    throw std::domain_error("gamma_star: system singular, delta outside the validity region");
  VectorXd rhs = VectorXd::Zero(t.cols());
  rhs.head(c.mk.dim()) = nubar;
  // <c, T(x)> = <rhs, x> for all x  <=>  T^T c = rhs.
  return lu.solve(rhs);
}

GxAPoint sigma_map(const TubeChart& tc, const GroupElement& g, const VectorXd& nu,
                   const VectorXd& a_B, const VectorXd& delta_B, double tol) {
  const SliceChart& c = tc.chart;
  if (delta_B.norm() > tc.U_bound)
    throw std::domain_error("sigma_map: |delta| exceeds the validity radius");
  // J_H(g,nu,a,delta) = -nu|_h + a diamond_h delta on T*(G x B).
  const VectorXd a_A = c.B.embed(a_B);
  const VectorXd delta_A = c.B.embed(delta_B);
  if (c.h.dim() > 0 && tol > 0.0) {
    const VectorXd jh =
        -c.h.columns().transpose() * nu + c.diamond_A(a_A, delta_A, c.h);
    if (jh.norm() > tol)
      throw std::domain_error("sigma_map: input violates J_H = 0, |J_H| = " +
                              std::to_string(jh.norm()));
  }
  const VectorXd nubar =
      -c.mk.columns().transpose() * nu + c.diamond_A(a_A, delta_A, c.mk);
  const VectorXd correction = gamma_star(tc, delta_B, nubar);
  GxAPoint out;
  out.g = g;
  out.nu = tc.mu + nu;
  out.a = a_A + correction;
  out.delta = tc.alpha_A + delta_A;
  return out;
}

GxAPoint l_map(const TubeChart& tc, const GroupElement& g, const VectorXd& sigma_m,
               const VectorXd& a_B, const VectorXd& delta_B) {
  const SliceChart& c = tc.chart;
  if (sigma_m.size() != c.m.dim())
    throw std::invalid_argument("l_map: sigma dimension mismatch");
  const VectorXd a_A = c.B.embed(a_B);
  const VectorXd delta_A = c.B.embed(delta_B);
  const VectorXd jns_h = c.diamond_A(a_A, delta_A, c.h);  // a diamond_h delta
  GxAPoint out;
  out.g = g;
  out.nu = c.m.columns() * sigma_m + c.h.columns() * jns_h;
  out.a = a_B;
  out.delta = delta_B;
  return out;
}

AmbientCotangent tube_evaluate(const TubeChart& tc, const ModelPoint& m) {
  const GxAPoint lifted = l_map(tc, m.g, m.nu, m.a, m.delta);
  const GxAPoint w = sigma_map(tc, lifted.g, lifted.nu, m.a, m.delta);
  return phi_pushforward(tc.chart, w);
}

AmbientCotangent tube_alternative(const TubeChart& tc, const ModelPoint& m) {
  const SliceChart& c = tc.chart;
  if (m.delta.norm() > tc.U_bound)
    throw std::domain_error("tube_alternative: |delta| exceeds the validity radius");
  // Lift into J_H^{-1}(0) in T*(G x B).
  const GxAPoint w = l_map(tc, m.g, m.nu, m.a, m.delta);
  // chi_Z : T*(G x B) -> T*(G x B*), (g,nu,a,delta) -> (g,nu,delta,-a).
  const VectorXd base_delta = w.delta;  // B*-coordinates
  const VectorXd fiber_b = -w.a;        // B-coordinates
  // Cotangent lift of [g,delta]_H -> [g,alpha+delta]_K: the A-fiber picks up
  // the unique B^perp correction that restores J_{K,*} = 0.
  const VectorXd a_A = c.B.embed(fiber_b);
  const VectorXd delta_A = c.B.embed(base_delta);
  const VectorXd nubar =
      c.mk.columns().transpose() * w.nu + c.diamond_A(a_A, delta_A, c.mk);
  const VectorXd fiber_A = a_A + gamma_star(tc, base_delta, nubar);
  const VectorXd base_Astar = tc.alpha_A + delta_A;
  // chi_0^{-1} : T*(G x A*) -> T*(G x A), (g,nu,beta,c) -> (g,nu,-c,beta),
  // then the momentum shift by (mu, 0).
  GxAPoint out;
  out.g = w.g;
  out.nu = tc.mu + w.nu;
  out.a = -fiber_A;
  out.delta = base_Astar;
  return phi_pushforward(c, out);
}

DualVector model_momentum(const TubeChart& tc, const ModelPoint& m) {
  const SliceChart& c = tc.chart;
  const VectorXd a_A = c.B.embed(m.a);
  const VectorXd delta_A = c.B.embed(m.delta);
  const VectorXd jns_h = c.diamond_A(a_A, delta_A, c.h);
  const VectorXd total = tc.mu + c.m.columns() * m.nu + c.h.columns() * jns_h;
  return c.action.group().coadjoint(m.g, DualVector(total));
}

void exchange_map(const VectorXd& a, const VectorXd& alpha, VectorXd& alpha_out,
                  VectorXd& a_out) {
  alpha_out = alpha;
  a_out = -a;
}

ModelPoint model_twist(const TubeChart& tc, const GroupElement& h, const ModelPoint& m) {
  const SliceChart& c = tc.chart;
  const LieGroupModel& model = c.action.group();
  ModelPoint out;
  out.g = GroupElement(m.g.matrix * h.matrix.inverse());
  const MatrixXd coad = model.coadjoint_matrix(h);
  out.nu = c.m.columns().transpose() * (coad * (c.m.columns() * m.nu));
  const MatrixXd actA = c.act_on_A(h);
  const MatrixXd actB = c.B.columns().transpose() * actA * c.B.columns();
  out.a = actB * m.a;
  out.delta = actB.inverse().transpose() * m.delta;
  return out;
}

MatrixXd tube_pullback_form_fd(const TubeChart& tc, const ModelPoint& m, double step,
                               bool richardson) {
  if (richardson) {
    const MatrixXd coarse = tube_pullback_form_fd(tc, m, step, false);
    const MatrixXd fine = tube_pullback_form_fd(tc, m, step / 2.0, false);
    return (4.0 * fine - coarse) / 3.0;
  }
  const SliceChart& c = tc.chart;
  const LieGroupModel& model = c.action.group();
  const int d = model.dim();
  const int mm = c.m.dim();
  const int b = c.dimB();
  const int total = d + mm + 2 * b;
  const int n = c.dimQ();

  MatrixXd jac(2 * n, total);
  for (int i = 0; i < total; ++i) {
    VectorXd w = VectorXd::Zero(total);
    w(i) = 1.0;
    auto curve = [&](double t) -> VectorXd {
      ModelPoint mp;
      mp.g = GroupElement(m.g.matrix *
                          model.exp(AlgebraVector(VectorXd(t * w.head(d)))).matrix);
      mp.nu = m.nu + t * w.segment(d, mm);
      mp.a = m.a + t * w.segment(d + mm, b);
      mp.delta = m.delta + t * w.tail(b);
      const AmbientCotangent z = tube_evaluate(tc, mp);
      VectorXd out(2 * n);
      out << z.point, z.covector;
      return out;
    };
    jac.col(i) = central_difference(curve, step);
  }
  return jac.transpose() * canonical_omega(n) * jac;
}

MatrixXd model_side_form(const TubeChart& tc, const ModelPoint& m) {
  const SliceChart& c = tc.chart;
  const LieGroupModel& model = c.action.group();
  const int d = model.dim();
  const int mm = c.m.dim();
  const int b = c.dimB();
  const int total = d + mm + 2 * b;

  const GxAPoint base = l_map(tc, m.g, m.nu, m.a, m.delta);
  const VectorXd a_A = c.B.embed(m.a);
  const VectorXd delta_A = c.B.embed(m.delta);

  // Tangent of the l map along each covering coordinate direction. The
  // group factor contributes body velocities unchanged; the g*-coordinate
  // picks up the derivative of a diamond_h delta.
  std::vector<GxATangent> dirs(total);
  for (int i = 0; i < total; ++i) {
    VectorXd w = VectorXd::Zero(total);
    w(i) = 1.0;
    GxATangent v;
    v.gdot = w.head(d);
    const VectorXd adot_A = c.B.embed(VectorXd(w.segment(d + mm, b)));
    const VectorXd ddot_A = c.B.embed(VectorXd(w.tail(b)));
    const VectorXd jns_dot =
        c.diamond_A(adot_A, delta_A, c.h) + c.diamond_A(a_A, ddot_A, c.h);
    v.nudot = c.m.columns() * w.segment(d, mm) + c.h.columns() * jns_dot;
    v.adot = w.segment(d + mm, b);
    v.deltadot = w.tail(b);
    dirs[i] = v;
  }
  MatrixXd out(total, total);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j)
      out(i, j) = canonical_form_left_trivialized(model, base.nu, dirs[i], dirs[j]);
  return out;
}

MatrixXd sigma_pullback_form_fd(const TubeChart& tc, const GxAPoint& w,
                                const std::vector<GxATangent>& dirs, double step) {
  const SliceChart& c = tc.chart;
  const LieGroupModel& model = c.action.group();
  const int r = c.dimA();
  const int d = model.dim();
  const int k = static_cast<int>(dirs.size());

  // Finite-difference image tangents of sigma in T*(G x A); group part kept
  // in body coordinates (sigma leaves g untouched).
  std::vector<GxATangent> image(k);
  for (int i = 0; i < k; ++i) {
    auto curve = [&](double t) -> VectorXd {
      const VectorXd nu = w.nu + t * dirs[i].nudot;
      const VectorXd a = w.a + t * dirs[i].adot;
      const VectorXd delta = w.delta + t * dirs[i].deltadot;
      const GxAPoint img = sigma_map(tc, w.g, nu, a, delta, /*tol=*/-1.0);
      VectorXd out(d + 2 * r);
      out << img.nu, img.a, img.delta;
      return out;
    };
    const VectorXd dv = central_difference(curve, step);
    image[i].gdot = dirs[i].gdot;
    image[i].nudot = dv.head(d);
    image[i].adot = dv.segment(d, r);
    image[i].deltadot = dv.tail(r);
  }
  const GxAPoint base = sigma_map(tc, w.g, w.nu, w.a, w.delta, /*tol=*/-1.0);
  MatrixXd out(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out(i, j) = canonical_form_left_trivialized(model, base.nu, image[i], image[j]);
  return out;
}

MatrixXd gxb_form_matrix(const TubeChart& tc, const GxAPoint& w,
                         const std::vector<GxATangent>& dirs) {
  const LieGroupModel& model = tc.chart.action.group();
  const int k = static_cast<int>(dirs.size());
  MatrixXd out(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out(i, j) = canonical_form_left_trivialized(model, w.nu, dirs[i], dirs[j]);
  return out;
}

}  // namespace cotube
