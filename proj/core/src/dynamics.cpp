#include "cotube/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace cotube {

HamiltonianSpec HamiltonianSpec::catalog(const std::string& kind,
                                         const std::vector<double>& params) {
  HamiltonianSpec h;
  if (kind == "free") {
    h.ambient = [](const VectorXd&, const VectorXd& p) { return 0.5 * p.squaredNorm(); };
    h.dq = [](const VectorXd& q, const VectorXd&) { return VectorXd(VectorXd::Zero(q.size())); };
    h.dp = [](const VectorXd&, const VectorXd& p) { return p; };
    return h;
  }
  if (kind == "central") {
    if (params.size() != 2)
      throw std::invalid_argument("hamiltonian 'central' needs params = [stiffness, rest_radius]");
    const double c = params[0], r0 = params[1];
    h.ambient = [c, r0](const VectorXd& q, const VectorXd& p) {
      const double r = q.norm();
      return 0.5 * p.squaredNorm() + 0.5 * c * (r - r0) * (r - r0);
    };
    h.dq = [c, r0](const VectorXd& q, const VectorXd&) -> VectorXd {
      const double r = q.norm();
      if (r < 1e-12) return VectorXd::Zero(q.size());
      return c * (r - r0) / r * q;
    };
    h.dp = [](const VectorXd&, const VectorXd& p) { return p; };
    return h;
  }
  if (kind == "zero") {
    h.ambient = [](const VectorXd&, const VectorXd&) { return 0.0; };
    h.dq = [](const VectorXd& q, const VectorXd&) { return VectorXd(VectorXd::Zero(q.size())); };
    h.dp = [](const VectorXd&, const VectorXd& p) { return VectorXd(VectorXd::Zero(p.size())); };
    return h;
  }
  throw std::invalid_argument("unknown hamiltonian kind '" + kind + "'");
}

double HamiltonianSpec::invariance_residual(const LinearAction& action, Rng& rng, int samples,
                                            double scale) const {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const GroupElement g = action.group().haar_sample(rng);
    const VectorXd q = scale * rng.gaussian_vector(action.dimQ());
    const VectorXd p = scale * rng.gaussian_vector(action.dimQ());
    const CotangentPoint moved = action.lift(g, CotangentPoint{q, p});
    worst = std::max(worst, std::abs(ambient(moved.a, moved.alpha) - ambient(q, p)));
  }
  return worst;
}

std::function<double(const VectorXd&, const VectorXd&, const VectorXd&)> model_hamiltonian(
    const TubeChart& tc, const HamiltonianSpec& H) {
  const int n = tc.chart.action.group().n();
  const GroupElement e{MatrixXd::Identity(n, n)};
  return [tc, H, e](const VectorXd& nu, const VectorXd& a, const VectorXd& delta) {
    const AmbientCotangent z = tube_evaluate(tc, ModelPoint{e, nu, a, delta});
    return H.ambient(z.point, z.covector);
  };
}

CotangentPoint relative_equilibrium(const LinearAction& action, const VectorXd& q,
                                    const AlgebraVector& xi, const MatrixXd& mass_metric) {
  Eigen::LLT<MatrixXd> llt(mass_metric);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("relative_equilibrium: mass metric not positive definite");
  return CotangentPoint{q, mass_metric * action.infinitesimal_action(xi, q)};
}

BundleField bundle_vector_field(const TubeChart& tc,
                                const std::function<double(const VectorXd&, const VectorXd&,
                                                           const VectorXd&)>& h,
                                const VectorXd& nu, const VectorXd& a, const VectorXd& delta,
                                double fd_step) {
  const SliceChart& c = tc.chart;
  const int mm = c.m.dim();
  const int b = c.dimB();

  auto partial = [&](int block, int i) {
    VectorXd nup = nu, nun = nu, ap = a, an = a, dp = delta, dn = delta;
    if (block == 0) { nup(i) += fd_step; nun(i) -= fd_step; }
    if (block == 1) { ap(i) += fd_step; an(i) -= fd_step; }
    if (block == 2) { dp(i) += fd_step; dn(i) -= fd_step; }
    return (h(nup, ap, dp) - h(nun, an, dn)) / (2.0 * fd_step);
  };

  BundleField X;
  X.X_m = VectorXd(mm);
  for (int i = 0; i < mm; ++i) X.X_m(i) = partial(0, i);
  X.X_Bstar = VectorXd(b);
  for (int i = 0; i < b; ++i) X.X_Bstar(i) = -partial(1, i);
  X.X_B = VectorXd(b);
  for (int i = 0; i < b; ++i) X.X_B(i) = partial(2, i);

  // X_{m*} = P_{m*} ad*_{X_m}(rho + J_{N_s}(v)), with rho the current nu
  // extended by zero and J_{N_s}(v) = a diamond_h delta on the h-slot.
  const VectorXd a_A = c.B.embed(a);
  const VectorXd delta_A = c.B.embed(delta);
  const VectorXd rho_total =
      c.m.columns() * nu + c.h.columns() * c.diamond_A(a_A, delta_A, c.h);
  const VectorXd xm_g = c.m.columns() * X.X_m;
  const VectorXd adstar =
      c.action.group().ad_star(AlgebraVector(xm_g), DualVector(rho_total)).coords;
  X.X_mstar = c.m.columns().transpose() * adstar;
  return X;
}

ReconstructionFieldAlpha0 reconstruction_field_alpha0(
    const SliceChart& chart,
    const std::function<double(const VectorXd&, const VectorXd&, const VectorXd&,
                               const VectorXd&)>& h,
    const VectorXd& nu, const VectorXd& w, const VectorXd& a, const VectorXd& delta,
    double fd_step) {
  if (!chart.flags.alpha_zero)
    throw std::domain_error("reconstruction_field_alpha0: requires alpha = 0");
  const LieGroupModel& model = chart.action.group();
  const OmuTAModel om = model_OmuTA(chart);
  const Subspace nsmu = nsmu_representatives(chart, om);
  const int mm = chart.m.dim();
  const int s = nsmu.dim();
  const int r = chart.dimA();
  if (nu.size() != mm || w.size() != s || a.size() != r || delta.size() != r)
    throw std::invalid_argument("reconstruction_field_alpha0: dimension mismatch");

  auto partial = [&](int block, int i) {
    VectorXd nup = nu, nun = nu, wp = w, wn = w, ap = a, an = a, dp = delta, dn = delta;
    if (block == 0) { nup(i) += fd_step; nun(i) -= fd_step; }
    if (block == 1) { wp(i) += fd_step; wn(i) -= fd_step; }
    if (block == 2) { ap(i) += fd_step; an(i) -= fd_step; }
    if (block == 3) { dp(i) += fd_step; dn(i) -= fd_step; }
    return (h(nup, wp, ap, dp) - h(nun, wn, an, dn)) / (2.0 * fd_step);
  };

  ReconstructionFieldAlpha0 X;
  X.X_m = VectorXd(mm);
  for (int i = 0; i < mm; ++i) X.X_m(i) = partial(0, i);
  VectorXd grad_w(s);
  for (int i = 0; i < s; ++i) grad_w(i) = partial(1, i);
  X.X_A = VectorXd(r);
  for (int i = 0; i < r; ++i) X.X_A(i) = partial(3, i);
  X.X_Astar = VectorXd(r);
  for (int i = 0; i < r; ++i) X.X_Astar(i) = -partial(2, i);

  // Reduced-KKS block: omega_red(X, v) = Dh(v), i.e. Omega^T X = grad.
  if (s > 0) {
    const MatrixXd omega_red =
        nsmu.columns().transpose() * om.omega_minus * nsmu.columns();
    X.X_nsmu = omega_red.transpose().partialPivLu().solve(grad_w);
  } else {
    X.X_nsmu = VectorXd(0);
  }

  // X_{m*} = P_{m*} ad*_{X_m}(rho + J_{N_s}(v)); the H-momentum picks up the
  // quadratic contribution of the reduced-orbit block alongside a diamond_h
  // delta (alpha = 0, so A-coordinates are the slice coordinates).
  VectorXd jns_h = chart.diamond_A(a, delta, chart.h);
  if (s > 0 && chart.h.dim() > 0) {
    const MatrixXd embed = om.tangent.columns() * nsmu.columns();  // d x s
    const MatrixXd omega_red =
        nsmu.columns().transpose() * om.omega_minus * nsmu.columns();
    for (int j = 0; j < chart.h.dim(); ++j) {
      const AlgebraVector zeta(chart.h.columns().col(j));
      const MatrixXd act_w =
          embed.transpose() * (-model.ad_star_matrix(zeta)) * embed;
      jns_h(j) += 0.5 * (act_w * w).dot(omega_red * w);
    }
  }
  const VectorXd rho_total = chart.m.columns() * nu + chart.h.columns() * jns_h;
  const VectorXd xm_g = chart.m.columns() * X.X_m;
  X.X_mstar = chart.m.columns().transpose() *
              model.ad_star(AlgebraVector(xm_g), DualVector(rho_total)).coords;
  return X;
}

namespace {

// dexpinv_sigma(v) truncated after the double bracket; enough for a
// 4th-order Munthe-Kaas step.
VectorXd dexpinv(const LieGroupModel& model, const VectorXd& sigma, const VectorXd& v) {
  if (model.dim() == 0) return v;
  const AlgebraVector s(sigma);
  const VectorXd b1 = model.structure_bracket(s, AlgebraVector(v)).coords;
  const VectorXd b2 = model.structure_bracket(s, AlgebraVector(b1)).coords;
  return v - 0.5 * b1 + (1.0 / 12.0) * b2;
}

struct ModelState {
  GroupElement g;
  VectorXd w;  // (nu | a | delta)
};

ModelPoint to_point(const TubeChart& tc, const ModelState& s) {
  const int mm = tc.dimM();
  const int b = tc.dimB();
  return ModelPoint{s.g, s.w.head(mm), s.w.segment(mm, b), s.w.tail(b)};
}

}  // namespace

TrajectoryRecord integrate_model(const TubeChart& tc, const HamiltonianSpec& H,
                                 const ModelPoint& initial, double dt, int steps) {
  if (!(dt > 0.0) || steps < 1)
    throw std::invalid_argument("integrate_model: need dt > 0 and steps >= 1");
  const SliceChart& c = tc.chart;
  const LieGroupModel& model = c.action.group();
  const int mm = tc.dimM();
  const int b = tc.dimB();
  const auto h = model_hamiltonian(tc, H);

  auto field = [&](const ModelState& s) -> std::pair<VectorXd, VectorXd> {
    const VectorXd nu = s.w.head(mm), a = s.w.segment(mm, b), delta = s.w.tail(b);
    const BundleField X = bundle_vector_field(tc, h, nu, a, delta);
    // Body velocity of the group factor is X_m embedded in g; the flat part
    // stacks (X_{m*} | X_B | X_{B*}).
    VectorXd wdot(mm + 2 * b);
    wdot << X.X_mstar, X.X_B, X.X_Bstar;
    return {c.m.columns() * X.X_m, wdot};
  };

  ModelState y{initial.g, VectorXd(mm + 2 * b)};
  y.w << initial.nu, initial.a, initial.delta;

  TrajectoryRecord rec;
  auto record = [&](double t, const ModelState& s) {
    rec.times.push_back(t);
    const ModelPoint mp = to_point(tc, s);
    rec.model_states.push_back(mp);
    const AmbientCotangent z = tube_evaluate(tc, mp);
    rec.momentum.push_back(c.action.momentum(CotangentPoint{z.point, z.covector}).coords);
    rec.energy.push_back(H.ambient(z.point, z.covector));
  };
  record(0.0, y);

  const int d = model.dim();
  for (int k = 0; k < steps; ++k) {
    if (y.w.tail(b).norm() > tc.U_bound)
      throw std::runtime_error("integrate_model: state left the tube validity region at step " +
                               std::to_string(k));
    auto translated = [&](const VectorXd& sg, const VectorXd& sw) -> ModelState {
      return ModelState{GroupElement(y.g.matrix * model.exp(AlgebraVector(sg)).matrix),
                        VectorXd(y.w + sw)};
    };
    const auto f1 = field(y);
    const VectorXd k1g = f1.first, k1w = f1.second;
    const auto f2 = field(translated(0.5 * dt * k1g, 0.5 * dt * k1w));
    const VectorXd k2g = dexpinv(model, 0.5 * dt * k1g, f2.first), k2w = f2.second;
    const auto f3 = field(translated(0.5 * dt * k2g, 0.5 * dt * k2w));
    const VectorXd k3g = dexpinv(model, 0.5 * dt * k2g, f3.first), k3w = f3.second;
    const auto f4 = field(translated(dt * k3g, dt * k3w));
    const VectorXd k4g = dexpinv(model, dt * k3g, f4.first), k4w = f4.second;

    const VectorXd sg = dt / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    const VectorXd sw = dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    y = translated(sg, sw);
    record(dt * (k + 1), y);
  }
  return rec;
}

TrajectoryRecord integrate_ambient(const LinearAction& action, const HamiltonianSpec& H,
                                   const CotangentPoint& initial, double dt, int steps) {
  if (!(dt > 0.0) || steps < 1)
    throw std::invalid_argument("integrate_ambient: need dt > 0 and steps >= 1");
  const int n = static_cast<int>(initial.a.size());

  auto grad_q = [&](const VectorXd& q, const VectorXd& p) -> VectorXd {
    if (H.dq) return H.dq(q, p);
    VectorXd g(n);
    for (int i = 0; i < n; ++i) {
      VectorXd qp = q, qn = q;
      qp(i) += 1e-6;
      qn(i) -= 1e-6;
      g(i) = (H.ambient(qp, p) - H.ambient(qn, p)) / 2e-6;
    }
    return g;
  };
  auto grad_p = [&](const VectorXd& q, const VectorXd& p) -> VectorXd {
    if (H.dp) return H.dp(q, p);
    VectorXd g(n);
    for (int i = 0; i < n; ++i) {
      VectorXd pp = p, pn = p;
      pp(i) += 1e-6;
      pn(i) -= 1e-6;
      g(i) = (H.ambient(q, pp) - H.ambient(q, pn)) / 2e-6;
    }
    return g;
  };
  auto field = [&](const VectorXd& s) -> VectorXd {
    const VectorXd q = s.head(n), p = s.tail(n);
    VectorXd out(2 * n);
    out << grad_p(q, p), -grad_q(q, p);
    return out;
  };

  VectorXd y(2 * n);
  y << initial.a, initial.alpha;

  TrajectoryRecord rec;
  auto record = [&](double t, const VectorXd& s) {
    rec.times.push_back(t);
    const CotangentPoint z{s.head(n), s.tail(n)};
    rec.ambient_states.push_back(z);
    rec.momentum.push_back(action.momentum(z).coords);
    rec.energy.push_back(H.ambient(z.a, z.alpha));
  };
  record(0.0, y);
  for (int k = 0; k < steps; ++k) {
    const VectorXd k1 = field(y);
    const VectorXd k2 = field(y + 0.5 * dt * k1);
    const VectorXd k3 = field(y + 0.5 * dt * k2);
    const VectorXd k4 = field(y + dt * k3);
    y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    record(dt * (k + 1), y);
  }
  return rec;
}

FlowComparison compare_flows(const TubeChart& tc, const HamiltonianSpec& H,
                             const ModelPoint& initial, double dt, int steps) {
  const TrajectoryRecord model_run = integrate_model(tc, H, initial, dt, steps);
  const AmbientCotangent z0 = tube_evaluate(tc, initial);
  const TrajectoryRecord ambient_run =
      integrate_ambient(tc.chart.action, H, CotangentPoint{z0.point, z0.covector}, dt, steps);

  FlowComparison out;
  const VectorXd j0 = ambient_run.momentum.front();
  const double e0 = ambient_run.energy.front();
  for (std::size_t k = 0; k < ambient_run.ambient_states.size(); ++k) {
    const AmbientCotangent mapped = tube_evaluate(tc, model_run.model_states[k]);
    VectorXd diff(mapped.point.size() + mapped.covector.size());
    diff << mapped.point - ambient_run.ambient_states[k].a,
        mapped.covector - ambient_run.ambient_states[k].alpha;
    out.sup_error = std::max(out.sup_error, diff.norm());
    out.momentum_drift =
        std::max(out.momentum_drift, (ambient_run.momentum[k] - j0).norm());
    out.energy_drift = std::max(out.energy_drift, std::abs(ambient_run.energy[k] - e0));
  }
  return out;
}

}  // namespace cotube
