#include "cotube/verify.hpp"

#include <algorithm>
#include <cmath>

#include "cotube/dynamics.hpp"

namespace cotube {

namespace {

CheckResult make_check(const std::string& name, double residual, double tol,
                       const std::string& details = "") {
  return CheckResult{name, residual < tol, residual, tol, details};
}

CheckResult make_flag_check(const std::string& name, bool ok, const std::string& details = "") {
  return CheckResult{name, ok, ok ? 0.0 : 1.0, 1.0, details};
}

double det_or_zero(const MatrixXd& m) {
  if (m.rows() == 0) return 1.0;
  return m.determinant();
}

double smallest_sv(const MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return svd.singularValues().minCoeff();
}

// Tangent map of the product (G x K) action of h in H at x, on the stacked
// (gdot | nudot | adot | deltadot) coordinates of T_x(T*(G x A)).
MatrixXd product_h_action_matrix(const SliceChart& chart, const GroupElement& h) {
  const LieGroupModel& model = chart.action.group();
  const int d = model.dim();
  const int r = chart.dimA();
  MatrixXd out = MatrixXd::Zero(2 * d + 2 * r, 2 * d + 2 * r);
  out.topLeftCorner(d, d) = model.Ad_matrix(h);
  out.block(d, d, d, d) = model.coadjoint_matrix(h);
  const MatrixXd actA = chart.act_on_A(h);
  out.block(2 * d, 2 * d, r, r) = actA;
  out.block(2 * d + r, 2 * d + r, r, r) = actA.inverse().transpose();
  return out;
}

double equivariance_residual(const MatrixXd& map, const MatrixXd& source_action,
                             const MatrixXd& target_action) {
  return (map * source_action - target_action * map).norm();
}

}  // namespace

std::vector<CheckResult> verify_liealg(const LieGroupModel& model, const SpecOptions& opts) {
  std::vector<CheckResult> out;
  Rng rng(opts.seed ^ 0x11A1u);
  const int d = model.dim();

  out.push_back(make_check("liealg.jacobi_identity", model.jacobi_residual(), 1e-10));
  out.push_back(make_check("liealg.bracket_closure", model.closure_residual(), 1e-10));

  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    VectorXd xi = rng.gaussian_vector(d);
    if (xi.norm() > 0) xi *= (5.0 * rng.uniform()) / xi.norm();
    const GroupElement g = model.exp(AlgebraVector(xi));
    const GroupElement ginv = model.exp(AlgebraVector(VectorXd(-xi)));
    worst = std::max(worst, (g.matrix * ginv.matrix -
                             MatrixXd::Identity(model.n(), model.n())).norm());
  }
  out.push_back(make_check("liealg.exp_inverse", worst, 1e-10));

  worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const GroupElement g = model.haar_sample(rng);
    const DualVector nu(rng.gaussian_vector(d));
    const DualVector round =
        model.Ad_star(g, model.Ad_star(model.inverse(g), nu));
    worst = std::max(worst, (round.coords - nu.coords).norm());
  }
  out.push_back(make_check("liealg.coadjoint_action_roundtrip", worst, 1e-10));

  // Generator convention: d/dt|0 of the coadjoint action of exp(t xi) on nu
  // equals -ad*_xi nu.
  worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const VectorXd xi = rng.gaussian_vector(d);
    const VectorXd nu = rng.gaussian_vector(d);
    auto curve = [&](double t) {
      return model.coadjoint(model.exp(AlgebraVector(VectorXd(t * xi))), DualVector(nu)).coords;
    };
    const VectorXd fd = central_difference(curve, 1e-6);
    const VectorXd expected = -model.ad_star(AlgebraVector(xi), DualVector(nu)).coords;
    worst = std::max(worst, (fd - expected).norm());
  }
  out.push_back(make_check("liealg.coadjoint_generator_fd", worst, 1e-6));

  out.push_back(make_check("liealg.metric_ad_invariance",
                           model.metric_invariance_residual(rng, opts.samples), 1e-10));

  worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const AlgebraVector xi(rng.gaussian_vector(d)), eta(rng.gaussian_vector(d));
    worst = std::max(worst,
                     (model.bracket(xi, eta).coords - model.structure_bracket(xi, eta).coords)
                         .norm());
  }
  out.push_back(make_check("liealg.structure_constants_agree", worst, 1e-10));
  return out;
}

std::vector<CheckResult> verify_actions(const LinearAction& action, const SpecOptions& opts) {
  std::vector<CheckResult> out;
  Rng rng(opts.seed ^ 0xAC71u);
  const LieGroupModel& model = action.group();
  const int d = model.dim();
  const int n = action.dimQ();

  out.push_back(
      make_check("actions.representation_property", action.representation_residual(), 1e-10));

  double worst = 0.0;
  for (int s = 0; s < 10; ++s)
    worst = std::max(worst, action.compatibility_residual(
                                AlgebraVector(rng.gaussian_vector(d)), 1e-6));
  out.push_back(make_check("actions.act_compatibility_fd", worst, 1e-6));

  worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const GroupElement g = model.haar_sample(rng);
    const CotangentPoint z{rng.gaussian_vector(n), rng.gaussian_vector(n)};
    const DualVector lhs = action.momentum(action.lift(g, z));
    const DualVector rhs = model.coadjoint(g, action.momentum(z));
    worst = std::max(worst, (lhs.coords - rhs.coords).norm());
  }
  out.push_back(make_check("actions.momentum_equivariance", worst, 1e-10));

  worst = 0.0;
  double worst_dual = 0.0;
  for (int s = 0; s < 50; ++s) {
    const VectorXd a = rng.gaussian_vector(n), alpha = rng.gaussian_vector(n);
    const AlgebraVector xi(rng.gaussian_vector(d));
    const DualVector dia = action.diamond_full(a, alpha);
    worst = std::max(worst, std::abs(dia.coords.dot(xi.coords) -
                                     alpha.dot(action.infinitesimal_action(xi, a))));
    worst_dual =
        std::max(worst_dual, std::abs(action.infinitesimal_dual_action(xi, alpha).dot(a) +
                                      alpha.dot(action.infinitesimal_action(xi, a))));
  }
  out.push_back(make_check("actions.diamond_pairing", worst, 1e-12));
  out.push_back(make_check("actions.dual_action_pairing", worst_dual, 1e-12));

  // Canonical left-trivialized form: antisymmetric and nondegenerate.
  worst = 0.0;
  double worst_nondeg = 1.0;
  for (int s = 0; s < 5; ++s) {
    const VectorXd nu = rng.gaussian_vector(d);
    const MatrixXd omega = canonical_form_matrix(model, nu, n);
    worst = std::max(worst, (omega + omega.transpose()).norm());
    worst_nondeg = std::min(worst_nondeg, smallest_sv(omega));
  }
  out.push_back(make_check("actions.canonical_form_antisymmetric", worst, 1e-12));
  out.push_back(make_flag_check("actions.canonical_form_nondegenerate", worst_nondeg > 1e-9,
                                "smallest singular value " + std::to_string(worst_nondeg)));
  return out;
}

std::vector<CheckResult> verify_slices(const SliceChart& chart, const SpecOptions& opts) {
  std::vector<CheckResult> out;
  Rng rng(opts.seed ^ 0x51CEu);
  const LinearAction& action = chart.action;
  const LieGroupModel& model = action.group();
  const int d = model.dim();

  out.push_back(make_check("slices.h_in_k", chart.k.containment_residual(chart.h), 1e-9));
  out.push_back(make_check("slices.h_in_gmu", chart.gmu.containment_residual(chart.h), 1e-9));

  double worst = 0.0;
  for (int j = 0; j < chart.k.dim(); ++j)
    worst = std::max(worst, std::abs(chart.mu.dot(chart.k.columns().col(j))));
  out.push_back(make_check("slices.k_in_ker_mu", worst, 1e-10));

  const Subspace orbit_q = Subspace::span_of(action.orbit_map_config(chart.q));
  out.push_back(make_flag_check(
      "slices.slice_dimension", chart.dimA() == chart.dimQ() - orbit_q.dim(),
      "dim A = " + std::to_string(chart.dimA())));
  out.push_back(make_check("slices.slice_orthogonal_to_orbit",
                           (chart.A.columns().transpose() * orbit_q.columns()).norm(), 1e-10));

  out.push_back(make_flag_check(
      "slices.B_annihilator_dimension",
      chart.dimB() + chart.k_alpha_orbit.dim() == chart.dimA(),
      "dim B = " + std::to_string(chart.dimB()) + ", dim k.alpha = " +
          std::to_string(chart.k_alpha_orbit.dim())));
  out.push_back(make_check(
      "slices.B_annihilates_k_alpha",
      (chart.B.columns().transpose() * chart.k_alpha_orbit.columns()).norm(), 1e-10));

  const Subspace mk_plus_h = Subspace::sum(chart.mk, chart.h);
  const double split_res =
      std::max(mk_plus_h.containment_residual(chart.k), chart.k.containment_residual(mk_plus_h));
  out.push_back(make_check("slices.k_splits_as_mk_plus_h", split_res, 1e-9));

  out.push_back(make_check("slices.remark_H_intersection", remark_H_residual(chart), 1e-9));
  out.push_back(make_flag_check("slices.orbit_dimension_identity",
                                orbit_q.dim() == d - chart.k.dim()));

  // Invariance of the two twisted-product momentum maps.
  double worst_jk = 0.0, worst_jg = 0.0;
  for (int s = 0; s < 100; ++s) {
    GxAPoint x{model.haar_sample(rng), rng.gaussian_vector(d),
               rng.gaussian_vector(chart.dimA()), rng.gaussian_vector(chart.dimA())};
    const GroupElement gl = model.haar_sample(rng);
    GxAPoint left{GroupElement(gl.matrix * x.g.matrix), x.nu, x.a, x.delta};
    worst_jk = std::max(worst_jk, (momentum_JK(action, chart.A, chart.k, left) -
                                   momentum_JK(action, chart.A, chart.k, x)).norm());
    const GroupElement kk = chart.sample_subgroup(chart.k, rng);
    GxAPoint twisted{GroupElement(x.g.matrix * kk.matrix.inverse()),
                     model.coadjoint(kk, DualVector(x.nu)).coords,
                     chart.act_on_A(kk) * x.a,
                     chart.act_on_A(kk).inverse().transpose() * x.delta};
    worst_jg = std::max(worst_jg, (momentum_JG(action, twisted).coords -
                                   momentum_JG(action, x).coords).norm());
  }
  out.push_back(make_check("actions.JK_left_invariance", worst_jk, 1e-10));
  out.push_back(make_check("actions.JG_twist_invariance", worst_jg, 1e-10));
  return out;
}

std::vector<CheckResult> verify_normalform(const SliceChart& chart, const SpecOptions& opts) {
  std::vector<CheckResult> out;
  Rng rng(opts.seed ^ 0x90F4u);
  const LieGroupModel& model = chart.action.group();
  const int n = chart.dimQ();
  const MatrixXd omega2n = canonical_omega(n);

  const NormalSpaceData nsd = symplectic_normal_space(chart);
  out.push_back(make_check("normalform.orbit_in_kernel",
                           nsd.kerdJ.containment_residual(nsd.orbit_gmu), 1e-9));
  out.push_back(make_flag_check(
      "normalform.Ns_dimension",
      nsd.reps.dim() == nsd.kerdJ.dim() - nsd.orbit_gmu.dim() && nsd.reps.dim() % 2 == 0,
      "dim Ns = " + std::to_string(nsd.reps.dim())));
  out.push_back(make_check("normalform.reduced_form_antisymmetric",
                           (nsd.omega_red + nsd.omega_red.transpose()).norm(), 1e-12));
  out.push_back(make_flag_check(
      "normalform.reduced_form_nondegenerate",
      nsd.reps.dim() == 0 || smallest_sv(nsd.omega_red) > 1e-9,
      "smallest singular value " + std::to_string(smallest_sv(nsd.omega_red))));
  // Lemma-level well-definedness: quotient directions are in the kernel of
  // the restricted form.
  out.push_back(make_check(
      "normalform.quotient_well_defined",
      (nsd.orbit_gmu.columns().transpose() * omega2n * nsd.kerdJ.columns()).norm(), 1e-10));

  const WittArtinData w = witt_artin(chart);
  {
    const Subspace orbit_g = Subspace::sum(w.T1, w.T0);
    const Subspace orbit_expected = Subspace::span_of([&] {
      MatrixXd cols(2 * n, model.dim());
      for (int j = 0; j < model.dim(); ++j) {
        VectorXd e = VectorXd::Zero(model.dim());
        e(j) = 1.0;
        const MatrixXd rho = chart.action.infinitesimal(AlgebraVector(e));
        cols.col(j).head(n) = rho * chart.q;
        cols.col(j).tail(n) = -rho.transpose() * chart.p;
      }
      return cols;
    }());
    const bool dims_ok =
        w.T1.dim() + w.T0.dim() == orbit_expected.dim() &&
        w.N1.dim() + w.T0.dim() == nsd.kerdJ.dim() &&
        w.T1.dim() + w.T0.dim() + w.N0.dim() + w.N1.dim() == 2 * n;
    out.push_back(make_flag_check("wittartin.dimension_bookkeeping", dims_ok,
                                  "T1,T0,N0,N1 = " + std::to_string(w.T1.dim()) + "," +
                                      std::to_string(w.T0.dim()) + "," +
                                      std::to_string(w.N0.dim()) + "," +
                                      std::to_string(w.N1.dim())));
    const double sum_res =
        std::max(orbit_g.containment_residual(orbit_expected),
                 orbit_expected.containment_residual(orbit_g));
    out.push_back(make_check("wittartin.orbit_split", sum_res, 1e-9));

    auto restricted = [&](const Subspace& s) -> MatrixXd {
      return s.columns().transpose() * omega2n * s.columns();
    };
    const bool t1_symp = w.T1.dim() == 0 || smallest_sv(restricted(w.T1)) > 1e-9;
    const bool n1_symp = w.N1.dim() == 0 || smallest_sv(restricted(w.N1)) > 1e-9;
    out.push_back(make_flag_check("wittartin.T1_N1_symplectic", t1_symp && n1_symp));
    out.push_back(make_check("wittartin.T0_isotropic", restricted(w.T0).norm(), 1e-10));
    out.push_back(make_check("wittartin.N0_isotropic", restricted(w.N0).norm(), 1e-10));
    const MatrixXd pairing =
        w.T0.columns().transpose() * omega2n * w.N0.columns();
    out.push_back(make_flag_check(
        "wittartin.T0_N0_pairing_invertible",
        w.T0.dim() == 0 || std::abs(det_or_zero(pairing)) > 1e-12,
        "pairing det " + std::to_string(det_or_zero(pairing))));
    // Full decomposition: T1 + (T0+N0) + N1 spans, blocks symplectically
    // orthogonal to T1 and N1.
    Subspace all = Subspace::sum(Subspace::sum(w.T1, w.T0), Subspace::sum(w.N0, w.N1));
    out.push_back(make_flag_check("wittartin.direct_sum_spans", all.dim() == 2 * n));
  }

  // KKS well-definedness: perturbing xi by g_mu elements leaves the form
  // value unchanged.
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const AlgebraVector eta(rng.gaussian_vector(model.dim()));
    for (int j = 0; j < chart.gmu.dim(); ++j) {
      const AlgebraVector zeta(chart.gmu.columns().col(j));
      worst = std::max(worst, std::abs(kks_form(model, DualVector(chart.mu), -1, zeta, eta)));
    }
  }
  out.push_back(make_check("normalform.kks_well_defined", worst, 1e-10));

  const OmuTAModel om = model_OmuTA(chart);
  out.push_back(make_flag_check(
      "normalform.orbit_tangent_dimension",
      om.tangent.dim() == model.dim() - chart.gmu.dim(),
      "dim T_mu O_mu = " + std::to_string(om.tangent.dim())));
  out.push_back(make_check(
      "normalform.model_momentum_at_base",
      model_momentum_JK(chart, chart.mu, VectorXd::Zero(chart.dimA()), chart.alpha).norm(),
      1e-10));

  // Tangent-level chain.
  const TangentChainData chain = tangent_level_chain(chart);
  out.push_back(make_check("chain.piK_congruence", chain.piK.congruence_residual(), 1e-9));
  out.push_back(make_check("chain.piGmu_congruence", chain.piGmu.congruence_residual(), 1e-9));
  out.push_back(make_check("chain.theta_congruence", chain.theta.congruence_residual(), 1e-9));
  out.push_back(make_flag_check(
      "chain.piK_invertible",
      chain.piK.map.rows() == chain.piK.map.cols() &&
          (chain.piK.map.rows() == 0 || std::abs(det_or_zero(chain.piK.map)) > 1e-12)));

  // Reduced-form well-definedness on representatives (Lemma-level): orbit
  // directions pair to zero against the kernel.
  {
    const MatrixXd omega_gxa = canonical_form_matrix(model, chart.mu, chart.dimA());
    out.push_back(make_check(
        "chain.quotient_well_defined",
        (chain.orbit_x.columns().transpose() * omega_gxa * chain.ker_x.columns()).norm(),
        1e-10));
  }

  // H-equivariance of the chain maps on 20 subgroup samples.
  if (chart.h.dim() > 0 && chain.reps_x.dim() > 0) {
    double worst_pik = 0.0, worst_theta = 0.0;
    for (int s = 0; s < 20; ++s) {
      const GroupElement h = chart.sample_subgroup(chart.h, rng);
      const MatrixXd big = product_h_action_matrix(chart, h);
      const MatrixXd src =
          chain.reps_x.columns().transpose() * big * chain.reps_x.columns();
      const MatrixXd tgt_z = h_action_on_reps(chart, chain.nsd_z, h);
      worst_pik = std::max(worst_pik,
                           equivariance_residual(chain.piK.map, src, tgt_z));
      // Model-side action: coadjoint on the orbit tangent block, lifted
      // action on T*A.
      const int t = chain.model.tangent.dim();
      const int r = chart.dimA();
      MatrixXd tgt_m = MatrixXd::Zero(t + 2 * r, t + 2 * r);
      tgt_m = chain.model.action_matrix(chart, h);
      const MatrixXd tgt_model = chain.model_reps.columns().transpose() * tgt_m *
                                 chain.model_reps.columns();
      worst_theta = std::max(worst_theta,
                             equivariance_residual(chain.theta.map, src, tgt_model));
    }
    out.push_back(make_check("chain.piK_H_equivariance", worst_pik, 1e-9));
    out.push_back(make_check("chain.theta_H_equivariance", worst_theta, 1e-9));
  }

  if (chart.flags.K_subset_Gmu) {
    const SplittingMap split = splitting_K_subset_Gmu(chart, nsd);
    out.push_back(
        make_check("splitting.K_subset_Gmu_congruence", split.congruence_residual(), 1e-9));
    double worst_eq = 0.0;
    for (int s = 0; s < 20; ++s) {
      const GroupElement h = chart.sample_subgroup(chart.h, rng);
      const MatrixXd src = h_action_on_reps(chart, nsd, h);
      const MatrixXd tgt = h_action_on_split_target(chart, om, h);
      worst_eq = std::max(worst_eq, equivariance_residual(split.map, src, tgt));
    }
    out.push_back(make_check("splitting.K_subset_Gmu_H_equivariance", worst_eq, 1e-9));
  }
  if (chart.flags.alpha_zero) {
    const SplittingMap split = splitting_alpha0(chart, nsd);
    out.push_back(
        make_check("splitting.alpha0_congruence", split.congruence_residual(), 1e-9));
    const Subspace nsmu = nsmu_representatives(chart, om);
    double worst_eq = 0.0;
    for (int s = 0; s < 20; ++s) {
      const GroupElement h = chart.sample_subgroup(chart.h, rng);
      const MatrixXd src = h_action_on_reps(chart, nsd, h);
      const MatrixXd tgt = h_action_on_alpha0_target(chart, om, nsmu, h);
      worst_eq = std::max(worst_eq, equivariance_residual(split.map, src, tgt));
    }
    out.push_back(make_check("splitting.alpha0_H_equivariance", worst_eq, 1e-9));
  }
  return out;
}

namespace {

ModelPoint sample_model_point(const TubeChart& tc, Rng& rng, double nu_scale = 0.5,
                              double ab_scale = 0.3) {
  const double delta_scale = 0.3 * std::min(tc.U_bound, 1.0);
  ModelPoint m;
  m.g = tc.chart.action.group().haar_sample(rng);
  m.nu = nu_scale * rng.gaussian_vector(tc.dimM());
  m.a = ab_scale * rng.gaussian_vector(tc.dimB());
  VectorXd delta = rng.gaussian_vector(tc.dimB());
  if (delta.norm() > 0) delta *= delta_scale * rng.uniform() / delta.norm();
  m.delta = delta;
  return m;
}

VectorXd ambient_flat(const AmbientCotangent& z) {
  VectorXd out(z.point.size() + z.covector.size());
  out << z.point, z.covector;
  return out;
}

}  // namespace

std::vector<CheckResult> verify_tube(const TubeChart& tc, const SpecOptions& opts) {
  std::vector<CheckResult> out;
  Rng rng(opts.seed ^ 0x70BEu);
  const SliceChart& c = tc.chart;
  const LieGroupModel& model = c.action.group();
  const int d = model.dim();

  // Gamma*: defining relation and the diamond inverse identity.
  {
    double worst_def = 0.0, worst_inv = 0.0;
    for (int s = 0; s < 100; ++s) {
      VectorXd delta = rng.gaussian_vector(tc.dimB());
      if (delta.norm() > 0)
        delta *= 0.5 * std::min(tc.U_bound, 1.0) * rng.uniform() / delta.norm();
      const VectorXd nubar = rng.gaussian_vector(c.mk.dim());
      const VectorXd g = gamma_star(tc, delta, nubar);
      const VectorXd target = tc.alpha_A + c.B.embed(delta);
      for (int j = 0; j < c.mk.dim(); ++j) {
        const MatrixXd rhoA = c.action_on_A(c.mk.columns().col(j));
        const VectorXd dir = -rhoA.transpose() * target;
        worst_def = std::max(worst_def, std::abs(g.dot(dir) - nubar(j)));
      }
      for (int j = 0; j < c.dimB(); ++j)
        worst_def = std::max(worst_def, std::abs(g.dot(c.B.columns().col(j))));
      const VectorXd recovered = -c.diamond_A(g, target, c.mk);
      worst_inv = std::max(worst_inv, (recovered - nubar).norm());
    }
    out.push_back(make_check("tube.gamma_defining_relation", worst_def, 1e-10));
    out.push_back(make_check("tube.gamma_inverse_identity", worst_inv, 1e-10));
  }

  // sigma: range condition J_K = 0 on J_H^{-1}(0) samples.
  {
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const ModelPoint m = sample_model_point(tc, rng);
      const GxAPoint w = l_map(tc, m.g, m.nu, m.a, m.delta);
      const GxAPoint img = sigma_map(tc, w.g, w.nu, m.a, m.delta);
      worst = std::max(worst, momentum_JK(c.action, c.A, c.k, img).norm());
    }
    out.push_back(make_check("tube.sigma_range_condition", worst, 1e-9));
  }

  // sigma presymplectic on J_H^{-1}(0) directions (finite differences).
  {
    double worst = 0.0;
    const int b = tc.dimB();
    for (int s = 0; s < 5; ++s) {
      const ModelPoint m = sample_model_point(tc, rng);
      const GxAPoint w = l_map(tc, m.g, m.nu, m.a, m.delta);
      // dJ_H on (gdot | nudot | adot | deltadot) coordinates of T*(G x B).
      MatrixXd dJH(c.h.dim(), 2 * d + 2 * b);
      dJH.setZero();
      const VectorXd a_A = c.B.embed(w.a), delta_A = c.B.embed(w.delta);
      for (int j = 0; j < c.h.dim(); ++j) {
        dJH.row(j).segment(d, d) = -c.h.columns().col(j).transpose();
        const MatrixXd rhoA = c.action_on_A(c.h.columns().col(j));
        dJH.row(j).segment(2 * d, b) =
            (c.B.columns().transpose() * rhoA.transpose() * delta_A).transpose();
        dJH.row(j).tail(b) =
            (c.B.columns().transpose() * rhoA * a_A).transpose();
      }
      const MatrixXd ker = kernel_basis(dJH);
      std::vector<GxATangent> dirs;
      for (int i = 0; i < ker.cols(); ++i) {
        GxATangent v;
        v.gdot = ker.col(i).head(d);
        v.nudot = ker.col(i).segment(d, d);
        v.adot = ker.col(i).segment(2 * d, b);
        v.deltadot = ker.col(i).tail(b);
        dirs.push_back(v);
      }
      const MatrixXd pulled = sigma_pullback_form_fd(tc, w, dirs, opts.fd_step);
      const MatrixXd direct = gxb_form_matrix(tc, w, dirs);
      worst = std::max(worst, (pulled - direct).cwiseAbs().maxCoeff());
    }
    out.push_back(make_check("tube.sigma_presymplectic_fd", worst, opts.tol_fd));
  }

  // Base point maps to z.
  {
    const ModelPoint base{GroupElement(MatrixXd::Identity(model.n(), model.n())),
                          VectorXd::Zero(tc.dimM()), VectorXd::Zero(tc.dimB()),
                          VectorXd::Zero(tc.dimB())};
    const AmbientCotangent z = tube_evaluate(tc, base);
    const double res = (z.point - c.q).norm() + (z.covector - c.p).norm();
    out.push_back(make_check("tube.base_point", res, 1e-10));
  }

  // Symplecticity by finite differences.
  {
    double worst = 0.0;
    for (int s = 0; s < opts.samples; ++s) {
      const ModelPoint m = sample_model_point(tc, rng);
      const MatrixXd pulled = tube_pullback_form_fd(tc, m, opts.fd_step);
      const MatrixXd side = model_side_form(tc, m);
      worst = std::max(worst, (pulled - side).cwiseAbs().maxCoeff());
    }
    out.push_back(make_check("tube.symplecticity_fd", worst, opts.tol_fd));
  }

  // Equivariance and H-quotient respect.
  {
    double worst_eq = 0.0, worst_h = 0.0;
    for (int s = 0; s < 100; ++s) {
      const ModelPoint m = sample_model_point(tc, rng);
      const AmbientCotangent z = tube_evaluate(tc, m);
      const GroupElement gp = model.haar_sample(rng);
      ModelPoint moved = m;
      moved.g = GroupElement(gp.matrix * m.g.matrix);
      const AmbientCotangent lhs = tube_evaluate(tc, moved);
      const CotangentPoint rhs = c.action.lift(gp, CotangentPoint{z.point, z.covector});
      worst_eq = std::max(worst_eq, (lhs.point - rhs.a).norm() +
                                        (lhs.covector - rhs.alpha).norm());
      if (c.h.dim() > 0) {
        const GroupElement h = c.sample_subgroup(c.h, rng);
        const AmbientCotangent tw = tube_evaluate(tc, model_twist(tc, h, m));
        worst_h = std::max(worst_h,
                           (tw.point - z.point).norm() + (tw.covector - z.covector).norm());
      }
    }
    out.push_back(make_check("tube.G_equivariance", worst_eq, 1e-10));
    out.push_back(make_check("tube.H_quotient_respect", worst_h, 1e-9));
  }

  // Injectivity on samples: distinct non-twist-related points separate.
  {
    double min_sep = 1e9;
    for (int s = 0; s < 50; ++s) {
      const ModelPoint m1 = sample_model_point(tc, rng);
      const ModelPoint m2 = sample_model_point(tc, rng);
      const VectorXd z1 = ambient_flat(tube_evaluate(tc, m1));
      const VectorXd z2 = ambient_flat(tube_evaluate(tc, m2));
      // Model-space distance modulo nothing; candidates this far apart are
      // not twist-related with overwhelming margin for the sampled radii.
      const double model_dist = (m1.g.matrix - m2.g.matrix).norm() + (m1.nu - m2.nu).norm() +
                                (m1.a - m2.a).norm() + (m1.delta - m2.delta).norm();
      if (model_dist > 0.5) min_sep = std::min(min_sep, (z1 - z2).norm());
    }
    out.push_back(make_flag_check("tube.injectivity_sampled", min_sep > 1e-8,
                                  "min separation " + std::to_string(min_sep)));
  }

  // The two constructions agree.
  {
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const ModelPoint m = sample_model_point(tc, rng);
      worst = std::max(worst, (ambient_flat(tube_evaluate(tc, m)) -
                               ambient_flat(tube_alternative(tc, m))).norm());
    }
    out.push_back(make_check("tube.alternative_construction_agrees", worst, 1e-9));
  }

  // l map lands in J_H^{-1}(0).
  {
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const ModelPoint m = sample_model_point(tc, rng);
      const GxAPoint w = l_map(tc, m.g, m.nu, m.a, m.delta);
      if (c.h.dim() == 0) continue;
      const VectorXd jh = -c.h.columns().transpose() * w.nu +
                          c.diamond_A(c.B.embed(w.a), c.B.embed(w.delta), c.h);
      worst = std::max(worst, jh.norm());
    }
    out.push_back(make_check("tube.l_map_range", worst, 1e-10));
  }

  // Momentum compatibility.
  {
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const ModelPoint m = sample_model_point(tc, rng);
      const AmbientCotangent z = tube_evaluate(tc, m);
      const VectorXd j = c.action.momentum(CotangentPoint{z.point, z.covector}).coords;
      worst = std::max(worst, (j - model_momentum(tc, m).coords).norm());
    }
    out.push_back(make_check("tube.momentum_compatibility", worst, 1e-9));
  }

  // Validity radius certification.
  if (tc.chart.mk.dim() > 0 && tc.dimB() > 0) {
    double worst_cond = 0.0;
    for (int s = 0; s < 10; ++s) {
      VectorXd dir = rng.gaussian_vector(tc.dimB());
      if (dir.norm() == 0) continue;
      dir *= 0.95 * std::min(tc.U_bound, 1e6) / dir.norm();
      worst_cond = std::max(worst_cond, gamma_condition(tc, dir));
    }
    out.push_back(make_flag_check("tube.u_bound_certified", worst_cond < 1e8,
                                  "max condition " + std::to_string(worst_cond)));
  }
  return out;
}

namespace {

Json splitting_summary(const SliceChart& chart, const NormalSpaceData& nsd) {
  Json out;
  if (chart.flags.K_subset_Gmu) {
    const SplittingMap s = splitting_K_subset_Gmu(chart, nsd);
    out["K_subset_Gmu"] = {{"matrix", matrix_to_json(s.map)},
                           {"congruence_residual", s.congruence_residual()}};
  }
  if (chart.flags.alpha_zero) {
    const SplittingMap s = splitting_alpha0(chart, nsd);
    out["alpha0"] = {{"matrix", matrix_to_json(s.map)},
                     {"congruence_residual", s.congruence_residual()}};
  }
  const TangentChainData chain = tangent_level_chain(chart);
  out["tangent_chain"] = {
      {"piK_congruence_residual", chain.piK.congruence_residual()},
      {"piGmu_congruence_residual", chain.piGmu.congruence_residual()},
      {"theta_congruence_residual", chain.theta.congruence_residual()},
      {"smallest_retained_sv", chain.smallest_retained_sv}};
  return out;
}

}  // namespace

Json run_analyze(const ProblemSpec& spec) {
  Json report = report_header(spec);
  report["command"] = "analyze";
  const LinearAction action = spec.make_action();
  const SliceChart chart = build_slice_chart(action, spec.q_vec(), spec.p_vec());
  report["chart"] = chart_summary(chart);
  const NormalSpaceData nsd = symplectic_normal_space(chart);
  report["normal_form"] = normal_space_summary(nsd);
  report["normal_form"]["splittings"] = splitting_summary(chart, nsd);
  report["witt_artin"] = witt_artin_summary(witt_artin(chart));
  if (chart.flags.Gmu_full) {
    const TubeChart tc = build_tube_chart(chart);
    report["tube"] = tube_summary(tc);
  } else {
    report["tube"] = nullptr;
  }

  std::vector<CheckResult> checks = verify_slices(chart, spec.options);
  Json jchecks = Json::array();
  for (const auto& c : checks) jchecks.push_back(check_to_json(c));
  report["checks"] = jchecks;
  report["all_passed"] = all_checks_passed(report);
  return report;
}

Json run_verify(const ProblemSpec& spec) {
  Json report = report_header(spec);
  report["command"] = "verify";
  const LinearAction action = spec.make_action();
  const SliceChart chart = build_slice_chart(action, spec.q_vec(), spec.p_vec());
  report["chart"] = chart_summary(chart);
  const NormalSpaceData nsd = symplectic_normal_space(chart);
  report["normal_form"] = normal_space_summary(nsd);
  report["normal_form"]["splittings"] = splitting_summary(chart, nsd);
  report["witt_artin"] = witt_artin_summary(witt_artin(chart));

  std::vector<CheckResult> checks;
  auto extend = [&](std::vector<CheckResult> more) {
    checks.insert(checks.end(), more.begin(), more.end());
  };
  extend(verify_liealg(action.group(), spec.options));
  extend(verify_actions(action, spec.options));
  extend(verify_slices(chart, spec.options));
  extend(verify_normalform(chart, spec.options));

  Json skipped = Json::array();
  if (chart.flags.Gmu_full) {
    const TubeChart tc = build_tube_chart(chart);
    report["tube"] = tube_summary(tc);
    extend(verify_tube(tc, spec.options));
  } else {
    report["tube"] = nullptr;
    skipped.push_back({{"suite", "tube"},
                       {"reason", "G_mu is not all of G; the tube construction does not apply"}});
  }
  skipped.push_back(
      {{"suite", "dynamics"}, {"reason", "dynamics checks run under the simulate command"}});

  Json jchecks = Json::array();
  for (const auto& c : checks) jchecks.push_back(check_to_json(c));
  report["checks"] = jchecks;
  report["skipped"] = skipped;
  report["all_passed"] = all_checks_passed(report);
  return report;
}

Json run_tube_eval(const ProblemSpec& spec, const Json& point) {
  Json report = report_header(spec);
  report["command"] = "tube-eval";
  const LinearAction action = spec.make_action();
  const SliceChart chart = build_slice_chart(action, spec.q_vec(), spec.p_vec());
  report["chart"] = chart_summary(chart);
  if (!chart.flags.Gmu_full)
    throw std::domain_error(
        "tube-eval: out of theorem scope, the tube requires the fully isotropic case G_mu = G");
  const TubeChart tc = build_tube_chart(chart);
  report["tube"] = tube_summary(tc);

  const LieGroupModel& model = action.group();
  ModelPoint m;
  m.g = GroupElement(MatrixXd::Identity(model.n(), model.n()));
  if (point.contains("g_exp")) {
    VectorXd xi(model.dim());
    for (int i = 0; i < model.dim(); ++i) xi(i) = point["g_exp"].at(i).get<double>();
    m.g = model.exp(AlgebraVector(xi));
  } else if (point.contains("g")) {
    MatrixXd g(model.n(), model.n());
    for (int i = 0; i < model.n(); ++i)
      for (int j = 0; j < model.n(); ++j) g(i, j) = point["g"].at(i).at(j).get<double>();
    if (!model.is_in_group(GroupElement(g)))
      throw std::invalid_argument("tube-eval: supplied g is not in the group");
    m.g = GroupElement(g);
  }
  auto read_vec = [&](const char* key, int size) -> VectorXd {
    VectorXd v = VectorXd::Zero(size);
    if (!point.contains(key)) return v;
    if (static_cast<int>(point[key].size()) != size)
      throw std::invalid_argument(std::string("tube-eval: '") + key + "' must have length " +
                                  std::to_string(size));
    for (int i = 0; i < size; ++i) v(i) = point[key].at(i).get<double>();
    return v;
  };
  m.nu = read_vec("nu", tc.dimM());
  m.a = read_vec("a", tc.dimB());
  m.delta = read_vec("delta", tc.dimB());

  const AmbientCotangent z = tube_evaluate(tc, m);
  const AmbientCotangent z2 = tube_alternative(tc, m);
  report["point"] = {{"nu", vector_to_json(m.nu)},
                     {"a", vector_to_json(m.a)},
                     {"delta", vector_to_json(m.delta)},
                     {"g", matrix_to_json(m.g.matrix)}};
  report["image"] = {{"q", vector_to_json(z.point)}, {"p", vector_to_json(z.covector)}};

  std::vector<CheckResult> checks;
  checks.push_back(make_check("tube_eval.constructions_agree",
                              (ambient_flat(z) - ambient_flat(z2)).norm(), 1e-9));
  const VectorXd j = action.momentum(CotangentPoint{z.point, z.covector}).coords;
  checks.push_back(make_check("tube_eval.momentum_compatibility",
                              (j - model_momentum(tc, m).coords).norm(), 1e-9));
  Json jchecks = Json::array();
  for (const auto& c : checks) jchecks.push_back(check_to_json(c));
  report["checks"] = jchecks;
  report["all_passed"] = all_checks_passed(report);
  return report;
}

Json run_simulate(const ProblemSpec& spec) {
  Json report = report_header(spec);
  report["command"] = "simulate";
  const LinearAction action = spec.make_action();
  const SliceChart chart = build_slice_chart(action, spec.q_vec(), spec.p_vec());
  report["chart"] = chart_summary(chart);
  if (!chart.flags.Gmu_full)
    throw std::domain_error(
        "simulate: out of theorem scope, the bundle equations are integrated only for G_mu = G");
  const TubeChart tc = build_tube_chart(chart);
  report["tube"] = tube_summary(tc);

  const HamiltonianSpec H = spec.make_hamiltonian();
  std::vector<CheckResult> checks;
  {
    Rng rng(spec.options.seed ^ 0xD12Au);
    checks.push_back(make_check("dynamics.hamiltonian_invariance",
                                H.invariance_residual(action, rng, 50), 1e-9));
  }

  const double dt = spec.options.dt;
  const int steps = spec.options.steps;
  const ModelPoint start{GroupElement(MatrixXd::Identity(action.group().n(), action.group().n())),
                         VectorXd::Zero(tc.dimM()), VectorXd::Zero(tc.dimB()),
                         VectorXd::Zero(tc.dimB())};
  const FlowComparison coarse = compare_flows(tc, H, start, dt, steps);
  const FlowComparison fine = compare_flows(tc, H, start, dt / 2.0, 2 * steps);

  report["dynamics"] = {{"dt", dt},
                        {"steps", steps},
                        {"sup_error", coarse.sup_error},
                        {"sup_error_half_dt", fine.sup_error},
                        {"momentum_drift", coarse.momentum_drift},
                        {"energy_drift", coarse.energy_drift}};

  // Fourth-order intertwining: halving dt shrinks the sup error about
  // 16-fold. Runs already at the finite-difference noise floor (the model
  // field uses 1e-6 central-difference gradients) are exempt: the flows
  // then agree to better than 1e-10 outright.
  if (coarse.sup_error < 1e-10) {
    checks.push_back(make_flag_check("dynamics.flow_intertwining_ratio", true,
                                     "sup error " + std::to_string(coarse.sup_error) +
                                         " already at the gradient noise floor"));
  } else {
    const double ratio = coarse.sup_error / std::max(fine.sup_error, 1e-300);
    checks.push_back(make_flag_check(
        "dynamics.flow_intertwining_ratio", ratio > 10.0 && ratio < 24.0,
        "ratio " + std::to_string(ratio)));
  }
  // Momentum drift tolerance: 1e-8 at dt = 1e-3 over 100 steps, scaled by
  // the horizon and dt^4 for other settings.
  const double horizon = dt * steps;
  const double drift_tol =
      1e-8 * std::pow(dt / 1e-3, 4.0) * std::max(horizon / 0.1, 1.0);
  checks.push_back(
      make_check("dynamics.momentum_drift", coarse.momentum_drift, drift_tol));

  Json jchecks = Json::array();
  for (const auto& c : checks) jchecks.push_back(check_to_json(c));
  report["checks"] = jchecks;
  report["all_passed"] = all_checks_passed(report);
  return report;
}

}  // namespace cotube
