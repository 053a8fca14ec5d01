#include "cotube/normal_form.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

#include "cotube/tube.hpp"

namespace cotube {

namespace {

// Tangent vectors of the cotangent-lifted orbit directions at z, columns
// (rho(xi) q ; -rho(xi)^T p) over a basis of l.
MatrixXd orbit_columns(const SliceChart& chart, const Subspace& l) {
  const int n = chart.dimQ();
  MatrixXd cols(2 * n, l.dim());
  for (int j = 0; j < l.dim(); ++j) {
    const MatrixXd rho = chart.action.infinitesimal(AlgebraVector(l.columns().col(j)));
    cols.col(j).head(n) = rho * chart.q;
    cols.col(j).tail(n) = -rho.transpose() * chart.p;
  }
  return cols;
}

MatrixXd momentum_differential(const SliceChart& chart) {
  const int n = chart.dimQ();
  const int d = chart.dimG();
  MatrixXd dJ(d, 2 * n);
  for (int i = 0; i < d; ++i) {
    const MatrixXd& rho = chart.action.rho()[i];
    dJ.row(i).head(n) = (rho.transpose() * chart.p).transpose();  // <p, rho dq>
    dJ.row(i).tail(n) = (rho * chart.q).transpose();              // <dp, rho q>
  }
  return dJ;
}

double smallest_retained_singular_value(const MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double tau = rank_threshold(sv(0));
  double smallest = 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tau) smallest = sv(i);
  return smallest;
}

// Lagrangian complement of the Lagrangian t0 inside the symplectic space
// spanned by w_cols: J0 t0 with J0 the compatible complex structure from the
// polar decomposition of the restricted form.
Subspace lagrangian_complement(const MatrixXd& omega_ambient, const Subspace& w,
                               const Subspace& t0) {
  if (t0.dim() == 0) return Subspace::zero(t0.ambient());
  const MatrixXd omega_w = w.columns().transpose() * omega_ambient * w.columns();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(omega_w.transpose() * omega_w);
  // S = (omega_w^T omega_w)^{1/2}, J0 = omega_w S^{-1}.
  const MatrixXd s_inv = es.eigenvectors() *
                         es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                         es.eigenvectors().transpose();
  const MatrixXd j0 = omega_w * s_inv;
  const MatrixXd t0_in_w = w.columns().transpose() * t0.columns();
  return Subspace::span_of(w.columns() * (j0 * t0_in_w));
}

}  // namespace

NormalSpaceData symplectic_normal_space(const SliceChart& chart) {
  NormalSpaceData out;
  const MatrixXd dJ = momentum_differential(chart);
  out.kerdJ = Subspace::kernel_of(dJ);
  out.smallest_retained_sv = smallest_retained_singular_value(dJ);
  out.orbit_gmu = Subspace::span_of(orbit_columns(chart, chart.gmu));
  out.reps = out.orbit_gmu.complement_within(out.kerdJ);
  const MatrixXd omega = canonical_omega(chart.dimQ());
  out.omega_red = out.reps.columns().transpose() * omega * out.reps.columns();
  return out;
}

WittArtinData witt_artin(const SliceChart& chart) {
  WittArtinData out;
  const int n = chart.dimQ();
  const MatrixXd omega = canonical_omega(n);

  out.T0 = Subspace::span_of(orbit_columns(chart, chart.gmu));
  const Subspace orbit_g =
      Subspace::span_of(orbit_columns(chart, Subspace::full(chart.dimG())));
  out.T1 = out.T0.complement_within(orbit_g);
  const Subspace kerdJ = Subspace::kernel_of(momentum_differential(chart));
  out.N1 = out.T0.complement_within(kerdJ);

  const Subspace t1n1 = Subspace::sum(out.T1, out.N1);
  const Subspace w = t1n1.dim() == 0
                         ? Subspace::full(2 * n)
                         : Subspace::kernel_of(t1n1.columns().transpose() * omega);
  out.N0 = lagrangian_complement(omega, w, out.T0);
  return out;
}

double kks_form(const LieGroupModel& model, const DualVector& mu, int sign,
                const AlgebraVector& xi, const AlgebraVector& eta) {
  const double v = mu.coords.dot(model.structure_bracket(xi, eta).coords);
  return sign >= 0 ? v : -v;
}

OmuTAModel model_OmuTA(const SliceChart& chart) {
  OmuTAModel out;
  const LieGroupModel& model = chart.action.group();
  const int d = model.dim();
  const int r = chart.dimA();
  const Subspace gmu_perp = chart.gmu.complement();

  // T_mu O_mu spanned by -ad*_xi mu over a complement of g_mu.
  MatrixXd gen(d, gmu_perp.dim());
  for (int j = 0; j < gmu_perp.dim(); ++j)
    gen.col(j) = -model.ad_star(AlgebraVector(gmu_perp.columns().col(j)),
                                DualVector(chart.mu)).coords;
  out.tangent = Subspace::span_of(gen);
  out.dimA = r;

  // KKS-minus form on the orthonormal tangent basis: pull each basis vector
  // back to a generator and evaluate -<mu,[xi,eta]>.
  const int t = out.tangent.dim();
  out.omega_minus = MatrixXd::Zero(t, t);
  if (t > 0) {
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> solver(gen);
    MatrixXd gens(d, t);
    for (int a = 0; a < t; ++a) {
      const VectorXd coeff = solver.solve(out.tangent.columns().col(a));
      gens.col(a) = gmu_perp.columns() * coeff;
    }
    for (int a = 0; a < t; ++a)
      for (int b = 0; b < t; ++b)
        out.omega_minus(a, b) = kks_form(model, DualVector(chart.mu), -1,
                                         AlgebraVector(gens.col(a)),
                                         AlgebraVector(gens.col(b)));
  }

  out.omega_model = MatrixXd::Zero(t + 2 * r, t + 2 * r);
  out.omega_model.topLeftCorner(t, t) = out.omega_minus;
  out.omega_model.block(t, t + r, r, r) = MatrixXd::Identity(r, r);
  out.omega_model.block(t + r, t, r, r) = -MatrixXd::Identity(r, r);
  return out;
}

MatrixXd OmuTAModel::action_matrix(const SliceChart& chart, const GroupElement& g) const {
  const int t = tangent.dim();
  const int r = dimA;
  MatrixXd out = MatrixXd::Zero(t + 2 * r, t + 2 * r);
  if (t > 0) {
    const MatrixXd coad = chart.action.group().coadjoint_matrix(g);
    out.topLeftCorner(t, t) = tangent.columns().transpose() * coad * tangent.columns();
  }
  const MatrixXd actA = chart.act_on_A(g);
  out.block(t, t, r, r) = actA;
  out.block(t + r, t + r, r, r) = actA.inverse().transpose();
  return out;
}

VectorXd model_momentum_JK(const SliceChart& chart, const VectorXd& nu, const VectorXd& a,
                           const VectorXd& delta) {
  return -chart.k.columns().transpose() * nu + chart.diamond_A(a, delta, chart.k);
}

double SplittingMap::congruence_residual() const {
  return (map.transpose() * omega_target * map - omega_source).norm();
}

TangentChainData tangent_level_chain(const SliceChart& chart) {
  TangentChainData out;
  const LieGroupModel& model = chart.action.group();
  const int d = model.dim();
  const int r = chart.dimA();
  const int total = 2 * d + 2 * r;

  // Stacked momentum differentials at x = (e, mu, 0, alpha); coordinates
  // (gdot | nudot | adot | deltadot).
  MatrixXd ad_star_by_g(d, d);
  for (int i = 0; i < d; ++i) {
    VectorXd ei = VectorXd::Zero(d);
    ei(i) = 1.0;
    ad_star_by_g.col(i) = model.ad_star(AlgebraVector(ei), DualVector(chart.mu)).coords;
  }
  MatrixXd dJG = MatrixXd::Zero(d, total);
  dJG.block(0, 0, d, d) = -ad_star_by_g;
  dJG.block(0, d, d, d) = MatrixXd::Identity(d, d);

  const int kdim = chart.k.dim();
  MatrixXd dJK = MatrixXd::Zero(kdim, total);
  const VectorXd alphaA = chart.alpha;
  for (int j = 0; j < kdim; ++j) {
    dJK.row(j).segment(d, d) = -chart.k.columns().col(j).transpose();
    const MatrixXd rhoA = chart.action_on_A(chart.k.columns().col(j));
    dJK.row(j).segment(2 * d, r) = (rhoA.transpose() * alphaA).transpose();
  }

  MatrixXd dJGK(d + kdim, total);
  dJGK.topRows(d) = dJG;
  dJGK.bottomRows(kdim) = dJK;
  out.ker_x = Subspace::kernel_of(dJGK);
  out.smallest_retained_sv = smallest_retained_singular_value(dJGK);

  // Orbit directions g_mu.x + k.x.
  MatrixXd orbit_cols(total, chart.gmu.dim() + kdim);
  orbit_cols.setZero();
  for (int j = 0; j < chart.gmu.dim(); ++j)
    orbit_cols.col(j).head(d) = chart.gmu.columns().col(j);
  for (int j = 0; j < kdim; ++j) {
    const VectorXd zeta = chart.k.columns().col(j);
    auto col = orbit_cols.col(chart.gmu.dim() + j);
    col.head(d) = -zeta;
    col.segment(d, d) = -model.ad_star(AlgebraVector(zeta), DualVector(chart.mu)).coords;
    const MatrixXd rhoA = chart.action_on_A(zeta);
    col.tail(r) = -rhoA.transpose() * alphaA;
  }
  out.orbit_x = Subspace::span_of(orbit_cols);
  out.reps_x = out.orbit_x.complement_within(out.ker_x);

  const MatrixXd omega_gxa = canonical_form_matrix(model, chart.mu, r);
  out.omega_x = out.reps_x.columns().transpose() * omega_gxa * out.reps_x.columns();

  // --- map to N_s(z) through the differential of T*s^{-1} after phi ---
  out.nsd_z = symplectic_normal_space(chart);
  {
    const GxAPoint x{GroupElement(MatrixXd::Identity(model.n(), model.n())), chart.mu,
                     VectorXd::Zero(r), chart.alpha};
    MatrixXd map(out.nsd_z.reps.dim(), out.reps_x.dim());
    for (int c = 0; c < out.reps_x.dim(); ++c) {
      const VectorXd v = out.reps_x.columns().col(c);
      GxATangent tv{v.head(d), v.segment(d, d), v.segment(2 * d, r), v.tail(r)};
      const AmbientCotangent dv = phi_pushforward_differential(chart, x, tv);
      VectorXd w(2 * chart.dimQ());
      w << dv.point, dv.covector;
      map.col(c) = out.nsd_z.reps.columns().transpose() * w;
    }
    out.piK = SplittingMap{map, out.omega_x, out.nsd_z.omega_red};
  }

  // --- map to the G_mu-reduced space normal representatives ---
  {
    const Subspace kerG = Subspace::kernel_of(dJG);
    MatrixXd gmu_orbit_cols = MatrixXd::Zero(total, chart.gmu.dim());
    for (int j = 0; j < chart.gmu.dim(); ++j)
      gmu_orbit_cols.col(j).head(d) = chart.gmu.columns().col(j);
    const Subspace gmu_orbit = Subspace::span_of(gmu_orbit_cols);
    out.R1 = gmu_orbit.complement_within(kerG);

    const MatrixXd kimg_cols = out.R1.columns().transpose() * out.ker_x.columns();
    const Subspace kimg = Subspace::span_of(kimg_cols);
    // Twist-orbit directions pushed to the reduced space.
    MatrixXd korb_cols(out.R1.dim(), kdim);
    for (int j = 0; j < kdim; ++j)
      korb_cols.col(j) =
          out.R1.columns().transpose() * orbit_cols.col(chart.gmu.dim() + j);
    const Subspace korb = Subspace::span_of(korb_cols);
    out.piGmu_target_reps = korb.complement_within(kimg);

    MatrixXd map(out.piGmu_target_reps.dim(), out.reps_x.dim());
    for (int c = 0; c < out.reps_x.dim(); ++c)
      map.col(c) = out.piGmu_target_reps.columns().transpose() *
                   (out.R1.columns().transpose() * out.reps_x.columns().col(c));
    const MatrixXd omega_r1 =
        out.R1.columns().transpose() * omega_gxa * out.R1.columns();
    const MatrixXd omega_target = out.piGmu_target_reps.columns().transpose() * omega_r1 *
                                  out.piGmu_target_reps.columns();
    out.piGmu = SplittingMap{map, out.omega_x, omega_target};
  }

  // --- map to the N_s(mu,0,alpha) model inside O_mu x T*A ---
  {
    out.model = model_OmuTA(chart);
    const int t = out.model.tangent.dim();
    const int mtotal = t + 2 * r;

    MatrixXd dJKp(kdim, mtotal);
    dJKp.setZero();
    for (int j = 0; j < kdim; ++j) {
      const VectorXd zeta = chart.k.columns().col(j);
      if (t > 0)
        dJKp.row(j).head(t) =
            -(out.model.tangent.columns().transpose() * zeta).transpose();
      const MatrixXd rhoA = chart.action_on_A(zeta);
      dJKp.row(j).segment(t, r) = (rhoA.transpose() * alphaA).transpose();
    }
    const Subspace ker_model = Subspace::kernel_of(dJKp);

    MatrixXd orbit_model = MatrixXd::Zero(mtotal, kdim);
    for (int j = 0; j < kdim; ++j) {
      const VectorXd zeta = chart.k.columns().col(j);
      if (t > 0)
        orbit_model.col(j).head(t) =
            out.model.tangent.columns().transpose() *
            (-model.ad_star(AlgebraVector(zeta), DualVector(chart.mu)).coords);
      const MatrixXd rhoA = chart.action_on_A(zeta);
      orbit_model.col(j).tail(r) = -rhoA.transpose() * alphaA;
    }
    out.model_reps = Subspace::span_of(orbit_model).complement_within(ker_model);

    MatrixXd map(out.model_reps.dim(), out.reps_x.dim());
    for (int c = 0; c < out.reps_x.dim(); ++c) {
      const VectorXd v = out.reps_x.columns().col(c);
      VectorXd w(mtotal);
      if (t > 0)
        w.head(t) = out.model.tangent.columns().transpose() * v.segment(d, d);
      w.segment(t, r) = v.segment(2 * d, r);
      w.tail(r) = v.tail(r);
      map.col(c) = out.model_reps.columns().transpose() * w;
    }
    const MatrixXd omega_target = out.model_reps.columns().transpose() *
                                  out.model.omega_model * out.model_reps.columns();
    out.theta = SplittingMap{map, out.omega_x, omega_target};
  }

  return out;
}

SplittingMap chain_composite(const TangentChainData& chain) {
  if (chain.piK.map.rows() != chain.piK.map.cols())
    throw std::runtime_error("chain_composite: piK is not square");
  const MatrixXd composite = chain.theta.map * chain.piK.map.inverse();
  return SplittingMap{composite, chain.nsd_z.omega_red, chain.theta.omega_target};
}

SplittingMap splitting_K_subset_Gmu(const SliceChart& chart, const NormalSpaceData& nsd) {
  if (!chart.flags.K_subset_Gmu)
    throw std::domain_error("splitting_K_subset_Gmu: requires K contained in G_mu");
  const TangentChainData chain = tangent_level_chain(chart);
  const SplittingMap composite = chain_composite(chain);

  const int t = chain.model.tangent.dim();
  const int r = chart.dimA();
  const int b = chart.dimB();
  // (tc | a | delta) -> (tc | B^T a | B^T delta).
  MatrixXd e = MatrixXd::Zero(t + 2 * b, t + 2 * r);
  e.topLeftCorner(t, t) = MatrixXd::Identity(t, t);
  e.block(t, t, b, r) = chart.B.columns().transpose();
  e.block(t + b, t + r, b, r) = chart.B.columns().transpose();

  MatrixXd omega_target = MatrixXd::Zero(t + 2 * b, t + 2 * b);
  omega_target.topLeftCorner(t, t) = chain.model.omega_minus;
  omega_target.block(t, t + b, b, b) = MatrixXd::Identity(b, b);
  omega_target.block(t + b, t, b, b) = -MatrixXd::Identity(b, b);

  const MatrixXd map = e * chain.model_reps.columns() * composite.map;
  return SplittingMap{map, nsd.omega_red, omega_target};
}

Subspace nsmu_representatives(const SliceChart& chart, const OmuTAModel& model) {
  const int t = model.tangent.dim();
  if (t == 0) return Subspace::zero(0);
  const MatrixXd restrict_k = chart.k.columns().transpose() * model.tangent.columns();
  const Subspace ker = Subspace::kernel_of(restrict_k);  // in t-coordinates
  MatrixXd kmu_cols(t, chart.k.dim());
  for (int j = 0; j < chart.k.dim(); ++j)
    kmu_cols.col(j) =
        model.tangent.columns().transpose() *
        (-chart.action.group().ad_star(AlgebraVector(chart.k.columns().col(j)),
                                       DualVector(chart.mu)).coords);
  const Subspace kmu = Subspace::span_of(kmu_cols);
  return kmu.complement_within(ker);
}

SplittingMap splitting_alpha0(const SliceChart& chart, const NormalSpaceData& nsd) {
  if (!chart.flags.alpha_zero)
    throw std::domain_error("splitting_alpha0: requires alpha = 0");
  const TangentChainData chain = tangent_level_chain(chart);
  const SplittingMap composite = chain_composite(chain);

  const int t = chain.model.tangent.dim();
  const int r = chart.dimA();
  const Subspace nsmu = nsmu_representatives(chart, chain.model);
  const int s = nsmu.dim();

  MatrixXd e = MatrixXd::Zero(s + 2 * r, t + 2 * r);
  if (t > 0 && s > 0) e.topLeftCorner(s, t) = nsmu.columns().transpose();
  e.block(s, t, 2 * r, 2 * r) = MatrixXd::Identity(2 * r, 2 * r);

  MatrixXd omega_target = MatrixXd::Zero(s + 2 * r, s + 2 * r);
  if (s > 0)
    omega_target.topLeftCorner(s, s) =
        nsmu.columns().transpose() * chain.model.omega_minus * nsmu.columns();
  omega_target.block(s, s + r, r, r) = MatrixXd::Identity(r, r);
  omega_target.block(s + r, s, r, r) = -MatrixXd::Identity(r, r);

  const MatrixXd map = e * chain.model_reps.columns() * composite.map;
  return SplittingMap{map, nsd.omega_red, omega_target};
}

MatrixXd h_action_on_reps(const SliceChart& chart, const NormalSpaceData& nsd,
                          const GroupElement& h) {
  const int n = chart.dimQ();
  const MatrixXd m = chart.action.act(h);
  MatrixXd lifted = MatrixXd::Zero(2 * n, 2 * n);
  lifted.topLeftCorner(n, n) = m;
  lifted.bottomRightCorner(n, n) = m.inverse().transpose();
  return nsd.reps.columns().transpose() * lifted * nsd.reps.columns();
}

MatrixXd h_action_on_split_target(const SliceChart& chart, const OmuTAModel& model,
                                  const GroupElement& h) {
  const int t = model.tangent.dim();
  const int b = chart.dimB();
  MatrixXd out = MatrixXd::Zero(t + 2 * b, t + 2 * b);
  if (t > 0) {
    const MatrixXd coad = chart.action.group().coadjoint_matrix(h);
    out.topLeftCorner(t, t) =
        model.tangent.columns().transpose() * coad * model.tangent.columns();
  }
  const MatrixXd actA = chart.act_on_A(h);
  const MatrixXd actB = chart.B.columns().transpose() * actA * chart.B.columns();
  out.block(t, t, b, b) = actB;
  out.block(t + b, t + b, b, b) = actB.inverse().transpose();
  return out;
}

MatrixXd h_action_on_alpha0_target(const SliceChart& chart, const OmuTAModel& model,
                                   const Subspace& nsmu_reps, const GroupElement& h) {
  const int s = nsmu_reps.dim();
  const int r = chart.dimA();
  MatrixXd out = MatrixXd::Zero(s + 2 * r, s + 2 * r);
  if (s > 0) {
    const MatrixXd coad = chart.action.group().coadjoint_matrix(h);
    const MatrixXd on_t =
        model.tangent.columns().transpose() * coad * model.tangent.columns();
    out.topLeftCorner(s, s) = nsmu_reps.columns().transpose() * on_t * nsmu_reps.columns();
  }
  const MatrixXd actA = chart.act_on_A(h);
  out.block(s, s, r, r) = actA;
  out.block(s + r, s + r, r, r) = actA.inverse().transpose();
  return out;
}

}  // namespace cotube
