#include <doctest.h>

#include <cmath>
#include <memory>

#include "cotube/slice_chart.hpp"

using namespace cotube;

namespace {

LinearAction so3_action() {
  return LinearAction::standard(std::make_shared<LieGroupModel>(LieGroupModel::so3()));
}

VectorXd v3(double x, double y, double z) {
  VectorXd v(3);
  v << x, y, z;
  return v;
}

void check_chart_invariants(const SliceChart& c) {
  CHECK(c.k.contains(c.h));
  CHECK(c.gmu.contains(c.h));
  for (int j = 0; j < c.k.dim(); ++j)
    CHECK(std::abs(c.mu.dot(c.k.columns().col(j))) < 1e-10);
  const Subspace orbit_q = Subspace::span_of(c.action.orbit_map_config(c.q));
  CHECK(c.dimA() == c.dimQ() - orbit_q.dim());
  CHECK((c.A.columns().transpose() * orbit_q.columns()).norm() < 1e-10);
  CHECK(c.dimB() + c.k_alpha_orbit.dim() == c.dimA());
  const Subspace mk_h = Subspace::sum(c.mk, c.h);
  CHECK(mk_h.same_as(c.k, 1e-9));
  CHECK(orbit_q.dim() == c.dimG() - c.k.dim());
  CHECK(remark_H_residual(c) < 1e-9);
}

}  // namespace

TEST_CASE("isotropy algebras") {
  const LinearAction act = so3_action();

  // Fixed configuration: the whole algebra stabilizes q = 0.
  CHECK(isotropy_algebra_config(act, VectorXd::Zero(3)).dim() == 3);

  // z = ((0,0,0),(lambda,0,0)): stabilizer of z is rotation about x.
  const Subspace h =
      isotropy_algebra_point(act, CotangentPoint{VectorXd::Zero(3), v3(2.0, 0, 0)});
  CHECK(h.dim() == 1);
  CHECK((h.columns().col(0) - v3(1, 0, 0)).norm() < 1e-12);

  // mu = 0 is fixed by everything.
  CHECK(isotropy_algebra_momentum(act.group(), DualVector(VectorXd::Zero(3))).dim() == 3);
  // Nonzero mu for so(3): rotations about mu.
  const Subspace gmu = isotropy_algebra_momentum(act.group(), DualVector(v3(0, 0, 1.5)));
  CHECK(gmu.dim() == 1);
  CHECK((gmu.columns().col(0) - v3(0, 0, 1)).norm() < 1e-12);
}

TEST_CASE("chart at q = 0, p = (lambda,0,0)") {
  const double lambda = 1.0;
  const SliceChart c = build_slice_chart(so3_action(), VectorXd::Zero(3), v3(lambda, 0, 0));

  CHECK(c.mu.norm() < 1e-14);  // q x p = 0
  CHECK(c.k.dim() == 3);       // K = G
  CHECK(c.h.dim() == 1);       // rotations about the x-axis
  CHECK(c.gmu.dim() == 3);
  CHECK(c.dimA() == 3);
  CHECK((c.A.columns() - MatrixXd::Identity(3, 3)).norm() == 0.0);
  CHECK((c.alpha - v3(lambda, 0, 0)).norm() < 1e-14);
  // B = (k.alpha)^annihilator is the x-axis.
  CHECK(c.dimB() == 1);
  CHECK((c.B.columns().col(0) - v3(1, 0, 0)).norm() < 1e-12);
  CHECK(c.mk.dim() == 2);
  CHECK(c.m.dim() == 2);

  CHECK(c.flags.K_subset_Gmu);
  CHECK(c.flags.alpha_zero == false);
  CHECK(c.flags.Gmu_full);
  CHECK(c.flags.H_equals_K == false);
  check_chart_invariants(c);
}

TEST_CASE("chart at q = (kappa,0,0), p = (lambda,0,0)") {
  const SliceChart c = build_slice_chart(so3_action(), v3(1.0, 0, 0), v3(0.5, 0, 0));
  CHECK(c.mu.norm() < 1e-14);
  CHECK(c.k.dim() == 1);  // H = K = SO(2) about the x-axis
  CHECK(c.h.dim() == 1);
  CHECK(c.flags.H_equals_K);
  CHECK(c.flags.Gmu_full);
  CHECK(c.dimA() == 1);
  CHECK((c.A.columns().col(0) - v3(1, 0, 0)).norm() < 1e-12);
  CHECK(c.dimB() == 1);
  CHECK(c.alpha.size() == 1);
  CHECK(c.alpha(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.mk.dim() == 0);
  check_chart_invariants(c);

  // Same subcase with p = 0: alpha vanishes but the flags match.
  const SliceChart c0 = build_slice_chart(so3_action(), v3(1.0, 0, 0), VectorXd::Zero(3));
  CHECK(c0.flags.alpha_zero);
  CHECK(c0.flags.H_equals_K);
  check_chart_invariants(c0);
}

TEST_CASE("chart at the origin") {
  const SliceChart c = build_slice_chart(so3_action(), VectorXd::Zero(3), VectorXd::Zero(3));
  CHECK(c.alpha.norm() == 0.0);
  CHECK(c.dimB() == c.dimA());
  CHECK(c.h.same_as(c.k));
  CHECK(c.flags.alpha_zero);
  CHECK(c.flags.H_equals_K);
  CHECK(c.flags.Gmu_full);
  check_chart_invariants(c);
}

TEST_CASE("abelian flags") {
  const auto torus = std::make_shared<LieGroupModel>(LieGroupModel::torus(2));
  const LinearAction act = LinearAction::standard(torus);
  Rng rng(3);
  for (int i = 0; i < 5; ++i) {
    const VectorXd q = rng.gaussian_vector(4), p = rng.gaussian_vector(4);
    const SliceChart c = build_slice_chart(act, q, p);
    CHECK(c.flags.K_subset_Gmu);  // abelian: G_mu = G always
    CHECK(c.flags.Gmu_full);
    check_chart_invariants(c);
  }
}

TEST_CASE("torus chart with a nontrivial twist block") {
  const auto torus = std::make_shared<LieGroupModel>(LieGroupModel::torus(2));
  const LinearAction act = LinearAction::standard(torus);
  VectorXd q = VectorXd::Zero(4), p(4);
  q(0) = 1.0;  // second block fixed
  p << 0.2, 0.4, 0.7, -0.3;
  const SliceChart c = build_slice_chart(act, q, p);
  CHECK(c.k.dim() == 1);
  CHECK(c.h.dim() == 0);  // k moves alpha, so nothing stabilizes z inside k
  CHECK(c.dimA() == 3);
  CHECK(c.dimB() == 2);
  CHECK(c.mk.dim() == 1);
  check_chart_invariants(c);
}

TEST_CASE("generic so(3) chart with nonzero mu") {
  // q and p independent: mu != 0, and both K and G_mu are circles about
  // different axes.
  const SliceChart c = build_slice_chart(so3_action(), v3(1, 0.2, -0.1), v3(0.3, 1.1, 0.4));
  CHECK(c.k.dim() == 1);
  CHECK(c.gmu.dim() == 1);
  CHECK(c.flags.Gmu_full == false);
  CHECK(c.flags.K_subset_Gmu == false);
  check_chart_invariants(c);
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS(build_slice_chart(so3_action(), VectorXd::Zero(2), VectorXd::Zero(3)));
}
