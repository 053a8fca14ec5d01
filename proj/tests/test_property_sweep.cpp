// Randomized sweep: charts across the whole catalog run every applicable
// invariant suite, including the tube suite at fully isotropic momentum.

#include <doctest.h>

#include <memory>
#include <string>
#include <vector>

#include "cotube/verify.hpp"

using namespace cotube;

namespace {

struct Case {
  std::string label;
  LinearAction action;
  VectorXd q;
  VectorXd p;
};

std::vector<Case> catalog_cases() {
  Rng rng(0x5EEDu);
  std::vector<Case> cases;
  auto add = [&](const std::string& label, LinearAction action, VectorXd q, VectorXd p) {
    cases.push_back({label, std::move(action), std::move(q), std::move(p)});
  };

  const auto so2 = std::make_shared<LieGroupModel>(LieGroupModel::so2());
  const auto so3 = std::make_shared<LieGroupModel>(LieGroupModel::so3());
  const auto t2 = std::make_shared<LieGroupModel>(LieGroupModel::torus(2));
  const auto t3 = std::make_shared<LieGroupModel>(LieGroupModel::torus(3));
  const auto prod = std::make_shared<LieGroupModel>(
      LieGroupModel::product({LieGroupModel::so3(), LieGroupModel::so2()}));

  auto unit = [&](int n, double scale) {
    VectorXd v = rng.gaussian_vector(n);
    return VectorXd(scale * v / std::max(v.norm(), 1e-12));
  };

  for (int rep = 0; rep < 2; ++rep) {
    add("so2 generic", LinearAction::standard(so2), unit(2, 1.5), unit(2, 0.8));
    add("so3 fixed origin", LinearAction::standard(so3), VectorXd::Zero(3), unit(3, 1.2));
    add("so3 generic", LinearAction::standard(so3), unit(3, 1.5), unit(3, 0.8));
    {
      // Radial so3 chart: p parallel to q keeps the momentum fully isotropic.
      const VectorXd q = unit(3, 1.5);
      add("so3 radial", LinearAction::standard(so3), q, VectorXd(0.6 * q));
    }
    add("torus2 generic", LinearAction::standard(t2), unit(4, 1.5), unit(4, 0.8));
    {
      VectorXd q = VectorXd::Zero(6);
      q.head(2) = unit(2, 1.5).head(2);
      add("torus3 stratified", LinearAction::standard(t3), q, unit(6, 0.8));
    }
    add("product generic", LinearAction::standard(prod), unit(5, 1.5), unit(5, 0.8));
    {
      VectorXd q = VectorXd::Zero(5);
      q.tail(2) = unit(2, 1.2).tail(2);
      add("product stratified", LinearAction::standard(prod), q, unit(5, 0.8));
    }
  }
  return cases;
}

}  // namespace

TEST_CASE("invariant suites pass across random catalog charts") {
  SpecOptions opts;
  opts.samples = 10;  // keep the finite-difference suites quick
  int tube_charts = 0;
  for (const Case& c : catalog_cases()) {
    CAPTURE(c.label);
    const SliceChart chart = build_slice_chart(c.action, c.q, c.p);

    for (const auto& check : verify_slices(chart, opts)) {
      CAPTURE(check.name);
      CHECK_MESSAGE(check.passed, c.label, ": ", check.name, " residual ", check.residual);
    }
    for (const auto& check : verify_normalform(chart, opts)) {
      CAPTURE(check.name);
      CHECK_MESSAGE(check.passed, c.label, ": ", check.name, " residual ", check.residual);
    }
    if (chart.flags.Gmu_full) {
      ++tube_charts;
      const TubeChart tc = build_tube_chart(chart);
      for (const auto& check : verify_tube(tc, opts)) {
        CAPTURE(check.name);
        CHECK_MESSAGE(check.passed, c.label, ": ", check.name, " residual ", check.residual);
      }
    }
  }
  CHECK(tube_charts >= 8);  // the sweep must actually exercise tubes
}
