#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cotube/problem_spec.hpp"
#include "cotube/toml_lite.hpp"
#include "cotube/verify.hpp"

using namespace cotube;

namespace {

const char* kAxisSpec = R"(
[group]
kind = "so3"

[point]
q = [0.0, 0.0, 0.0]
p = [1.0, 0.0, 0.0]
)";

}  // namespace

TEST_CASE("toml subset parser") {
  const auto doc = toml::parse(R"(
# comment
top = 1
[table]
name = "hello # not a comment"
value = -2.5e-3    # trailing comment
flag = true
arr = [1, 2.5, "x"]
)");
  CHECK(doc.at("").at("top").as_int() == 1);
  CHECK(doc.at("table").at("name").as_string() == "hello # not a comment");
  CHECK(doc.at("table").at("value").as_number() == doctest::Approx(-2.5e-3));
  CHECK(doc.at("table").at("flag").as_bool());
  CHECK(doc.at("table").at("arr").as_array().size() == 3);

  CHECK_THROWS(toml::parse("key"));
  CHECK_THROWS(toml::parse("[unterminated"));
  CHECK_THROWS(toml::parse("x = [1, 2"));
  CHECK_THROWS(toml::parse("x = 1\nx = 2"));
}

TEST_CASE("spec parsing") {
  SUBCASE("minimal valid spec with defaults") {
    const SpecParseResult res = parse_spec_text(kAxisSpec);
    REQUIRE(res.ok);
    CHECK(res.spec.group_kind == "so3");
    CHECK(res.spec.options.seed == 0);
    CHECK(res.spec.options.tol_exact == doctest::Approx(1e-9));
    CHECK(res.spec.options.tol_fd == doctest::Approx(1e-6));
    CHECK(res.spec.options.samples == 50);
    CHECK(res.spec.options.fd_step == doctest::Approx(1e-5));
    CHECK(res.spec.hamiltonian_kind == "free");
  }

  SUBCASE("dimension errors name the field") {
    const SpecParseResult res = parse_spec_text(R"(
[group]
kind = "so3"
[point]
q = [0.0, 0.0]
p = [1.0, 0.0, 0.0]
)");
    CHECK(!res.ok);
    REQUIRE(res.errors.size() == 1);
    CHECK(res.errors[0].find("[point].q") != std::string::npos);
    CHECK(res.errors[0].find("length 3") != std::string::npos);
  }

  SUBCASE("all errors are collected, not just the first") {
    const SpecParseResult res = parse_spec_text(R"(
[group]
kind = "so5"
k = -1
[options]
samples = 0
)");
    CHECK(!res.ok);
    CHECK(res.errors.size() >= 3);
  }

  SUBCASE("unknown hamiltonian") {
    std::string text(kAxisSpec);
    text += "\n[hamiltonian]\nkind = \"warp\"\n";
    const SpecParseResult res = parse_spec_text(text);
    CHECK(!res.ok);
  }
}

TEST_CASE("analyze report") {
  const SpecParseResult res = parse_spec_text(kAxisSpec);
  REQUIRE(res.ok);
  const Json report = run_analyze(res.spec);
  CHECK(report["chart"]["dims"]["B"].get<int>() == 1);
  // B is the x-axis in slice coordinates.
  CHECK(report["chart"]["bases"]["B"][0][0].get<double>() == doctest::Approx(1.0));
  CHECK(report["normal_form"]["dim_Ns"].get<int>() == 2);
  CHECK(report["all_passed"].get<bool>());

  // Stable report schema.
  CHECK(report["schema_version"].get<int>() == 1);
  CHECK(report.contains("seed"));
  CHECK(report["spec"].contains("options"));
  for (const char* key : {"mu", "alpha", "dims", "bases", "flags"})
    CHECK(report["chart"].contains(key));
  CHECK(report["normal_form"].contains("omega_red"));
  CHECK(report["normal_form"].contains("smallest_retained_sv"));
  CHECK(report["normal_form"]["splittings"].contains("K_subset_Gmu"));
  CHECK(report["normal_form"]["splittings"].contains("tangent_chain"));
  CHECK(report["witt_artin"].contains("dims"));
  CHECK(report["tube"].contains("U_bound"));
  for (const auto& c : report["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("passed"));
    CHECK(c.contains("residual"));
    CHECK(c.contains("tolerance"));
  }
}

TEST_CASE("verify is deterministic and passes on catalog specs") {
  for (const char* text : {kAxisSpec, R"(
[group]
kind = "torus"
k = 2
[point]
q = [1.0, 0.0, 0.0, 0.0]
p = [0.2, 0.4, 0.7, -0.3]
)"}) {
    SpecParseResult res = parse_spec_text(text);
    REQUIRE(res.ok);
    res.spec.options.samples = 10;  // keep the FD suites quick here
    const Json a = run_verify(res.spec);
    const Json b = run_verify(res.spec);
    CHECK(a.dump() == b.dump());
    CHECK(a["all_passed"].get<bool>());
    CHECK(a["checks"].size() > 30);
  }
}

TEST_CASE("verify seed changes the payload but not the outcome") {
  SpecParseResult res = parse_spec_text(kAxisSpec);
  REQUIRE(res.ok);
  res.spec.options.samples = 5;
  const Json a = run_verify(res.spec);
  res.spec.options.seed = 1;
  const Json b = run_verify(res.spec);
  CHECK(a.dump() != b.dump());
  CHECK(b["all_passed"].get<bool>());
}

TEST_CASE("tube-eval matches the closed form") {
  const SpecParseResult res = parse_spec_text(kAxisSpec);
  REQUIRE(res.ok);
  Json point;
  point["g_exp"] = {0.0, 0.3, 0.0};
  point["nu"] = {0.1, -0.2};
  point["a"] = {0.05};
  point["delta"] = {0.01};
  const Json report = run_tube_eval(res.spec, point);
  CHECK(report["all_passed"].get<bool>());

  // Oracle: closed form of the momentum-consistent tube at q = 0 with
  // nu = (0, 0.1, -0.2) in g*, lambda = 1.
  const double L = 1.0 + 0.01;
  VectorXd base(3), cov(3);
  base << 0.05, 0.2 / L, 0.1 / L;
  cov << L, 0, 0;
  const auto model = LieGroupModel::so3();
  VectorXd xi(3);
  xi << 0.0, 0.3, 0.0;
  const MatrixXd g = model.exp(AlgebraVector(xi)).matrix;
  for (int i = 0; i < 3; ++i) {
    CHECK(report["image"]["q"][i].get<double>() ==
          doctest::Approx((g * base)(i)).epsilon(1e-10));
    CHECK(report["image"]["p"][i].get<double>() ==
          doctest::Approx((g * cov)(i)).epsilon(1e-10));
  }
}

TEST_CASE("tube-eval rejects charts outside the theorem scope") {
  const SpecParseResult res = parse_spec_text(R"(
[group]
kind = "so3"
[point]
q = [1.0, 0.2, -0.1]
p = [0.3, 1.1, 0.4]
)");
  REQUIRE(res.ok);
  Json point;
  point["a"] = {0.0};
  try {
    (void)run_tube_eval(res.spec, point);
    FAIL("expected a domain error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("out of theorem scope") != std::string::npos);
  }
}

TEST_CASE("simulate report on the circular system") {
  const SpecParseResult res = parse_spec_text(R"(
[group]
kind = "so2"
[point]
q = [1.0, 0.0]
p = [0.0, 0.7]
[options]
dt = 1e-3
steps = 100
[hamiltonian]
kind = "central"
params = [0.98, 0.5]
)");
  REQUIRE(res.ok);
  const Json report = run_simulate(res.spec);
  CHECK(report["all_passed"].get<bool>());
  CHECK(report["dynamics"]["momentum_drift"].get<double>() < 1e-8);
}

TEST_CASE("spec files in the repository parse and analyze") {
  for (const char* name :
       {"specs/so3_axis.toml", "specs/so3_radial.toml", "specs/so2_circular.toml",
        "specs/torus.toml"}) {
    std::ifstream probe(name);
    std::string path = name;
    if (!probe) path = std::string("../../") + name;  // ctest runs in build/tests
    const SpecParseResult res = parse_spec(path);
    REQUIRE_MESSAGE(res.ok, path);
    const Json report = run_analyze(res.spec);
    CHECK(report["all_passed"].get<bool>());
  }
}
