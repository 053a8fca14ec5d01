#include "cotube/report.hpp"

#include <fstream>
#include <iostream>

namespace cotube {

Json vector_to_json(const VectorXd& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_to_json(const MatrixXd& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

Json subspace_to_json(const Subspace& s) {
  Json out;
  out["ambient"] = s.ambient();
  out["dim"] = s.dim();
  out["columns"] = matrix_to_json(s.columns());
  return out;
}

Json check_to_json(const CheckResult& c) {
  Json out;
  out["name"] = c.name;
  out["passed"] = c.passed;
  out["residual"] = c.residual;
  out["tolerance"] = c.tolerance;
  if (!c.details.empty()) out["details"] = c.details;
  return out;
}

Json spec_echo(const ProblemSpec& spec) {
  Json out;
  out["group"] = spec.group_kind;
  if (spec.group_kind == "torus") out["k"] = spec.torus_k;
  if (spec.group_kind == "product") out["factors"] = spec.factors;
  if (spec.group_kind == "trivial") out["dimQ"] = spec.trivial_dimQ;
  out["q"] = spec.q;
  out["p"] = spec.p;
  out["options"] = {{"seed", spec.options.seed},
                    {"tol_exact", spec.options.tol_exact},
                    {"tol_fd", spec.options.tol_fd},
                    {"fd_step", spec.options.fd_step},
                    {"samples", spec.options.samples},
                    {"dt", spec.options.dt},
                    {"steps", spec.options.steps}};
  out["hamiltonian"] = {{"kind", spec.hamiltonian_kind}, {"params", spec.hamiltonian_params}};
  return out;
}

Json chart_summary(const SliceChart& chart) {
  Json out;
  out["dim_G"] = chart.dimG();
  out["dim_Q"] = chart.dimQ();
  out["mu"] = vector_to_json(chart.mu);
  out["alpha"] = vector_to_json(chart.alpha);
  out["dims"] = {{"k", chart.k.dim()},   {"h", chart.h.dim()}, {"g_mu", chart.gmu.dim()},
                 {"m", chart.m.dim()},   {"m_cap_k", chart.mk.dim()},
                 {"A", chart.dimA()},    {"B", chart.dimB()}};
  out["bases"] = {{"k", matrix_to_json(chart.k.columns())},
                  {"h", matrix_to_json(chart.h.columns())},
                  {"g_mu", matrix_to_json(chart.gmu.columns())},
                  {"m", matrix_to_json(chart.m.columns())},
                  {"A", matrix_to_json(chart.A.columns())},
                  {"B", matrix_to_json(chart.B.columns())}};
  out["flags"] = {{"K_subset_Gmu", chart.flags.K_subset_Gmu},
                  {"alpha_zero", chart.flags.alpha_zero},
                  {"Gmu_full", chart.flags.Gmu_full},
                  {"H_equals_K", chart.flags.H_equals_K}};
  return out;
}

Json normal_space_summary(const NormalSpaceData& nsd) {
  Json out;
  out["dim_ker_dJ"] = nsd.kerdJ.dim();
  out["dim_orbit_gmu"] = nsd.orbit_gmu.dim();
  out["dim_Ns"] = nsd.reps.dim();
  out["omega_red"] = matrix_to_json(nsd.omega_red);
  out["smallest_retained_sv"] = nsd.smallest_retained_sv;
  return out;
}

Json witt_artin_summary(const WittArtinData& w) {
  Json out;
  out["dims"] = {{"T1", w.T1.dim()}, {"T0", w.T0.dim()}, {"N0", w.N0.dim()}, {"N1", w.N1.dim()}};
  return out;
}

Json tube_summary(const TubeChart& tc) {
  Json out;
  out["U_bound"] = tc.U_bound;
  out["gamma_condition_at_zero"] = tc.cond_at_zero;
  out["dim_m_star"] = tc.dimM();
  out["dim_B"] = tc.dimB();
  return out;
}

Json report_header(const ProblemSpec& spec) {
  Json out;
  out["schema_version"] = kReportSchemaVersion;
  out["seed"] = spec.options.seed;
  out["spec"] = spec_echo(spec);
  return out;
}

bool all_checks_passed(const Json& report) {
  if (!report.contains("checks")) return true;
  for (const auto& c : report["checks"])
    if (!c["passed"].get<bool>()) return false;
  return true;
}

void write_report(const Json& report, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << report.dump(2) << std::endl;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << report.dump(2) << std::endl;
}

}  // namespace cotube
