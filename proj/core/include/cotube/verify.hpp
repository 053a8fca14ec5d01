#pragma once

#include <vector>

#include "cotube/report.hpp"

namespace cotube {

/// Per-module invariant suites. Each check is deterministic given the seed
/// carried in spec.options; results list name, residual, and tolerance.
std::vector<CheckResult> verify_liealg(const LieGroupModel& model, const SpecOptions& opts);
std::vector<CheckResult> verify_actions(const LinearAction& action, const SpecOptions& opts);
std::vector<CheckResult> verify_slices(const SliceChart& chart, const SpecOptions& opts);
std::vector<CheckResult> verify_normalform(const SliceChart& chart, const SpecOptions& opts);
std::vector<CheckResult> verify_tube(const TubeChart& tc, const SpecOptions& opts);

/// Chart report: isotropy/slice data, case flags, normal-form and tube
/// summaries where applicable, plus structural pass/fail checks.
Json run_analyze(const ProblemSpec& spec);

/// Full verification harness: every invariant suite applicable to the
/// chart; skipped suites are enumerated with reasons.
Json run_verify(const ProblemSpec& spec);

/// Evaluates the tube (both constructions) at one model point given as JSON
/// {"g": [[..]] or "g_exp": [..], "nu": [..], "a": [..], "delta": [..]}.
/// Throws std::domain_error when the chart is out of theorem scope.
Json run_tube_eval(const ProblemSpec& spec, const Json& point);

/// Integrates the bundle equations and validates against the direct
/// Hamiltonian flow (drift, intertwining convergence ratio).
Json run_simulate(const ProblemSpec& spec);

}  // namespace cotube
