#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "cotube/normal_form.hpp"
#include "cotube/problem_spec.hpp"
#include "cotube/slice_chart.hpp"
#include "cotube/tube.hpp"

namespace cotube {

/// Reports use ordered JSON so identical runs serialize byte-identically.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

Json vector_to_json(const VectorXd& v);
Json matrix_to_json(const MatrixXd& m);
Json subspace_to_json(const Subspace& s);

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string details;
};

Json check_to_json(const CheckResult& c);

Json spec_echo(const ProblemSpec& spec);
Json chart_summary(const SliceChart& chart);
Json normal_space_summary(const NormalSpaceData& nsd);
Json witt_artin_summary(const WittArtinData& w);
Json tube_summary(const TubeChart& tc);

/// Skeleton report: schema version, seed, spec echo.
Json report_header(const ProblemSpec& spec);

bool all_checks_passed(const Json& report);
void write_report(const Json& report, const std::string& out_path);  // "-" = stdout

}  // namespace cotube
