#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "radarint/models.hpp"
#include "radarint/validation.hpp"
#include "svg.hpp"

namespace radarint::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kIoFailure = 2, kOracleFailure = 3 };

struct ResultRow {
  std::string axis;
  double axis_value = 0.0;
  Scheme scheme = Scheme::Baseline;
  CompassMode compass_mode = CompassMode::Off;
  double p_fail = 0.0;
  double t_fail_s = 0.0;
  double t_rf_s = 0.0;
  bool hopping_possible = true;
};

/// `axis,axis_value,scheme,compass_mode,p_fail,t_fail_s,t_rf_s,week_s,year_s,hopping_possible`;
/// infinite times are written as `inf`.
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Snapshots named by the config: the trace, sampled at the configured
/// interval, or a generated highway. Throws ValidationError when no snapshot
/// holds a vehicle.
std::vector<Snapshot> load_scenario(const RunConfig& cfg);

/// One row per scheme and compass mode.
std::vector<ResultRow> evaluate_rows(const RunConfig& cfg, const std::string& axis,
                                     double axis_value, const InterfererCensus* census);

int cmd_generate(const RunConfig& cfg, std::ostream& log);
int cmd_interferers(const RunConfig& cfg, std::ostream& log);
int cmd_evaluate(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_validate(const RunConfig& cfg, std::ostream& log);

/// kOracleFailure unless every check passed.
int exit_code_for(const ValidationReport& report);

/// Runs `body`, mapping exceptions onto exit codes and printing them to err.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace radarint::cli
