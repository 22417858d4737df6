#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "radarint/distribution.hpp"
#include "radarint/timing.hpp"

namespace radarint {

/// The closed forms under test. reference() binds the models module; tests
/// swap in broken versions to make sure the suite notices.
struct AnalyticModels {
  std::function<double(double b_total, double b_chirp, double x_f)> freq_overlap;
  std::function<double(const RadarTimingSpec&)> chirp_collision;
  std::function<double(const FrameShape&, double p, FrameOverlap)> frame_loss;
  std::function<double(const InterfererDistribution&, double p_f, double p_t_frame, int m)>
      baseline;
  std::function<double(const InterfererDistribution&, double p_f, double p_t_frame, int m)>
      frame_hopping;
  std::function<double(const InterfererDistribution&, double p_f, double p_t_chirp,
                       const FrameShape&, int m, FrameOverlap)>
      chirp_hopping;

  static AnalyticModels reference();
};

struct ValidationOptions {
  std::uint64_t trials = 200000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct CheckResult {
  std::string name;
  double analytic = 0.0;
  double estimate = 0.0;   ///< Monte Carlo mean, or the enumerated value
  double std_error = 0.0;  ///< 0 for exact comparisons
  double tolerance = 0.0;  ///< allowed |estimate - analytic|
  bool passed = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::size_t failures() const;
};

/// Analytic-versus-simulation suite: band overlap, chirp collision, frame
/// loss (enumeration and Monte Carlo), the three failure compositions and
/// their agreement when p_f = 1. Parameter sets are fixed; only the Monte
/// Carlo draws depend on the seed.
ValidationReport run_validation(const ValidationOptions& opts,
                                const AnalyticModels& models = AnalyticModels::reference());

/// Fixed-width table, one line per check, then a summary line. Same report,
/// same bytes.
void write_report(std::ostream& out, const ValidationReport& report);

}  // namespace radarint
