#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "radarint/error.hpp"
#include "radarint/format.hpp"
#include "radarint/oracle.hpp"

namespace radarint::cli {

namespace {

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  writer(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string label(Scheme s, CompassMode m) {
  std::string l = to_string(s);
  if (m != CompassMode::Off) l += std::string(" + compass ") + to_string(m);
  return l;
}

Plot t_fail_plot(const std::vector<ResultRow>& rows, const std::string& title,
                 const std::string& x_label, bool categorical, double x_scale) {
  Plot plot;
  plot.title = title;
  plot.x_label = x_label;
  plot.y_label = "T_fail [s]";
  plot.log_y = true;
  plot.reference_lines = {{"car use per week", kCarUseWeekS}, {"car use per year", kCarUseYearS}};

  std::vector<std::pair<Scheme, CompassMode>> keys;
  for (const auto& r : rows) {
    const std::pair key{r.scheme, r.compass_mode};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  if (categorical) {
    std::vector<CompassMode> modes;
    for (const auto& r : rows) {
      if (std::find(modes.begin(), modes.end(), r.compass_mode) == modes.end()) {
        modes.push_back(r.compass_mode);
      }
      const std::string s = to_string(r.scheme);
      if (std::find(plot.x_categories.begin(), plot.x_categories.end(), s) == plot.x_categories.end()) {
        plot.x_categories.push_back(s);
      }
    }
    for (CompassMode m : modes) {
      Series series;
      series.label = m == CompassMode::Off ? "no compass" : std::string("compass ") + to_string(m);
      series.style = Series::Style::Markers;
      for (const auto& r : rows) {
        if (r.compass_mode != m) continue;
        const auto it = std::find(plot.x_categories.begin(), plot.x_categories.end(),
                                  std::string(to_string(r.scheme)));
        series.x.push_back(static_cast<double>(it - plot.x_categories.begin()));
        series.y.push_back(r.t_fail_s);
      }
      plot.series.push_back(std::move(series));
    }
    return plot;
  }
  for (const auto& [scheme, mode] : keys) {
    Series series;
    series.label = label(scheme, mode);
    for (const auto& r : rows) {
      if (r.scheme != scheme || r.compass_mode != mode) continue;
      series.x.push_back(r.axis_value * x_scale);
      series.y.push_back(r.t_fail_s);
    }
    plot.series.push_back(std::move(series));
  }
  return plot;
}

InterfererCensus census_for(const RunConfig& cfg, const std::vector<Snapshot>& snapshots,
                            double d_max, std::ostream& log) {
  log << "finding potential interferers: " << snapshots.size() << " snapshot(s), d_max "
      << format_double(d_max) << " m\n";
  return InterfererCensus::run(snapshots, cfg.layout, d_max, cfg.threads, cfg.link_budget.rcs_m2);
}

std::vector<double> checked_axis_values(const RunConfig& cfg) {
  const auto& v = cfg.sweep.values;
  if (v.empty()) throw ValidationError("config: sweep.values is empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) throw ValidationError("config: sweep.values must be strictly increasing");
  }
  return v;
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "axis,axis_value,scheme,compass_mode,p_fail,t_fail_s,t_rf_s,week_s,year_s,hopping_possible\n";
  for (const auto& r : rows) {
    out << r.axis << ',' << format_double(r.axis_value) << ',' << to_string(r.scheme) << ','
        << to_string(r.compass_mode) << ',' << format_double(r.p_fail) << ','
        << format_double(r.t_fail_s) << ',' << format_double(r.t_rf_s) << ','
        << format_double(kCarUseWeekS) << ',' << format_double(kCarUseYearS) << ','
        << (r.hopping_possible ? "true" : "false") << '\n';
  }
}

std::vector<Snapshot> load_scenario(const RunConfig& cfg) {
  std::vector<Snapshot> snapshots;
  if (cfg.scenario.trace) {
    snapshots = sample_snapshots(load_snapshots(*cfg.scenario.trace), cfg.scenario.sample_interval_s);
  } else {
    snapshots = sample_snapshots(generate_highway(cfg.scenario.highway), cfg.scenario.sample_interval_s);
  }
  const bool any = std::any_of(snapshots.begin(), snapshots.end(),
                               [](const Snapshot& s) { return !s.vehicles.empty(); });
  if (!any) throw ValidationError("scenario is empty: no snapshot holds a vehicle");
  return snapshots;
}

std::vector<ResultRow> evaluate_rows(const RunConfig& cfg, const std::string& axis,
                                     double axis_value, const InterfererCensus* census) {
  const double d_max = cfg.d_max();
  std::vector<ResultRow> rows;
  for (CompassMode mode : cfg.compass.modes) {
    const CompassConfig compass = cfg.compass_config(mode);
    InterfererDistribution dist;
    if (cfg.distribution) {
      // A fixed distribution stands for whatever the compass leaves.
      dist = *cfg.distribution;
    } else {
      if (!census) throw std::logic_error("evaluate_rows needs a census");
      dist = census->distribution(d_max, mode == CompassMode::Effective ? compass
                                                                         : CompassConfig::off());
    }
    for (Scheme scheme : cfg.schemes) {
      const FailureResult r = failure_prob_with_compass(dist, cfg.timing, compass, scheme,
                                                        ModelOptions{cfg.frame_overlap});
      rows.push_back({axis, axis_value, scheme, mode, r.p_fail, r.t_fail_s, r.t_rf_s,
                      r.hopping_possible});
    }
  }
  return rows;
}

int cmd_generate(const RunConfig& cfg, std::ostream& log) {
  if (cfg.scenario.trace) throw ValidationError("generate needs a highway scenario, not a trace");
  cfg.scenario.highway.validate();
  const auto snapshots = generate_highway(cfg.scenario.highway);
  ensure_dir(cfg.out_dir);
  const auto path = cfg.out_dir / "scenario.csv";
  save_snapshots(path, snapshots);
  log << "wrote " << path.string() << ": " << snapshots.size() << " snapshot(s) of "
      << (snapshots.empty() ? 0 : snapshots.front().vehicles.size()) << " vehicles\n";
  return kOk;
}

int cmd_interferers(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto snapshots = load_scenario(cfg);
  const double d_max = cfg.d_max();
  const auto grid = cfg.distance_grid();
  const InterfererCensus census = census_for(cfg, snapshots, std::max(d_max, grid.back()), log);
  ensure_dir(cfg.out_dir);

  const bool with_compass = std::find(cfg.compass.modes.begin(), cfg.compass.modes.end(),
                                      CompassMode::Effective) != cfg.compass.modes.end();
  const CompassConfig compass = cfg.compass_config(CompassMode::Effective);

  const auto dist = census.distribution(d_max, CompassConfig::off());
  write_file(cfg.out_dir / "distribution.csv", [&](std::ostream& o) { write_distribution_csv(o, dist); });
  const auto all = census.curve(grid, CountSplit::All, CompassConfig::off());
  const auto direct = census.curve(grid, CountSplit::DirectOnly, CompassConfig::off());
  write_file(cfg.out_dir / "curve.csv", [&](std::ostream& o) { write_curve_csv(o, all, direct); });

  Plot pmf;
  pmf.title = "Potential interferers per radar";
  pmf.x_label = "number of potential interferers n";
  pmf.y_label = "P(n)";
  Series bars{"no compass", {}, {}, Series::Style::Bars};
  for (std::size_t n = 0; n < dist.size(); ++n) {
    bars.x.push_back(static_cast<double>(n));
    bars.y.push_back(dist[n]);
  }
  pmf.series.push_back(bars);

  Plot curve;
  curve.title = "Average number of potential interferers";
  curve.x_label = "maximum equivalent distance [m]";
  curve.y_label = "mean count";
  auto add_curve = [&](const std::string& name, const std::vector<CurvePoint>& pts) {
    Series s{name, {}, {}, Series::Style::Line};
    for (const auto& p : pts) {
      s.x.push_back(p.d_max);
      s.y.push_back(p.mean_count);
    }
    curve.series.push_back(std::move(s));
  };
  add_curve("direct + reflected", all);
  add_curve("direct only", direct);

  std::ostringstream summary;
  summary << "observations " << census.observations().size() << '\n'
          << "d_max_m " << format_double(d_max) << '\n'
          << "mean_count " << format_double(dist.mean()) << '\n';

  if (with_compass) {
    const auto dist_c = census.distribution(d_max, compass);
    write_file(cfg.out_dir / "distribution_compass.csv",
               [&](std::ostream& o) { write_distribution_csv(o, dist_c); });
    const auto all_c = census.curve(grid, CountSplit::All, compass);
    const auto direct_c = census.curve(grid, CountSplit::DirectOnly, compass);
    write_file(cfg.out_dir / "curve_compass.csv",
               [&](std::ostream& o) { write_curve_csv(o, all_c, direct_c); });
    Series cbars{"compass effective", {}, {}, Series::Style::Bars};
    for (std::size_t n = 0; n < dist_c.size(); ++n) {
      cbars.x.push_back(static_cast<double>(n));
      cbars.y.push_back(dist_c[n]);
    }
    pmf.series.push_back(cbars);
    add_curve("compass, direct + reflected", all_c);
    add_curve("compass, direct only", direct_c);

    // Per observation the compass can only remove attackers, so its tail
    // mass never exceeds the plain one.
    bool dominated = true;
    for (std::size_t n = 0; n < std::max(dist.size(), dist_c.size()); ++n) {
      if (dist_c.tail(n) > dist.tail(n) + 1e-12) dominated = false;
    }
    summary << "mean_count_compass " << format_double(dist_c.mean()) << '\n'
            << "compass_tail_dominated " << (dominated ? "yes" : "no") << '\n';
  }
  write_svg(cfg.out_dir / "distribution.svg", pmf);
  write_svg(cfg.out_dir / "curve.svg", curve);
  write_file(cfg.out_dir / "interferers_summary.txt", [&](std::ostream& o) { o << summary.str(); });
  log << summary.str();
  return kOk;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  std::optional<InterfererCensus> census;
  if (!cfg.distribution) census = census_for(cfg, load_scenario(cfg), cfg.d_max(), log);
  const auto rows = evaluate_rows(cfg, "bandwidth", cfg.timing.b_total_hz,
                                  census ? &*census : nullptr);
  ensure_dir(cfg.out_dir);
  write_file(cfg.out_dir / "results.csv", [&](std::ostream& o) { write_results_csv(o, rows); });
  if (census) {
    const auto dist = census->distribution(cfg.d_max(), CompassConfig::off());
    write_file(cfg.out_dir / "distribution.csv", [&](std::ostream& o) { write_distribution_csv(o, dist); });
  }
  write_svg(cfg.out_dir / "t_fail.svg",
            t_fail_plot(rows, "Average time between failures", "scheme", true, 1.0));
  for (const auto& r : rows) {
    log << label(r.scheme, r.compass_mode) << ": p_fail " << format_double(r.p_fail)
        << ", T_fail " << format_double(r.t_fail_s) << " s\n";
  }
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto values = checked_axis_values(cfg);
  const SweepAxis axis = cfg.sweep.axis;
  const std::string axis_name = to_string(axis);
  std::vector<ResultRow> rows;

  // Geometry is computed once unless the axis changes it.
  std::optional<InterfererCensus> shared;
  const bool geometric = axis == SweepAxis::Density || axis == SweepAxis::MaxDistanceGrid;
  if (!cfg.distribution && !geometric) shared = census_for(cfg, load_scenario(cfg), cfg.d_max(), log);
  if (!cfg.distribution && axis == SweepAxis::MaxDistanceGrid) {
    shared = census_for(cfg, load_scenario(cfg), values.back(), log);
  }

  for (double v : values) {
    RunConfig point = cfg;
    std::optional<InterfererCensus> local;
    switch (axis) {
      case SweepAxis::Bandwidth: point.timing.b_total_hz = v; break;
      case SweepAxis::Kch:
        if (v != std::floor(v)) throw ValidationError("config: k_ch sweep values must be integers");
        point.timing.k_ch = static_cast<int>(v);
        break;
      case SweepAxis::DutyCycle: point.timing.duty_cycle = v; break;
      case SweepAxis::MaxDistanceGrid: point.d_max_m = v; break;
      case SweepAxis::Density:
        if (cfg.scenario.trace) throw ValidationError("a density sweep needs a generated highway");
        point.scenario.highway.density = v;
        if (!cfg.distribution) local = census_for(point, load_scenario(point), point.d_max(), log);
        break;
    }
    point.timing.validate();
    const InterfererCensus* census = local ? &*local : (shared ? &*shared : nullptr);
    auto part = evaluate_rows(point, axis_name, v, census);
    rows.insert(rows.end(), part.begin(), part.end());
    log << axis_name << " = " << format_double(v) << " done\n";
  }

  ensure_dir(cfg.out_dir);
  write_file(cfg.out_dir / "results.csv", [&](std::ostream& o) { write_results_csv(o, rows); });
  const bool ghz = axis == SweepAxis::Bandwidth;
  const std::string x_label = ghz ? "total bandwidth B_TOT [GHz]"
                              : axis == SweepAxis::Density       ? "density [veh/km]"
                              : axis == SweepAxis::Kch           ? "K_ch"
                              : axis == SweepAxis::DutyCycle     ? "duty cycle"
                                                                 : "maximum equivalent distance [m]";
  write_svg(cfg.out_dir / "t_fail.svg",
            t_fail_plot(rows, "Average time between failures", x_label, false, ghz ? 1e-9 : 1.0));
  return kOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
  ValidationOptions opts = cfg.validation;
  opts.threads = cfg.threads;
  const auto report = run_validation(opts);
  std::ostringstream text;
  write_report(text, report);
  ensure_dir(cfg.out_dir);
  write_file(cfg.out_dir / "validation_report.txt", [&](std::ostream& o) { o << text.str(); });
  log << text.str();
  return exit_code_for(report);
}

int exit_code_for(const ValidationReport& report) {
  return report.all_passed() ? kOk : kOracleFailure;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::invalid_argument& e) {  // ValidationError and friends
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
}

}  // namespace radarint::cli
