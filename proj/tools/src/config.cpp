#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "radarint/error.hpp"

namespace radarint::cli {

using nlohmann::json;

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Bandwidth: return "bandwidth";
    case SweepAxis::Density: return "density";
    case SweepAxis::Kch: return "k_ch";
    case SweepAxis::DutyCycle: return "duty_cycle";
    case SweepAxis::MaxDistanceGrid: return "max_distance";
  }
  return "?";
}

SweepAxis parse_sweep_axis(const std::string& text) {
  if (text == "bandwidth") return SweepAxis::Bandwidth;
  if (text == "density") return SweepAxis::Density;
  if (text == "k_ch" || text == "kch") return SweepAxis::Kch;
  if (text == "duty_cycle") return SweepAxis::DutyCycle;
  if (text == "max_distance" || text == "max_distance_grid") return SweepAxis::MaxDistanceGrid;
  throw ValidationError("unknown sweep axis '" + text + "'");
}

double RunConfig::d_max() const {
  return d_max_m ? *d_max_m : max_equivalent_distance(link_budget);
}

CompassConfig RunConfig::compass_config(CompassMode mode) const {
  CompassConfig c = CompassConfig::for_layout(layout.kind, compass.n_sectors, mode,
                                              compass.corner_pairing);
  if (compass.sector_offset) c.sector_offset = *compass.sector_offset;
  return c;
}

std::vector<double> RunConfig::distance_grid() const {
  if (!d_grid_m.empty()) return d_grid_m;
  const double top = d_max();
  std::vector<double> grid;
  constexpr int kSteps = 40;
  for (int i = 1; i <= kSteps; ++i) grid.push_back(top * i / kSteps);
  return grid;
}

void RunConfig::validate() const {
  if (!scenario.trace) scenario.highway.validate();
  layout.validate();
  timing.validate();
  link_budget.validate();
  if (d_max_m && !(*d_max_m > 0.0 && std::isfinite(*d_max_m))) {
    throw ValidationError("config: link_budget.d_max_m must be positive");
  }
  if (compass.modes.empty()) throw ValidationError("config: compass.modes is empty");
  compass_config(CompassMode::Effective).validate();
  if (schemes.empty()) throw ValidationError("config: schemes is empty");
  if (!d_grid_m.empty()) validate_distance_grid(d_grid_m);
  if (validation.trials == 0) throw ValidationError("config: validate.trials must be >= 1");
}

namespace {

// Reads the keys of one object and complains about the ones nobody asked for.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ValidationError("config: '" + path_ + "' must be an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& raw(const char* key) {
    used_.insert(key);
    return j_.at(key);
  }

  template <class T>
  bool get(const char* key, T& out) {
    if (!j_.contains(key)) return false;
    used_.insert(key);
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ValidationError("config: '" + path_ + "." + key + "' has the wrong type");
    }
    return true;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) throw ValidationError("config: unknown key '" + path_ + "." + key + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void read_scenario(Section s, ScenarioSource& src) {
  std::string trace;
  if (s.get("trace", trace)) src.trace = trace;
  auto& h = src.highway;
  s.get("lanes_per_direction", h.lanes_per_direction);
  s.get("lane_width_m", h.lane_width);
  s.get("length_m", h.length);
  s.get("density_veh_per_km", h.density);
  s.get("min_headway_m", h.min_headway);
  s.get("vehicle_length_m", h.vehicle_length);
  s.get("vehicle_width_m", h.vehicle_width);
  s.get("seed", h.seed);
  s.get("snapshots", h.snapshots);
  s.get("snapshot_interval_s", h.snapshot_interval);
  s.get("sample_interval_s", src.sample_interval_s);
  s.finish();
}

void read_timing(Section s, RadarTimingSpec& t) {
  s.get("b_total_hz", t.b_total_hz);
  s.get("b_chirp_hz", t.b_chirp_hz);
  s.get("b_adc_hz", t.b_adc_hz);
  s.get("f_beat_max_hz", t.f_beat_max_hz);
  s.get("t_chirp_s", t.t_chirp_s);
  s.get("t_rep_chirp_s", t.t_rep_chirp_s);
  s.get("n_chirps", t.n_chirps);
  s.get("duty_cycle", t.duty_cycle);
  s.get("x_f", t.x_f);
  s.get("k_ch", t.k_ch);
  s.get("m_consecutive", t.m_consecutive);
  s.finish();
}

void read_link_budget(Section s, LinkBudgetSpec& l, std::optional<double>& d_max) {
  s.get("eirp_dbm", l.eirp_dbm);
  s.get("rx_gain_db", l.rx_gain_db);
  s.get("noise_figure_db", l.noise_figure_db);
  s.get("carrier_hz", l.carrier_hz);
  s.get("adc_bandwidth_hz", l.adc_bandwidth_hz);
  s.get("min_inr_db", l.min_inr_db);
  s.get("rcs_m2", l.rcs_m2);
  double d = 0.0;
  if (s.get("d_max_m", d)) d_max = d;
  s.finish();
}

void read_compass(Section s, CompassSettings& c) {
  std::vector<std::string> modes;
  if (s.get("modes", modes)) {
    c.modes.clear();
    for (const auto& m : modes) c.modes.push_back(parse_compass_mode(m));
  }
  s.get("n_sectors", c.n_sectors);
  double offset = 0.0;
  if (s.get("sector_offset_deg", offset)) c.sector_offset = offset;
  std::string pairing;
  if (s.get("corner_pairing", pairing)) {
    if (pairing == "front_vs_back") {
      c.corner_pairing = CornerPairing::FrontVsBack;
    } else if (pairing == "left_vs_right") {
      c.corner_pairing = CornerPairing::LeftVsRight;
    } else {
      throw ValidationError("config: unknown compass.corner_pairing '" + pairing + "'");
    }
  }
  s.finish();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON: ") + e.what());
  }
  Section top(doc, "config");
  RunConfig cfg;

  // The radar kind picks the defaults of the timing and link budget sections.
  if (top.has("layout")) {
    Section s(top.raw("layout"), "layout");
    std::string kind = "front";
    s.get("kind", kind);
    const RadarKind k = parse_radar_kind(kind);
    cfg.layout = RadarLayout::for_kind(k);
    cfg.timing = k == RadarKind::Front ? RadarTimingSpec::front() : RadarTimingSpec::corner();
    cfg.link_budget = k == RadarKind::Front ? LinkBudgetSpec::front() : LinkBudgetSpec::corner();
    s.get("fov_deg", cfg.layout.fov);
    s.finish();
  }
  if (top.has("scenario")) read_scenario(Section(top.raw("scenario"), "scenario"), cfg.scenario);
  if (top.has("timing")) read_timing(Section(top.raw("timing"), "timing"), cfg.timing);
  if (top.has("link_budget")) {
    read_link_budget(Section(top.raw("link_budget"), "link_budget"), cfg.link_budget, cfg.d_max_m);
  }
  if (top.has("compass")) read_compass(Section(top.raw("compass"), "compass"), cfg.compass);
  std::vector<std::string> schemes;
  if (top.get("schemes", schemes)) {
    cfg.schemes.clear();
    for (const auto& s : schemes) cfg.schemes.push_back(parse_scheme(s));
  }
  if (top.has("distribution")) {
    Section s(top.raw("distribution"), "distribution");
    std::vector<double> p;
    if (!s.get("probabilities", p)) {
      throw ValidationError("config: distribution.probabilities is required");
    }
    s.finish();
    cfg.distribution = InterfererDistribution::from_probabilities(std::move(p));
  }
  if (top.has("interferers")) {
    Section s(top.raw("interferers"), "interferers");
    s.get("d_grid_m", cfg.d_grid_m);
    s.finish();
  }
  if (top.has("sweep")) {
    Section s(top.raw("sweep"), "sweep");
    std::string axis;
    if (s.get("axis", axis)) cfg.sweep.axis = parse_sweep_axis(axis);
    s.get("values", cfg.sweep.values);
    s.finish();
  }
  if (top.has("model")) {
    Section s(top.raw("model"), "model");
    std::string overlap;
    if (s.get("frame_overlap", overlap)) {
      if (overlap == "approximate") {
        cfg.frame_overlap = FrameOverlap::Approximate;
      } else if (overlap == "exact") {
        cfg.frame_overlap = FrameOverlap::Exact;
      } else {
        throw ValidationError("config: unknown model.frame_overlap '" + overlap + "'");
      }
    }
    s.finish();
  }
  if (top.has("validate")) {
    Section s(top.raw("validate"), "validate");
    s.get("trials", cfg.validation.trials);
    s.finish();
  }
  std::string out;
  if (top.get("out_dir", out)) cfg.out_dir = out;
  if (top.get("seed", cfg.seed)) {
    cfg.scenario.highway.seed = cfg.seed;
    cfg.validation.seed = cfg.seed;
  }
  top.get("threads", cfg.threads);
  top.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  RunConfig cfg = parse_config(text.str());
  // A relative trace path is resolved against the config file.
  if (cfg.scenario.trace && cfg.scenario.trace->is_relative()) {
    cfg.scenario.trace = path.parent_path() / *cfg.scenario.trace;
  }
  return cfg;
}

}  // namespace radarint::cli
