#include "store.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "routine/errors.hpp"
#include "routine/synth.hpp"

namespace routine::cli {

namespace fs = std::filesystem;

Occupancy Settings::occupancy_for(const std::string& household) const {
  const auto it = occupancy.find(household);
  return it == occupancy.end() ? Occupancy::multiple : it->second;
}

Settings load_settings(const std::string& config_path) {
  Settings s;
  s.activity_sensors = {Sensor::kitchen_motion, Sensor::fridge_door,  Sensor::kettle_plug,
                        Sensor::oven_plug,      Sensor::toaster_plug, Sensor::microwave_plug};
  if (config_path.empty()) return s;
  const KeyValueConfig cfg = KeyValueConfig::load(config_path);

  const std::string tz = cfg.get_or("dataset.timezone", "UTC");
  const auto offset = parse_utc_offset(tz);
  if (!offset) throw ConfigError("dataset.timezone '" + tz + "' not recognized");
  s.tz_offset = *offset;
  s.gap_threshold =
      static_cast<Duration>(cfg.get_double("dataset.gap_threshold_hours", 24.0) * kSecondsPerHour);
  s.max_open_duration = static_cast<Duration>(
      cfg.get_double("dataset.max_open_duration_minutes", 10.0) * kSecondsPerMinute);

  for (const auto& [sensor_name, state_name] : cfg.section("mapping")) {
    const auto sensor = parse_sensor(sensor_name);
    if (!sensor) throw ConfigError("mapping: unknown sensor '" + sensor_name + "'");
    const auto state = parse_state(state_name);
    if (!state) throw ConfigError("mapping: unknown state '" + state_name + "'");
    s.mapping.mapping[*sensor] = *state;
  }

  s.windows.step = cfg.get_int("windows.step_days", 1) * kSecondsPerDay;
  s.windows.current_len = cfg.get_int("windows.current_days", 7) * kSecondsPerDay;
  s.windows.baseline_len = cfg.get_int("windows.baseline_days", 21) * kSecondsPerDay;
  s.windows.resample = cfg.get_int("windows.resample_hours", 1) * kSecondsPerHour;
  s.windows.score_cap = cfg.get_double("windows.score_cap", 4.0);
  s.windows.min_support = static_cast<int>(cfg.get_int("windows.min_support", 10));
  s.windows.validate();

  s.detect.k = cfg.get_double("detect.k", 3.0);
  s.detect.spread_epsilon = cfg.get_double("detect.spread_epsilon", 0.1);
  s.detect.mad_scale = cfg.get_double("detect.mad_scale", s.detect.mad_scale);
  s.detect.min_support = s.windows.min_support;
  s.detect.min_calibration_steps = static_cast<int>(cfg.get_int("detect.calibration_steps", 28));
  s.detect.days_current = static_cast<int>(s.windows.current_len / kSecondsPerDay);
  s.detect.days_baseline = static_cast<int>(s.windows.baseline_len / kSecondsPerDay);
  s.detect.sustained_settle_ratio = cfg.get_double("detect.sustained_settle_ratio", 1.25);
  if (s.detect.k <= 0) throw ConfigError("detect.k must be > 0");

  const std::string mode = cfg.get_or("activity.daily_mean_mode", "per_sensor_mean");
  if (mode == "per_sensor_mean") {
    s.daily_mean_mode = DailyMeanMode::per_sensor_mean;
  } else if (mode == "daily_sum") {
    s.daily_mean_mode = DailyMeanMode::daily_sum;
  } else {
    throw ConfigError("activity.daily_mean_mode: expected per_sensor_mean or daily_sum");
  }

  for (const auto& [household, occ_name] : cfg.section("occupancy")) {
    const auto occ = parse_occupancy(occ_name);
    if (!occ) throw ConfigError("occupancy." + household + ": expected single or multiple");
    s.occupancy[household] = *occ;
  }

  const auto period_rows = cfg.section("periods");
  if (!period_rows.empty()) {
    s.covid_periods.clear();
    for (const auto& [label, range] : period_rows) {
      const auto comma = range.find(',');
      if (comma == std::string::npos) {
        throw ConfigError("periods." + label + ": expected start,end");
      }
      const auto start = parse_date(range.substr(0, comma));
      const auto end = parse_date(range.substr(comma + 1));
      if (!start || !end) throw ConfigError("periods." + label + ": unparseable dates");
      s.covid_periods.push_back({label, *start, *end});
    }
    std::sort(s.covid_periods.begin(), s.covid_periods.end(),
              [](const CovidPeriodDef& a, const CovidPeriodDef& b) { return a.start < b.start; });
  }
  return s;
}

void atomic_write(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
  }
  fs::rename(tmp, path);
}

std::vector<fs::path> store_event_files(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) return files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("events_", 0) == 0 && name.size() > 11 &&
        name.substr(name.size() - 4) == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string household_of_event_file(const fs::path& path) {
  const std::string name = path.filename().string();
  return name.substr(7, name.size() - 11);
}

std::string file_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 14695981039346656037ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const std::vector<std::string>& argv, const std::string& config_path,
                    const std::vector<fs::path>& inputs) {
  nlohmann::json j;
  j["tool"] = "routine";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["argv"] = argv;
  nlohmann::json cfg = nlohmann::json::object();
  if (!config_path.empty()) {
    for (const auto& [k, v] : KeyValueConfig::load(config_path).values()) cfg[k] = v;
  }
  j["config"] = std::move(cfg);
  nlohmann::json digests = nlohmann::json::object();
  for (const auto& input : inputs) digests[input.filename().string()] = file_digest(input);
  j["inputs"] = std::move(digests);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    j["generated_at"] = format_rfc3339_utc(std::atoll(epoch));
  }
  atomic_write(out_dir / "manifest.json", j.dump(2) + "\n");
}

bool household_selected(const std::string& id, const std::vector<std::string>& selection) {
  if (selection.empty()) return true;
  return std::find(selection.begin(), selection.end(), id) != selection.end();
}

}  // namespace routine::cli
