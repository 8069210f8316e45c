#pragma once

// Shared helpers for the CLI: on-disk store layout, run manifests, and the
// config-file bindings for the core modules.

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "routine/activity.hpp"
#include "routine/chain.hpp"
#include "routine/config.hpp"
#include "routine/detect.hpp"
#include "routine/ingest.hpp"
#include "routine/windows.hpp"

namespace routine::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Settings assembled from the config file (all keys optional).
struct Settings {
  Duration tz_offset = 0;
  Duration gap_threshold = 24 * kSecondsPerHour;
  Duration max_open_duration = 10 * kSecondsPerMinute;
  StateMappingConfig mapping = StateMappingConfig::defaults();
  WindowConfig windows;
  DetectConfig detect;
  DailyMeanMode daily_mean_mode = DailyMeanMode::per_sensor_mean;
  std::set<Sensor> activity_sensors;  // defaults to all six
  std::map<std::string, Occupancy> occupancy;
  std::vector<CovidPeriodDef> covid_periods = default_covid_periods();

  Occupancy occupancy_for(const std::string& household) const;
};

Settings load_settings(const std::string& config_path);  // "" -> defaults

// Writes content to path atomically (temp file + rename).
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Store layout: events_<household>.csv, gaps.csv, rejects.csv, manifest.json.
std::vector<std::filesystem::path> store_event_files(const std::filesystem::path& dir);
std::string household_of_event_file(const std::filesystem::path& path);

// FNV-1a 64 digest of a file's bytes, as hex.
std::string file_digest(const std::filesystem::path& path);

// Deterministic by default: wall-clock time only appears when
// SOURCE_DATE_EPOCH is set in the environment.
void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const std::vector<std::string>& argv, const std::string& config_path,
                    const std::vector<std::filesystem::path>& inputs);

bool household_selected(const std::string& id, const std::vector<std::string>& selection);

}  // namespace routine::cli
