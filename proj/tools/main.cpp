// Command-line front end: simulate -> ingest -> scan -> detect -> summarize.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "routine/activity.hpp"
#include "routine/errors.hpp"
#include "routine/synth.hpp"
#include "store.hpp"

namespace fs = std::filesystem;
using namespace routine;
using namespace routine::cli;

namespace {

constexpr int kExitConfig = 2;  // configuration / schema errors
constexpr int kExitRange = 3;   // insufficient data range

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> households;
  std::string from;
  std::string to;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_range = true) {
  cmd->add_option("--config", args.config_path, "Config file (key = value sections)");
  cmd->add_option("--out", args.out_dir, "Output directory")->required();
  cmd->add_option("--households", args.households, "Only process these household ids")
      ->delimiter(',');
  if (with_range) {
    cmd->add_option("--from", args.from, "Start date (inclusive, ISO 8601)");
    cmd->add_option("--to", args.to, "End date (exclusive, ISO 8601)");
  }
}

Date require_date(const std::string& value, const char* flag) {
  const auto d = parse_date(value);
  if (!d) throw ConfigError(std::string(flag) + ": expected ISO date, got '" + value + "'");
  return *d;
}

// Parses a store's event file back into a per-household log.
ValidatedEventLog load_store_log(const fs::path& file, const Settings& settings) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open '" + file.string() + "'");
  ParseResult parsed = parse_event_log(in);
  if (!parsed.rejects.empty()) {
    throw ConfigError("store file '" + file.filename().string() + "' has malformed rows");
  }
  auto logs = validate_events(std::move(parsed.events), settings.gap_threshold);
  if (logs.empty()) {
    ValidatedEventLog empty;
    empty.household_id = household_of_event_file(file);
    return empty;
  }
  return std::move(logs.front());
}

void write_store(const fs::path& out_dir, const std::vector<ValidatedEventLog>& logs,
                 const std::vector<Reject>& rejects) {
  fs::create_directories(out_dir);
  for (const auto& log : logs) {
    std::ostringstream events;
    write_event_csv(events, log.events);
    atomic_write(out_dir / ("events_" + log.household_id + ".csv"), events.str());
  }
  std::ostringstream gaps;
  write_gaps_csv(gaps, logs);
  atomic_write(out_dir / "gaps.csv", gaps.str());
  std::ostringstream rej;
  write_rejects_csv(rej, rejects);
  atomic_write(out_dir / "rejects.csv", rej.str());
}

int run_ingest(const CommonArgs& args, const std::vector<std::string>& inputs,
               const std::vector<std::string>& argv) {
  const Settings settings = load_settings(args.config_path);
  std::vector<SensorEvent> events;
  std::vector<Reject> rejects;
  std::vector<fs::path> input_paths;
  for (const auto& input : inputs) {
    std::ifstream in(input);
    if (!in) throw ConfigError("cannot open input '" + input + "'");
    ParseResult parsed = parse_event_log(in);
    for (auto& e : parsed.events) events.push_back(std::move(e));
    for (auto& r : parsed.rejects) {
      if (inputs.size() > 1) r.reason = fs::path(input).filename().string() + ": " + r.reason;
      rejects.push_back(std::move(r));
    }
    input_paths.emplace_back(input);
  }

  auto logs = validate_events(std::move(events), settings.gap_threshold);
  std::erase_if(logs, [&](const ValidatedEventLog& log) {
    return !household_selected(log.household_id, args.households);
  });
  write_store(args.out_dir, logs, rejects);
  write_manifest(args.out_dir, "ingest", argv, args.config_path, input_paths);
  std::cout << "ingested " << logs.size() << " household(s), " << rejects.size()
            << " rejected row(s)\n";
  return 0;
}

int run_scan(const CommonArgs& args, const std::string& store_dir,
             const std::vector<std::string>& argv) {
  const Settings settings = load_settings(args.config_path);
  fs::create_directories(args.out_dir);
  const auto files = store_event_files(store_dir);
  std::vector<fs::path> used;
  for (const auto& file : files) {
    if (!household_selected(household_of_event_file(file), args.households)) continue;
    used.push_back(file);
    const ValidatedEventLog log = load_store_log(file, settings);
    FridgeCollapseStats stats;
    const ValidatedEventLog collapsed =
        collapse_fridge_events(log, settings.max_open_duration, &stats);
    StateEventSequence seq = map_to_states(collapsed, settings.mapping);
    for (auto& item : seq.items) item.timestamp += settings.tz_offset;

    if (seq.items.empty() && args.from.empty()) {
      std::ostringstream out;
      export_series_csv(out, DissimilaritySeries{log.household_id, {}});
      atomic_write(fs::path(args.out_dir) / ("series_" + log.household_id + ".csv"), out.str());
      continue;
    }
    const TimePoint t0 = args.from.empty() ? midnight(date_of(seq.items.front().timestamp))
                                           : midnight(require_date(args.from, "--from"));
    const TimePoint t1 = args.to.empty() ? midnight(date_of(seq.items.back().timestamp)) +
                                               kSecondsPerDay
                                         : midnight(require_date(args.to, "--to"));
    const DissimilaritySeries series = sliding_scan(seq, settings.windows, t0, t1);
    std::ostringstream out;
    export_series_csv(out, series);
    atomic_write(fs::path(args.out_dir) / ("series_" + log.household_id + ".csv"), out.str());
  }
  write_manifest(args.out_dir, "scan", argv, args.config_path, used);
  std::cout << "scanned " << used.size() << " household(s)\n";
  return 0;
}

int run_detect(const CommonArgs& args, const std::string& series_dir,
               const std::vector<std::string>& argv) {
  const Settings settings = load_settings(args.config_path);
  fs::create_directories(args.out_dir);
  std::vector<fs::path> used;
  std::vector<Alert> all_alerts;
  for (const auto& entry : fs::directory_iterator(series_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("series_", 0) != 0 || name.substr(name.size() - 4) != ".csv") continue;
    const std::string household = name.substr(7, name.size() - 11);
    if (!household_selected(household, args.households)) continue;
    used.push_back(entry.path());
    std::ifstream in(entry.path());
    auto series = parse_series_csv(in);
    if (!series) throw ConfigError("cannot parse series file '" + name + "'");
    series->household_id = household;
    if (series->points.empty()) continue;

    std::set<Date> dates;
    for (const auto& p : series->points) dates.insert(p.step_date);
    std::vector<Date> sorted_dates(dates.begin(), dates.end());
    const int steps = settings.detect.min_calibration_steps;
    const Date calib_end = static_cast<int>(sorted_dates.size()) > steps
                               ? sorted_dates[steps]
                               : sorted_dates.back() + 1;
    const ThresholdProfile profile =
        calibrate(*series, sorted_dates.front(), calib_end, settings.detect);
    auto alerts = flag(*series, profile, settings.detect);
    for (auto& a : alerts) all_alerts.push_back(std::move(a));
  }
  std::sort(used.begin(), used.end());
  std::ostringstream out;
  write_alerts_csv(out, all_alerts);
  atomic_write(fs::path(args.out_dir) / "alerts.csv", out.str());
  write_manifest(args.out_dir, "detect", argv, args.config_path, used);
  std::cout << all_alerts.size() << " alert(s) from " << used.size() << " series\n";
  return 0;
}

int run_summarize(const CommonArgs& args, const std::string& store_dir,
                  const std::vector<std::string>& argv) {
  const Settings settings = load_settings(args.config_path);
  fs::create_directories(args.out_dir);
  std::vector<fs::path> used;
  std::vector<ActivityRecord> daily, six_hourly;
  for (const auto& file : store_event_files(store_dir)) {
    const std::string household = household_of_event_file(file);
    if (!household_selected(household, args.households)) continue;
    used.push_back(file);
    ValidatedEventLog log = load_store_log(file, settings);
    if (!args.from.empty() || !args.to.empty()) {
      const TimePoint from = args.from.empty() ? std::numeric_limits<TimePoint>::min()
                                               : midnight(require_date(args.from, "--from")) -
                                                     settings.tz_offset;
      const TimePoint to = args.to.empty() ? std::numeric_limits<TimePoint>::max()
                                           : midnight(require_date(args.to, "--to")) -
                                                 settings.tz_offset;
      std::erase_if(log.events,
                    [&](const SensorEvent& e) { return e.timestamp < from || e.timestamp >= to; });
    }
    ActivityOptions options;
    options.mode = settings.daily_mean_mode;
    options.tz_offset = settings.tz_offset;
    options.occupancy = settings.occupancy_for(household);
    for (auto& r : daily_mean_activity(log, settings.activity_sensors, options)) {
      daily.push_back(std::move(r));
    }
    for (auto& r : six_hourly_activity(log, settings.activity_sensors, options)) {
      six_hourly.push_back(std::move(r));
    }
  }

  const auto table = [&](std::span<const ActivityRecord> records) {
    std::ostringstream out;
    export_lme_table(out, records, settings.covid_periods);
    return out.str();
  };
  atomic_write(fs::path(args.out_dir) / "activity_daily.csv", table(daily));
  atomic_write(fs::path(args.out_dir) / "activity_six_hourly.csv", table(six_hourly));
  std::vector<ActivityRecord> standardized = six_hourly;
  if (!standardized.empty()) standardize_by_time_of_day(standardized);
  atomic_write(fs::path(args.out_dir) / "lme_table.csv", table(standardized));
  write_manifest(args.out_dir, "summarize", argv, args.config_path, used);
  std::cout << "summarized " << used.size() << " household(s)\n";
  return 0;
}

int run_simulate(const CommonArgs& args, const std::string& profile_path,
                 const std::string& scenario_path, std::uint64_t seed, bool seed_set,
                 const std::vector<std::string>& argv) {
  if (args.from.empty() || args.to.empty()) {
    throw ConfigError("simulate requires --from and --to");
  }
  std::ifstream pin(profile_path);
  if (!pin) throw ConfigError("cannot open profile '" + profile_path + "'");
  HouseholdProfile profile = load_profile_json(pin);
  if (seed_set) profile.seed = seed;

  ChangeScenario scenario;
  const bool with_scenario = !scenario_path.empty();
  if (with_scenario) {
    std::ifstream sin(scenario_path);
    if (!sin) throw ConfigError("cannot open scenario '" + scenario_path + "'");
    scenario = load_scenario_json(sin);
  }

  const Date from = require_date(args.from, "--from");
  const Date to = require_date(args.to, "--to");
  const ValidatedEventLog log =
      generate(profile, from, to, with_scenario ? &scenario : nullptr);
  write_store(args.out_dir, {log}, {});
  std::vector<fs::path> inputs = {profile_path};
  if (with_scenario) inputs.emplace_back(scenario_path);
  write_manifest(args.out_dir, "simulate", argv, args.config_path, inputs);
  std::cout << "simulated " << log.events.size() << " events for " << profile.household_id
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kitchen-activity routine change detection pipeline"};
  app.require_subcommand(1);
  std::vector<std::string> argv_copy(argv, argv + argc);

  CommonArgs ingest_args;
  std::vector<std::string> ingest_inputs;
  auto* ingest_cmd = app.add_subcommand("ingest", "Validate raw event CSVs into a store");
  add_common(ingest_cmd, ingest_args, /*with_range=*/false);
  ingest_cmd->add_option("inputs", ingest_inputs, "Raw event CSV files")->required();

  CommonArgs scan_args;
  std::string scan_store;
  auto* scan_cmd = app.add_subcommand("scan", "Compute dissimilarity series from a store");
  add_common(scan_cmd, scan_args);
  scan_cmd->add_option("store", scan_store, "Store directory from ingest/simulate")->required();

  CommonArgs detect_args;
  std::string detect_series;
  auto* detect_cmd = app.add_subcommand("detect", "Calibrate thresholds and flag alerts");
  add_common(detect_cmd, detect_args, /*with_range=*/false);
  detect_cmd->add_option("series", detect_series, "Directory of series CSVs from scan")
      ->required();

  CommonArgs summarize_args;
  std::string summarize_store;
  auto* summarize_cmd = app.add_subcommand("summarize", "Export activity and LME tables");
  add_common(summarize_cmd, summarize_args);
  summarize_cmd->add_option("store", summarize_store, "Store directory")->required();

  CommonArgs simulate_args;
  std::string profile_path, scenario_path;
  std::uint64_t seed = 0;
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic household store");
  add_common(simulate_cmd, simulate_args);
  simulate_cmd->add_option("--profile", profile_path, "Household profile JSON")->required();
  simulate_cmd->add_option("--scenario", scenario_path, "Change scenario JSON");
  auto* seed_opt = simulate_cmd->add_option("--seed", seed, "Override the profile seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest_cmd->parsed()) return run_ingest(ingest_args, ingest_inputs, argv_copy);
    if (scan_cmd->parsed()) return run_scan(scan_args, scan_store, argv_copy);
    if (detect_cmd->parsed()) return run_detect(detect_args, detect_series, argv_copy);
    if (summarize_cmd->parsed()) return run_summarize(summarize_args, summarize_store, argv_copy);
    if (simulate_cmd->parsed()) {
      return run_simulate(simulate_args, profile_path, scenario_path, seed, seed_opt->count() > 0,
                          argv_copy);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRange;
  } catch (const CalibrationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRange;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
