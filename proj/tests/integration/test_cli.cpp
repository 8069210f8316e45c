// End-to-end checks that drive the installed binary through std::system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "routine/synth.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("ROUTINE_CLI");
  REQUIRE_MESSAGE(env != nullptr, "ROUTINE_CLI must point at the pipeline binary");
  return env;
}

int run(const std::string& args) {
  const std::string cmd = "\"" + cli_path() + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
#ifdef _WIN32
  return status;
#else
  return WEXITSTATUS(status);
#endif
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("routine_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "expected file: " << p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

void write_profile(const fs::path& p, const std::string& id, std::uint64_t seed,
                   double rate = 3.0) {
  std::ofstream out(p);
  routine::write_profile_json(out, fixtures::diurnal_profile(id, seed, rate));
}

constexpr const char* kRawHeader = "household_id,timestamp,sensor,value\n";

}  // namespace

TEST_CASE("running without a subcommand fails") { CHECK(run("") != 0); }

TEST_CASE("ingest splits households and reports rejects without failing") {
  TempDir dir("ingest");
  spit(dir / "raw.csv", std::string(kRawHeader) +
                            "h001,2020-04-01T08:00:00Z,kettle_plug,plug_used\n"
                            "h002,2020-04-01T09:00:00Z,kitchen_motion,motion_fired\n"
                            "h001,not-a-time,kettle_plug,plug_used\n"
                            "h001,2020-04-01T10:00:00Z,oven_plug,plug_used\n");
  const auto out = dir / "store";
  CHECK(run("ingest " + (dir / "raw.csv").string() + " --out " + out.string()) == 0);
  CHECK(fs::exists(out / "events_h001.csv"));
  CHECK(fs::exists(out / "events_h002.csv"));
  CHECK(fs::exists(out / "gaps.csv"));
  CHECK(fs::exists(out / "manifest.json"));

  const auto rejects = slurp(out / "rejects.csv");
  CHECK(rejects.find("4,") != std::string::npos);  // bad row sits on line 4

  const auto h1 = slurp(out / "events_h001.csv");
  CHECK(h1.find("h002") == std::string::npos);
  CHECK(h1.find("kettle_plug") != std::string::npos);
}

TEST_CASE("a broken header is a schema error and leaves no partial store") {
  TempDir dir("schema");
  spit(dir / "raw.csv", "household_id,when,sensor,value\nh001,2020-04-01T08:00:00Z,kettle_plug,plug_used\n");
  const auto out = dir / "store";
  CHECK(run("ingest " + (dir / "raw.csv").string() + " --out " + out.string()) == 2);
  CHECK(!fs::exists(out / "events_h001.csv"));
  CHECK(!fs::exists(out / "manifest.json"));
}

TEST_CASE("the households filter drops other ids") {
  TempDir dir("filter");
  spit(dir / "raw.csv", std::string(kRawHeader) +
                            "h001,2020-04-01T08:00:00Z,kettle_plug,plug_used\n"
                            "h002,2020-04-01T09:00:00Z,kettle_plug,plug_used\n");
  const auto out = dir / "store";
  CHECK(run("ingest " + (dir / "raw.csv").string() + " --out " + out.string() +
            " --households h002") == 0);
  CHECK(!fs::exists(out / "events_h001.csv"));
  CHECK(fs::exists(out / "events_h002.csv"));
}

TEST_CASE("simulate requires a date range") {
  TempDir dir("simrange");
  write_profile(dir / "profile.json", "h001", 5);
  CHECK(run("simulate --profile " + (dir / "profile.json").string() + " --out " +
            (dir / "store").string()) == 2);
}

TEST_CASE("simulated stores re-ingest byte-identically with zero rejects") {
  TempDir dir("roundtrip");
  write_profile(dir / "profile.json", "h001", 11);
  const auto store = dir / "store";
  CHECK(run("simulate --profile " + (dir / "profile.json").string() + " --out " + store.string() +
            " --from 2020-04-01 --to 2020-05-01") == 0);
  const auto original = slurp(store / "events_h001.csv");

  const auto again = dir / "store2";
  CHECK(run("ingest " + (store / "events_h001.csv").string() + " --out " + again.string()) == 0);
  CHECK(slurp(again / "events_h001.csv") == original);
  CHECK(slurp(again / "rejects.csv").find("h001") == std::string::npos);
}

TEST_CASE("scan emits a series per household and respects the range rule") {
  TempDir dir("scan");
  write_profile(dir / "profile.json", "h001", 21, 3.5);
  const auto store = dir / "store";
  REQUIRE(run("simulate --profile " + (dir / "profile.json").string() + " --out " +
              store.string() + " --from 2020-03-01 --to 2020-04-15") == 0);

  const auto series = dir / "series";
  CHECK(run("scan " + store.string() + " --out " + series.string()) == 0);
  const auto csv = slurp(series / "series_h001.csv");
  CHECK(csv.rfind("household_id,step_date,period,score,current_events,baseline_events", 0) == 0);
  CHECK(csv.find("2020-04-14") != std::string::npos);

  // Ten days of data cannot host a 28-day warm-up.
  const auto tiny_store = dir / "tiny";
  REQUIRE(run("simulate --profile " + (dir / "profile.json").string() + " --out " +
              tiny_store.string() + " --from 2020-03-01 --to 2020-03-11") == 0);
  CHECK(run("scan " + tiny_store.string() + " --out " + (dir / "tiny_series").string()) == 3);
}

TEST_CASE("detect needs enough calibration steps, then writes alerts.csv") {
  TempDir dir("detect");
  write_profile(dir / "profile.json", "h001", 33, 3.5);
  const auto store = dir / "store";
  REQUIRE(run("simulate --profile " + (dir / "profile.json").string() + " --out " +
              store.string() + " --from 2020-01-01 --to 2020-04-15") == 0);
  const auto series = dir / "series";
  REQUIRE(run("scan " + store.string() + " --out " + series.string()) == 0);

  const auto alerts = dir / "alerts";
  CHECK(run("detect " + series.string() + " --out " + alerts.string()) == 0);
  const auto csv = slurp(alerts / "alerts.csv");
  CHECK(csv.rfind("household_id,period,onset,duration_days,peak,archetype,threshold", 0) == 0);

  // A series with only a handful of step dates cannot calibrate.
  const auto short_store = dir / "short_store";
  REQUIRE(run("simulate --profile " + (dir / "profile.json").string() + " --out " +
              short_store.string() + " --from 2020-03-01 --to 2020-04-03") == 0);
  const auto short_series = dir / "short_series";
  REQUIRE(run("scan " + short_store.string() + " --out " + short_series.string()) == 0);
  CHECK(run("detect " + short_series.string() + " --out " + (dir / "x").string()) == 3);
}

TEST_CASE("summarize writes the three activity tables") {
  TempDir dir("summarize");
  write_profile(dir / "profile.json", "h001", 44);
  const auto store = dir / "store";
  REQUIRE(run("simulate --profile " + (dir / "profile.json").string() + " --out " +
              store.string() + " --from 2020-04-01 --to 2020-05-01") == 0);
  const auto out = dir / "tables";
  CHECK(run("summarize " + store.string() + " --out " + out.string()) == 0);
  for (const char* name : {"activity_daily.csv", "activity_six_hourly.csv", "lme_table.csv"}) {
    const auto csv = slurp(out / name);
    CHECK(csv.rfind("household_id,date,period_label,period_of_day,occupancy,value", 0) == 0);
    CHECK(csv.find("P3") != std::string::npos);  // April 2020 dates carry a timeline label
  }
}

TEST_CASE("the pipeline is deterministic end to end") {
  TempDir dir("determinism");
  write_profile(dir / "profile.json", "h001", 55, 3.0);
  for (const char* tag : {"a", "b"}) {
    const auto store = dir / (std::string("store_") + tag);
    REQUIRE(run("simulate --profile " + (dir / "profile.json").string() + " --out " +
                store.string() + " --from 2020-03-01 --to 2020-04-15") == 0);
    REQUIRE(run("scan " + store.string() + " --out " +
                (dir / (std::string("series_") + tag)).string()) == 0);
  }
  CHECK(slurp(dir / "store_a" / "events_h001.csv") == slurp(dir / "store_b" / "events_h001.csv"));
  CHECK(slurp(dir / "series_a" / "series_h001.csv") ==
        slurp(dir / "series_b" / "series_h001.csv"));
}

TEST_CASE("an unreadable config path is a configuration error") {
  TempDir dir("config");
  spit(dir / "raw.csv", std::string(kRawHeader) + "h001,2020-04-01T08:00:00Z,kettle_plug,plug_used\n");
  CHECK(run("ingest " + (dir / "raw.csv").string() + " --out " + (dir / "store").string() +
            " --config " + (dir / "missing.ini").string()) == 2);
}
