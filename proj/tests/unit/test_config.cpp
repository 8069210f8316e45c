#include <doctest.h>

#include <sstream>

#include "routine/config.hpp"
#include "routine/errors.hpp"

using namespace routine;

TEST_CASE("key/value config with sections") {
  std::istringstream in(
      "# comment\n"
      "[dataset]\n"
      "timezone = UTC\n"
      "gap_threshold_hours = 24\n"
      "\n"
      "[windows]\n"
      "step_days=1\n"
      "score_cap = 4.0\n");
  const auto cfg = KeyValueConfig::parse(in);
  CHECK(cfg.get_or("dataset.timezone", "") == "UTC");
  CHECK(cfg.get_int("windows.step_days", 0) == 1);
  CHECK(cfg.get_double("windows.score_cap", 0.0) == 4.0);
  CHECK(cfg.get_double("windows.missing", 2.5) == 2.5);
  CHECK(cfg.section("dataset").size() == 2);
}

TEST_CASE("config errors") {
  std::istringstream bad_line("no_equals_here\n");
  CHECK_THROWS_AS(KeyValueConfig::parse(bad_line), ConfigError);

  std::istringstream bad_number("[a]\nx = not_a_number\n");
  const auto cfg = KeyValueConfig::parse(bad_number);
  CHECK_THROWS_AS(cfg.get_double("a.x", 0.0), ConfigError);
}
