#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "routine/errors.hpp"
#include "routine/synth.hpp"

using namespace routine;

TEST_CASE("generation is deterministic per seed") {
  const auto profile = fixtures::diurnal_profile("h001", 77);
  const auto a = generate(profile, 0, 30);
  const auto b = generate(profile, 0, 30);
  CHECK(a.events == b.events);

  auto reseeded = profile;
  reseeded.seed = 78;
  CHECK(generate(reseeded, 0, 30).events != a.events);
}

TEST_CASE("zero rates generate nothing") {
  HouseholdProfile profile;
  profile.household_id = "h001";
  const auto log = generate(profile, 0, 30);
  CHECK(log.events.empty());
}

TEST_CASE("generated logs are already valid: sorted, consistent, duplicate-free") {
  const auto log = generate(fixtures::diurnal_profile("h001", 5, 4.0), 0, 30);
  REQUIRE(!log.events.empty());
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    const auto& e = log.events[i];
    CHECK(consistent_pair(e.sensor, e.value));
    if (i > 0) CHECK(!event_before(e, log.events[i - 1]));
  }
  auto revalidated = validate_events(log.events, 24 * kSecondsPerHour);
  REQUIRE(revalidated.size() == 1);
  CHECK(revalidated[0].duplicates_dropped == 0);
  CHECK(revalidated[0].events == log.events);
}

TEST_CASE("every fridge opening has a close 20 seconds later") {
  const auto log = generate(fixtures::diurnal_profile("h001", 13, 4.0), 0, 30);
  FridgeCollapseStats stats;
  const auto collapsed = collapse_fridge_events(log, 10 * kSecondsPerMinute, &stats);
  CHECK(stats.unmatched_opens == 0);
  CHECK(stats.unmatched_closes == 0);
  for (std::size_t i = 0; i + 1 < log.events.size(); ++i) {
    if (log.events[i].sensor == Sensor::fridge_door &&
        log.events[i].value == EventValue::door_opened) {
      const auto& close = log.events[i + 1];
      CHECK(close.sensor == Sensor::fridge_door);
      CHECK(close.value == EventValue::door_closed);
      CHECK(close.timestamp == log.events[i].timestamp + 20);
    }
  }
  (void)collapsed;
}

TEST_CASE("output before a scenario's onset is identical to the quiet run") {
  const auto profile = fixtures::diurnal_profile("h001", 99);
  ChangeScenario scenario;
  ChangeEvent change;
  change.onset = 20;
  change.rate_multiplier = 3.0;
  scenario.changes.push_back(change);

  const auto quiet = generate(profile, 0, 40);
  const auto changed = generate(profile, 0, 40, &scenario);

  const auto before_onset = [](const ValidatedEventLog& log) {
    std::vector<SensorEvent> head;
    for (const auto& e : log.events) {
      if (e.timestamp < midnight(20)) head.push_back(e);
    }
    return head;
  };
  CHECK(before_onset(quiet) == before_onset(changed));
  CHECK(changed.events.size() > quiet.events.size());
}

TEST_CASE("a bounded change reverts after its end date") {
  const auto profile = fixtures::diurnal_profile("h001", 31);
  ChangeScenario scenario;
  ChangeEvent change;
  change.onset = 10;
  change.end = 12;
  change.rate_multiplier = 0.0;  // silence the household for two days
  scenario.changes.push_back(change);
  const auto log = generate(profile, 0, 20, &scenario);
  bool any_after = false;
  for (const auto& e : log.events) {
    CHECK(!(e.timestamp >= midnight(10) && e.timestamp < midnight(12)));
    if (e.timestamp >= midnight(12)) any_after = true;
  }
  CHECK(any_after);
}

TEST_CASE("scenario dates outside the simulated range are rejected") {
  const auto profile = fixtures::diurnal_profile("h001", 1);
  ChangeScenario scenario;
  ChangeEvent change;
  change.onset = 50;
  scenario.changes.push_back(change);
  CHECK_THROWS_AS(generate(profile, 0, 40, &scenario), ConfigError);

  scenario.changes[0].onset = 10;
  scenario.changes[0].end = 10;
  CHECK_THROWS_AS(generate(profile, 0, 40, &scenario), ConfigError);
}

TEST_CASE("long runs recover the generating matrix") {
  // One busy slot keeps the chain inside a single hourly bucket, so the
  // empirical transition frequencies converge on the slot's matrix.
  HouseholdProfile profile;
  profile.household_id = "h001";
  profile.seed = 424242;
  profile.slots[10].rate = 100.0;
  profile.slots[10].matrix = fixtures::base_matrix();

  const auto log = generate(profile, 0, 1200);
  const auto collapsed = collapse_fridge_events(log, 10 * kSecondsPerMinute);
  const auto seq = map_to_states(collapsed, StateMappingConfig::defaults());

  TransitionCounts counts;
  for (Date d = 0; d < 1200; ++d) {
    const TimePoint start = midnight(d) + 10 * kSecondsPerHour;
    counts = merge_counts(counts, count_transitions(seq, start, start + kSecondsPerHour));
  }
  std::int64_t total = 0;
  for (const auto& row : counts.cell) {
    for (auto c : row) total += c;
  }
  CHECK(total > 100000);

  const auto estimate = normalize(counts);
  const auto& truth = profile.slots[10].matrix;
  for (int r = 0; r < kNumStates; ++r) {
    for (int c = 0; c < kNumStates; ++c) {
      CHECK(std::abs(estimate.p[r][c] - truth.p[r][c]) < 0.02);
    }
  }
}

TEST_CASE("oracle and production scans agree on a small input") {
  const auto log = generate(fixtures::diurnal_profile("h001", 321, 2.5), 0, 32);
  WindowConfig config;
  const TimePoint t0 = 0, t1 = 32 * kSecondsPerDay;

  const auto collapsed = collapse_fridge_events(log, 10 * kSecondsPerMinute);
  const auto seq = map_to_states(collapsed, StateMappingConfig::defaults());
  const auto fast = sliding_scan(seq, config, t0, t1);
  const auto slow = oracle_scan(log, config, 10 * kSecondsPerMinute, 0, t0, t1);

  REQUIRE(fast.points.size() == slow.points.size());
  for (std::size_t i = 0; i < fast.points.size(); ++i) {
    CHECK(fast.points[i].step_date == slow.points[i].step_date);
    CHECK(fast.points[i].period == slow.points[i].period);
    CHECK(fast.points[i].score == doctest::Approx(slow.points[i].score).epsilon(1e-12));
    CHECK(fast.points[i].current_events == slow.points[i].current_events);
    CHECK(fast.points[i].baseline_events == slow.points[i].baseline_events);
  }
}

TEST_CASE("profile JSON round-trip") {
  auto profile = fixtures::diurnal_profile("h042", 7, 2.25);
  profile.timezone = "+01:00";
  std::ostringstream out;
  write_profile_json(out, profile);
  std::istringstream in(out.str());
  const auto back = load_profile_json(in);
  CHECK(back.household_id == profile.household_id);
  CHECK(back.timezone == profile.timezone);
  CHECK(back.seed == profile.seed);
  for (int slot = 0; slot < 24; ++slot) {
    CHECK(back.slots[slot].rate == profile.slots[slot].rate);
    CHECK(back.slots[slot].matrix == profile.slots[slot].matrix);
  }
}

TEST_CASE("scenario JSON round-trip") {
  ChangeScenario scenario;
  scenario.archetype = Archetype::cumulative;
  ChangeEvent change;
  change.onset = days_from_civil(2020, 4, 1);
  change.end = days_from_civil(2020, 4, 9);
  change.rate_multiplier = 1.5;
  change.row_overrides.emplace_back(State::kettle, fixtures::shifted_kettle_row());
  scenario.changes.push_back(change);

  std::ostringstream out;
  write_scenario_json(out, scenario);
  std::istringstream in(out.str());
  const auto back = load_scenario_json(in);
  CHECK(back.archetype == scenario.archetype);
  REQUIRE(back.changes.size() == 1);
  CHECK(back.changes[0].onset == change.onset);
  CHECK(back.changes[0].end == change.end);
  CHECK(back.changes[0].rate_multiplier == change.rate_multiplier);
  REQUIRE(back.changes[0].row_overrides.size() == 1);
  CHECK(back.changes[0].row_overrides[0].first == State::kettle);
  CHECK(back.changes[0].row_overrides[0].second == fixtures::shifted_kettle_row());
}

TEST_CASE("malformed profile JSON is a configuration error") {
  std::istringstream bad("{\"household_id\": 5}");
  CHECK_THROWS_AS(load_profile_json(bad), ConfigError);
}
