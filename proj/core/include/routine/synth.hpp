#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "routine/chain.hpp"
#include "routine/detect.hpp"
#include "routine/ingest.hpp"
#include "routine/time.hpp"
#include "routine/windows.hpp"

namespace routine {

struct SlotModel {
  double rate = 0.0;  // expected state events per hour
  TransitionMatrix matrix{};
};

struct HouseholdProfile {
  std::string household_id;
  std::string timezone = "UTC";
  std::uint64_t seed = 0;
  std::array<SlotModel, 24> slots{};
};

// One injected modification: row replacements and/or a rate multiplier,
// active from onset (inclusive) to end (exclusive; absent = permanent).
struct ChangeEvent {
  Date onset = 0;
  std::optional<Date> end;
  std::vector<std::pair<State, std::array<double, kNumStates>>> row_overrides;
  double rate_multiplier = 1.0;
};

struct ChangeScenario {
  Archetype archetype = Archetype::sustained;
  std::vector<ChangeEvent> changes;
};

// Seeded day-by-day simulation: per hour slot, a Poisson event count at the
// slot rate, then a walk of the slot's chain emitted as sensor events (fridge
// usage becomes an opened/closed pair 20 s apart). Deterministic per seed;
// pre-onset output is identical with and without a scenario.
ValidatedEventLog generate(const HouseholdProfile& profile, Date start, Date end,
                           const ChangeScenario* scenario = nullptr);

// Naive re-derivation of the dissimilarity series straight from a raw event
// log: no incremental structures and no shared code with sliding_scan beyond
// the distance formula. Desk-scale inputs only.
DissimilaritySeries oracle_scan(const ValidatedEventLog& log, const WindowConfig& config,
                                Duration max_open_duration, Duration tz_offset, TimePoint t0,
                                TimePoint t1);

HouseholdProfile load_profile_json(std::istream& in);        // throws ConfigError
ChangeScenario load_scenario_json(std::istream& in);         // throws ConfigError
void write_profile_json(std::ostream& out, const HouseholdProfile& profile);
void write_scenario_json(std::ostream& out, const ChangeScenario& scenario);

}  // namespace routine
