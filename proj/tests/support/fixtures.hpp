#pragma once

// Shared synthetic fixtures for the unit and acceptance suites.

#include <array>
#include <random>
#include <string>
#include <vector>

#include "routine/chain.hpp"
#include "routine/events.hpp"
#include "routine/synth.hpp"

namespace fixtures {

inline routine::TransitionMatrix base_matrix() {
  routine::TransitionMatrix m;
  m.p = {{
      {0.0, 0.5, 0.3, 0.2},  // kitchen
      {0.6, 0.1, 0.2, 0.1},  // kettle
      {0.5, 0.2, 0.2, 0.1},  // fridge
      {0.4, 0.3, 0.2, 0.1},  // oven
  }};
  return m;
}

// Total-variation 0.5 away from base_matrix()'s kettle row.
inline std::array<double, 4> shifted_kettle_row() { return {0.1, 0.1, 0.2, 0.6}; }

// Diurnal profile: quiet nights, busy daytime. Daily event volume scales
// with rate_day; rate_day in [1.6, 4.0] lands at roughly 30-80 events/day.
inline routine::HouseholdProfile diurnal_profile(const std::string& id, std::uint64_t seed,
                                                 double rate_day = 3.0) {
  routine::HouseholdProfile profile;
  profile.household_id = id;
  profile.seed = seed;
  for (int slot = 0; slot < 24; ++slot) {
    profile.slots[slot].rate = (slot < 6) ? rate_day / 4.0 : rate_day;
    profile.slots[slot].matrix = base_matrix();
  }
  return profile;
}

// Uniformly random valid transition matrix (kitchen->kitchen zero, rows
// normalized).
inline routine::TransitionMatrix random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  routine::TransitionMatrix m;
  for (int r = 0; r < routine::kNumStates; ++r) {
    double sum = 0.0;
    for (int c = 0; c < routine::kNumStates; ++c) {
      if (r == 0 && c == 0) continue;
      m.p[r][c] = u(rng);
      sum += m.p[r][c];
    }
    for (int c = 0; c < routine::kNumStates; ++c) m.p[r][c] /= sum;
  }
  return m;
}

// Random raw sensor events for ingest/chain property tests; may contain
// duplicates and out-of-order rows on purpose.
inline std::vector<routine::SensorEvent> random_events(std::mt19937_64& rng, std::size_t count,
                                                       const std::string& household = "h001",
                                                       routine::TimePoint span = 7 * 86400) {
  using namespace routine;
  static constexpr Sensor kSensors[] = {Sensor::kitchen_motion, Sensor::fridge_door,
                                        Sensor::kettle_plug,    Sensor::oven_plug,
                                        Sensor::toaster_plug,   Sensor::microwave_plug};
  std::uniform_int_distribution<TimePoint> ts(0, span - 1);
  std::uniform_int_distribution<int> which(0, 5);
  std::uniform_int_distribution<int> door(0, 1);
  std::vector<SensorEvent> events;
  events.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Sensor sensor = kSensors[which(rng)];
    EventValue value = EventValue::plug_used;
    if (sensor == Sensor::kitchen_motion) {
      value = EventValue::motion_fired;
    } else if (sensor == Sensor::fridge_door) {
      value = door(rng) ? EventValue::door_opened : EventValue::door_closed;
    }
    events.push_back({household, ts(rng), sensor, value});
  }
  return events;
}

}  // namespace fixtures
