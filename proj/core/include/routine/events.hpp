#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <tuple>

#include "routine/time.hpp"

namespace routine {

enum class Sensor {
  kitchen_motion,
  fridge_door,
  kettle_plug,
  oven_plug,
  toaster_plug,
  microwave_plug,
};

enum class EventValue {
  motion_fired,
  door_opened,
  door_closed,
  plug_used,
};

std::string_view to_string(Sensor s);
std::string_view to_string(EventValue v);
std::optional<Sensor> parse_sensor(std::string_view s);
std::optional<EventValue> parse_event_value(std::string_view s);

inline bool is_plug(Sensor s) {
  return s == Sensor::kettle_plug || s == Sensor::oven_plug || s == Sensor::toaster_plug ||
         s == Sensor::microwave_plug;
}

// door_opened/door_closed only with fridge_door; motion_fired only with
// kitchen_motion; plug_used only with plug sensors.
inline bool consistent_pair(Sensor s, EventValue v) {
  switch (v) {
    case EventValue::motion_fired:
      return s == Sensor::kitchen_motion;
    case EventValue::door_opened:
    case EventValue::door_closed:
      return s == Sensor::fridge_door;
    case EventValue::plug_used:
      return is_plug(s);
  }
  return false;
}

struct SensorEvent {
  std::string household_id;
  TimePoint timestamp = 0;
  Sensor sensor = Sensor::kitchen_motion;
  EventValue value = EventValue::motion_fired;

  friend bool operator==(const SensorEvent&, const SensorEvent&) = default;
};

// Canonical ordering: timestamp, then sensor label lexicographic, then value
// label. Input order breaks the remaining ties (stable sort).
inline bool event_before(const SensorEvent& a, const SensorEvent& b) {
  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
  if (a.sensor != b.sensor) return to_string(a.sensor) < to_string(b.sensor);
  return false;
}

inline auto event_triple(const SensorEvent& e) {
  return std::tie(e.timestamp, e.sensor, e.value);
}

}  // namespace routine
