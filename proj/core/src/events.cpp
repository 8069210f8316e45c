#include "routine/events.hpp"

namespace routine {

std::string_view to_string(Sensor s) {
  switch (s) {
    case Sensor::kitchen_motion: return "kitchen_motion";
    case Sensor::fridge_door: return "fridge_door";
    case Sensor::kettle_plug: return "kettle_plug";
    case Sensor::oven_plug: return "oven_plug";
    case Sensor::toaster_plug: return "toaster_plug";
    case Sensor::microwave_plug: return "microwave_plug";
  }
  return "?";
}

std::string_view to_string(EventValue v) {
  switch (v) {
    case EventValue::motion_fired: return "motion_fired";
    case EventValue::door_opened: return "door_opened";
    case EventValue::door_closed: return "door_closed";
    case EventValue::plug_used: return "plug_used";
  }
  return "?";
}

std::optional<Sensor> parse_sensor(std::string_view s) {
  if (s == "kitchen_motion") return Sensor::kitchen_motion;
  if (s == "fridge_door") return Sensor::fridge_door;
  if (s == "kettle_plug") return Sensor::kettle_plug;
  if (s == "oven_plug") return Sensor::oven_plug;
  if (s == "toaster_plug") return Sensor::toaster_plug;
  if (s == "microwave_plug") return Sensor::microwave_plug;
  return std::nullopt;
}

std::optional<EventValue> parse_event_value(std::string_view s) {
  if (s == "motion_fired") return EventValue::motion_fired;
  if (s == "door_opened") return EventValue::door_opened;
  if (s == "door_closed") return EventValue::door_closed;
  if (s == "plug_used") return EventValue::plug_used;
  return std::nullopt;
}

}  // namespace routine
