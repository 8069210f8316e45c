#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "routine/events.hpp"
#include "routine/time.hpp"

namespace routine {

struct EventFormatConfig {
  // Sub-second timestamps are rejected by default; when set they are
  // truncated to whole seconds instead.
  bool truncate_fractional_seconds = false;
};

struct Reject {
  std::size_t line = 0;  // 1-based line number in the source stream
  std::string reason;

  friend bool operator==(const Reject&, const Reject&) = default;
};

struct ParseResult {
  std::vector<SensorEvent> events;  // in input order
  std::vector<Reject> rejects;
};

// Half-open [start, end).
struct Interval {
  TimePoint start = 0;
  TimePoint end = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ValidatedEventLog {
  std::string household_id;
  std::vector<SensorEvent> events;  // strictly sorted, exact duplicates removed
  std::vector<Interval> gaps;       // household-wide silences >= gap threshold
  std::size_t duplicates_dropped = 0;
};

// Parses the event CSV schema: header `household_id,timestamp,sensor,value`.
// Malformed rows go to rejects; a bad header throws ConfigError naming the
// column.
ParseResult parse_event_log(std::istream& source, const EventFormatConfig& format = {});

// Partitions by household, sorts, drops exact duplicate triples, and records
// whole-household silences of at least gap_threshold. Output is ordered by
// household id.
std::vector<ValidatedEventLog> validate_events(std::vector<SensorEvent> events,
                                               Duration gap_threshold);

struct FridgeCollapseStats {
  std::size_t unmatched_opens = 0;
  std::size_t unmatched_closes = 0;
};

// Replaces each door_opened..door_closed pair (close within max_open_duration)
// with a single fridge usage event at the opening instant, kept as
// (fridge_door, door_opened). Unmatched opens/closes are dropped and counted.
ValidatedEventLog collapse_fridge_events(const ValidatedEventLog& log, Duration max_open_duration,
                                         FridgeCollapseStats* stats = nullptr);

void write_event_csv_header(std::ostream& out);
void write_event_csv(std::ostream& out, std::span<const SensorEvent> events);
void write_rejects_csv(std::ostream& out, std::span<const Reject> rejects);
void write_gaps_csv(std::ostream& out, std::span<const ValidatedEventLog> logs);

}  // namespace routine
