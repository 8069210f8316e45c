#include "routine/ingest.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

#include "routine/errors.hpp"

namespace routine {

namespace {

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

constexpr const char* kHeaderColumns[4] = {"household_id", "timestamp", "sensor", "value"};

}  // namespace

ParseResult parse_event_log(std::istream& source, const EventFormatConfig& format) {
  std::string line;
  if (!std::getline(source, line)) {
    throw ConfigError("event CSV: missing header line (expected column 'household_id')");
  }
  strip_cr(line);
  const auto header = split_csv_line(line);
  for (std::size_t i = 0; i < 4; ++i) {
    if (i >= header.size() || header[i] != kHeaderColumns[i]) {
      throw ConfigError(std::string("event CSV: missing or misnamed column '") +
                        kHeaderColumns[i] + "'");
    }
  }
  if (header.size() > 4) {
    throw ConfigError("event CSV: unexpected extra column '" + std::string(header[4]) + "'");
  }

  ParseResult result;
  std::size_t line_no = 1;
  while (std::getline(source, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) {
      result.rejects.push_back(
          {line_no, "expected 4 fields but got " + std::to_string(fields.size())});
      continue;
    }
    if (fields[0].empty()) {
      result.rejects.push_back({line_no, "empty household_id"});
      continue;
    }
    const auto ts = parse_rfc3339_utc(fields[1], format.truncate_fractional_seconds);
    if (!ts) {
      result.rejects.push_back({line_no, "unparseable timestamp '" + std::string(fields[1]) + "'"});
      continue;
    }
    const auto sensor = parse_sensor(fields[2]);
    if (!sensor) {
      result.rejects.push_back({line_no, "unknown sensor label '" + std::string(fields[2]) + "'"});
      continue;
    }
    const auto value = parse_event_value(fields[3]);
    if (!value) {
      result.rejects.push_back({line_no, "unknown value label '" + std::string(fields[3]) + "'"});
      continue;
    }
    if (!consistent_pair(*sensor, *value)) {
      result.rejects.push_back({line_no, "inconsistent sensor/value pair '" +
                                             std::string(fields[2]) + "/" + std::string(fields[3]) +
                                             "'"});
      continue;
    }
    result.events.push_back({std::string(fields[0]), *ts, *sensor, *value});
  }
  return result;
}

std::vector<ValidatedEventLog> validate_events(std::vector<SensorEvent> events,
                                               Duration gap_threshold) {
  std::map<std::string, std::vector<SensorEvent>> by_household;
  for (auto& e : events) by_household[e.household_id].push_back(std::move(e));

  std::vector<ValidatedEventLog> logs;
  logs.reserve(by_household.size());
  for (auto& [id, evs] : by_household) {
    ValidatedEventLog log;
    log.household_id = id;
    std::stable_sort(evs.begin(), evs.end(), event_before);
    for (auto& e : evs) {
      if (!log.events.empty() && event_triple(log.events.back()) == event_triple(e)) {
        ++log.duplicates_dropped;
        continue;
      }
      log.events.push_back(std::move(e));
    }
    for (std::size_t i = 1; i < log.events.size(); ++i) {
      const TimePoint prev = log.events[i - 1].timestamp;
      const TimePoint next = log.events[i].timestamp;
      if (next - prev >= gap_threshold) log.gaps.push_back({prev, next});
    }
    logs.push_back(std::move(log));
  }
  return logs;
}

ValidatedEventLog collapse_fridge_events(const ValidatedEventLog& log, Duration max_open_duration,
                                         FridgeCollapseStats* stats) {
  ValidatedEventLog out;
  out.household_id = log.household_id;
  out.gaps = log.gaps;
  out.duplicates_dropped = log.duplicates_dropped;
  FridgeCollapseStats local;

  bool have_open = false;
  TimePoint open_ts = 0;
  for (const auto& e : log.events) {
    if (e.sensor != Sensor::fridge_door) {
      out.events.push_back(e);
      continue;
    }
    if (e.value == EventValue::door_opened) {
      if (have_open) ++local.unmatched_opens;
      have_open = true;
      open_ts = e.timestamp;
    } else {  // door_closed
      if (have_open && e.timestamp - open_ts <= max_open_duration) {
        out.events.push_back({log.household_id, open_ts, Sensor::fridge_door,
                              EventValue::door_opened});
        have_open = false;
      } else {
        if (have_open) ++local.unmatched_opens;
        have_open = false;
        ++local.unmatched_closes;
      }
    }
  }
  if (have_open) ++local.unmatched_opens;

  // Collapsed usage events keep the opening timestamp, so order can only be
  // disturbed relative to events the close used to precede; re-sort to keep
  // the invariant crisp.
  std::stable_sort(out.events.begin(), out.events.end(), event_before);
  if (stats) *stats = local;
  return out;
}

void write_event_csv_header(std::ostream& out) {
  out << "household_id,timestamp,sensor,value\n";
}

void write_event_csv(std::ostream& out, std::span<const SensorEvent> events) {
  write_event_csv_header(out);
  for (const auto& e : events) {
    out << e.household_id << ',' << format_rfc3339_utc(e.timestamp) << ',' << to_string(e.sensor)
        << ',' << to_string(e.value) << '\n';
  }
}

void write_rejects_csv(std::ostream& out, std::span<const Reject> rejects) {
  out << "line,reason\n";
  for (const auto& r : rejects) out << r.line << ',' << r.reason << '\n';
}

void write_gaps_csv(std::ostream& out, std::span<const ValidatedEventLog> logs) {
  out << "household_id,start,end\n";
  for (const auto& log : logs) {
    for (const auto& g : log.gaps) {
      out << log.household_id << ',' << format_rfc3339_utc(g.start) << ','
          << format_rfc3339_utc(g.end) << '\n';
    }
  }
}

}  // namespace routine
