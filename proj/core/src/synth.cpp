#include "routine/synth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

#include <json.hpp>

#include "routine/errors.hpp"

namespace routine {

namespace {

constexpr Duration kFridgePairGap = 20;   // seconds between emitted open and close
constexpr int kMinEventSpacing = 30;      // seconds between events within a slot
constexpr int kMaxEventsPerSlot = 3600 / kMinEventSpacing - 2;

SlotModel effective_model(const HouseholdProfile& profile, const ChangeScenario* scenario,
                          Date date, int slot) {
  SlotModel model = profile.slots[slot];
  if (!scenario) return model;
  for (const auto& change : scenario->changes) {
    if (date < change.onset) continue;
    if (change.end && date >= *change.end) continue;
    model.rate *= change.rate_multiplier;
    for (const auto& [state, row] : change.row_overrides) {
      model.matrix.p[static_cast<int>(state)] = row;
    }
  }
  return model;
}

State next_state(State current, const TransitionMatrix& m, std::mt19937_64& rng) {
  const auto& row = m.p[static_cast<int>(current)];
  double total = 0.0;
  for (double p : row) total += p;
  if (total <= 0.0) {
    // No outgoing probability mass: pick uniformly, avoiding kitchen->kitchen.
    std::uniform_int_distribution<int> pick(0, kNumStates - 1);
    while (true) {
      const int s = pick(rng);
      if (!(current == State::kitchen && s == static_cast<int>(State::kitchen))) {
        return static_cast<State>(s);
      }
    }
  }
  std::uniform_real_distribution<double> u(0.0, total);
  double x = u(rng);
  for (int c = 0; c < kNumStates; ++c) {
    x -= row[c];
    if (x <= 0.0) return static_cast<State>(c);
  }
  return State::oven;
}

void emit_state_event(ValidatedEventLog& log, State state, TimePoint ts) {
  switch (state) {
    case State::kitchen:
      log.events.push_back({log.household_id, ts, Sensor::kitchen_motion, EventValue::motion_fired});
      break;
    case State::kettle:
      log.events.push_back({log.household_id, ts, Sensor::kettle_plug, EventValue::plug_used});
      break;
    case State::fridge:
      log.events.push_back({log.household_id, ts, Sensor::fridge_door, EventValue::door_opened});
      log.events.push_back(
          {log.household_id, ts + kFridgePairGap, Sensor::fridge_door, EventValue::door_closed});
      break;
    case State::oven:
      log.events.push_back({log.household_id, ts, Sensor::oven_plug, EventValue::plug_used});
      break;
  }
}

}  // namespace

ValidatedEventLog generate(const HouseholdProfile& profile, Date start, Date end,
                           const ChangeScenario* scenario) {
  if (end <= start) throw ConfigError("generate: range must cover at least 1 day");
  if (scenario) {
    for (const auto& change : scenario->changes) {
      if (change.onset < start || change.onset >= end) {
        throw ConfigError("scenario onset " + format_date(change.onset) +
                          " outside the simulated range");
      }
      if (change.end && *change.end <= change.onset) {
        throw ConfigError("scenario end must fall after its onset");
      }
    }
  }
  const auto offset = parse_utc_offset(profile.timezone);
  if (!offset) throw ConfigError("profile timezone '" + profile.timezone + "' not recognized");

  ValidatedEventLog log;
  log.household_id = profile.household_id;
  std::mt19937_64 rng(profile.seed);
  State state = State::kitchen;
  bool have_state = false;

  for (Date d = start; d < end; ++d) {
    for (int slot = 0; slot < 24; ++slot) {
      const SlotModel model = effective_model(profile, scenario, d, slot);
      if (model.rate <= 0.0) continue;
      std::poisson_distribution<int> count(model.rate);
      int n = count(rng);
      if (n <= 0) continue;
      n = std::min(n, kMaxEventsPerSlot);

      // Distinct offsets with a minimum spacing; keeps fridge pairs adjacent
      // and generated logs free of duplicate triples.
      std::vector<int> offsets(n);
      std::uniform_int_distribution<int> draw(0, 3600 - kMinEventSpacing * n - 1);
      for (int i = 0; i < n; ++i) offsets[i] = draw(rng);
      std::sort(offsets.begin(), offsets.end());
      for (int i = 0; i < n; ++i) offsets[i] += kMinEventSpacing * i;

      const TimePoint slot_start_local = midnight(d) + slot * kSecondsPerHour;
      for (int i = 0; i < n; ++i) {
        if (!have_state) {
          std::uniform_int_distribution<int> pick(0, kNumStates - 1);
          state = static_cast<State>(pick(rng));
          have_state = true;
        } else {
          state = next_state(state, model.matrix, rng);
        }
        emit_state_event(log, state, slot_start_local + offsets[i] - *offset);
      }
    }
  }
  std::stable_sort(log.events.begin(), log.events.end(), event_before);
  return log;
}

// ---------------------------------------------------------------------------
// Brute-force oracle. Everything below re-derives the series from first
// principles with plain loops so it can stand as an independent check.
// ---------------------------------------------------------------------------

namespace {

struct OracleStateEvent {
  TimePoint ts;  // local time
  int state;
};

std::vector<OracleStateEvent> oracle_states(const ValidatedEventLog& log,
                                            Duration max_open_duration, Duration tz_offset) {
  // Fridge pairing by linear scan.
  std::vector<std::pair<TimePoint, int>> raw;  // (utc ts, state index)
  bool pending_open = false;
  TimePoint open_ts = 0;
  for (const auto& e : log.events) {
    if (e.sensor == Sensor::fridge_door) {
      if (e.value == EventValue::door_opened) {
        pending_open = true;
        open_ts = e.timestamp;
      } else if (pending_open) {
        if (e.timestamp - open_ts <= max_open_duration) raw.push_back({open_ts, 2});
        pending_open = false;
      }
      continue;
    }
    int state;
    if (e.sensor == Sensor::kitchen_motion) {
      state = 0;
    } else if (e.sensor == Sensor::kettle_plug) {
      state = 1;
    } else {
      state = 3;  // oven, toaster, microwave
    }
    raw.push_back({e.timestamp, state});
  }
  std::sort(raw.begin(), raw.end());

  std::vector<OracleStateEvent> states;
  for (const auto& [ts, state] : raw) {
    if (state == 0 && !states.empty() && states.back().state == 0) continue;
    states.push_back({ts + tz_offset, state});
  }
  return states;
}

}  // namespace

DissimilaritySeries oracle_scan(const ValidatedEventLog& log, const WindowConfig& config,
                                Duration max_open_duration, Duration tz_offset, TimePoint t0,
                                TimePoint t1) {
  const auto states = oracle_states(log, max_open_duration, tz_offset);
  const Duration warmup = config.baseline_len + config.current_len;
  if (t1 - t0 < warmup) throw RangeError("oracle scan range shorter than baseline + current");
  const int slots = static_cast<int>(kSecondsPerDay / config.resample);

  // Counts for one clock slot over one window, tallied by scanning every
  // event for every bucket occurrence.
  const auto tally = [&](TimePoint win_start, TimePoint win_end, int slot, long long cell[4][4],
                         long long& n_events) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) cell[r][c] = 0;
    }
    n_events = 0;
    for (TimePoint day = midnight(date_of(win_start)); day < win_end; day += kSecondsPerDay) {
      const TimePoint lo = std::max(day + slot * config.resample, win_start);
      const TimePoint hi = std::min(day + slot * config.resample + config.resample, win_end);
      if (lo >= hi) continue;
      for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].ts < lo || states[i].ts >= hi) continue;
        ++n_events;
        if (i + 1 < states.size() && states[i + 1].ts >= lo && states[i + 1].ts < hi) {
          ++cell[states[i].state][states[i + 1].state];
        }
      }
    }
  };

  const auto probabilities = [](const long long cell[4][4], double p[4][4]) {
    for (int r = 0; r < 4; ++r) {
      long long row_sum = 0;
      for (int c = 0; c < 4; ++c) row_sum += cell[r][c];
      for (int c = 0; c < 4; ++c) {
        p[r][c] = row_sum == 0 ? 0.0 : static_cast<double>(cell[r][c]) / static_cast<double>(row_sum);
      }
    }
  };

  DissimilaritySeries series;
  series.household_id = log.household_id;
  for (TimePoint t = t0 + warmup; t <= t1; t += config.step) {
    double score[kNumPeriods] = {0, 0, 0, 0};
    long long cur_events[kNumPeriods] = {0, 0, 0, 0};
    long long base_events[kNumPeriods] = {0, 0, 0, 0};
    for (int slot = 0; slot < slots; ++slot) {
      long long cur_cell[4][4], base_cell[4][4];
      long long cur_n, base_n;
      tally(t - config.current_len, t, slot, cur_cell, cur_n);
      tally(t - config.current_len - config.baseline_len, t - config.current_len, slot, base_cell,
            base_n);
      double cur_p[4][4], base_p[4][4];
      probabilities(cur_cell, cur_p);
      probabilities(base_cell, base_p);
      double sum_sq = 0.0;
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          const double d = cur_p[r][c] - base_p[r][c];
          sum_sq += d * d;
        }
      }
      const double dist = std::min(config.score_cap, std::sqrt(sum_sq));
      const int hour = static_cast<int>((slot * config.resample) / kSecondsPerHour);
      const int period = (hour / 6) % 4;
      score[period] += dist;
      cur_events[period] += cur_n;
      base_events[period] += base_n;
    }
    for (int p = 0; p < kNumPeriods; ++p) {
      series.points.push_back({date_of(t), static_cast<PeriodOfDay>(p), score[p], cur_events[p],
                               base_events[p]});
    }
  }
  return series;
}

// ---------------------------------------------------------------------------
// JSON profile/scenario formats.
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

TransitionMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw ConfigError("profile: matrix must be 4x4");
  TransitionMatrix m;
  for (int r = 0; r < kNumStates; ++r) {
    if (!j[r].is_array() || j[r].size() != 4) throw ConfigError("profile: matrix must be 4x4");
    for (int c = 0; c < kNumStates; ++c) m.p[r][c] = j[r][c].get<double>();
  }
  if (!is_valid_transition_matrix(m)) {
    throw ConfigError("profile: matrix rows must sum to 1 (or 0) with kitchen->kitchen zero");
  }
  return m;
}

json matrix_to_json(const TransitionMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < kNumStates; ++r) {
    json row = json::array();
    for (int c = 0; c < kNumStates; ++c) row.push_back(m.p[r][c]);
    rows.push_back(row);
  }
  return rows;
}

Date date_from_json(const json& j, const char* what) {
  const auto d = parse_date(j.get<std::string>());
  if (!d) throw ConfigError(std::string("scenario: unparseable ") + what + " date");
  return *d;
}

}  // namespace

HouseholdProfile load_profile_json(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("profile: invalid JSON: ") + e.what());
  }
  try {
    HouseholdProfile profile;
    profile.household_id = j.at("household_id").get<std::string>();
    profile.timezone = j.value("timezone", std::string("UTC"));
    profile.seed = j.value("seed", std::uint64_t{0});
    SlotModel fallback;
    if (j.contains("default")) {
      fallback.rate = j["default"].value("rate", 0.0);
      if (j["default"].contains("matrix")) fallback.matrix = matrix_from_json(j["default"]["matrix"]);
    }
    profile.slots.fill(fallback);
    if (j.contains("slots")) {
      for (const auto& [key, val] : j["slots"].items()) {
        const int slot = std::stoi(key);
        if (slot < 0 || slot > 23) throw ConfigError("profile: slot index out of range: " + key);
        if (val.contains("rate")) profile.slots[slot].rate = val["rate"].get<double>();
        if (val.contains("matrix")) profile.slots[slot].matrix = matrix_from_json(val["matrix"]);
      }
    }
    for (const auto& slot : profile.slots) {
      if (slot.rate < 0) throw ConfigError("profile: slot rates must be >= 0");
    }
    return profile;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
}

ChangeScenario load_scenario_json(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
  }
  try {
    ChangeScenario scenario;
    const auto arch = parse_archetype(j.at("archetype").get<std::string>());
    if (!arch) throw ConfigError("scenario: unknown archetype");
    scenario.archetype = *arch;
    for (const auto& c : j.at("changes")) {
      ChangeEvent change;
      change.onset = date_from_json(c.at("onset"), "onset");
      if (c.contains("end")) change.end = date_from_json(c["end"], "end");
      change.rate_multiplier = c.value("rate_multiplier", 1.0);
      if (c.contains("rows")) {
        for (const auto& [name, row] : c["rows"].items()) {
          const auto state = parse_state(name);
          if (!state) throw ConfigError("scenario: unknown state '" + name + "'");
          if (!row.is_array() || row.size() != 4) throw ConfigError("scenario: row must have 4 entries");
          std::array<double, kNumStates> values{};
          double sum = 0.0;
          for (int c2 = 0; c2 < kNumStates; ++c2) {
            values[c2] = row[c2].get<double>();
            sum += values[c2];
          }
          if (std::abs(sum - 1.0) > 1e-9 || (*state == State::kitchen && values[0] != 0.0)) {
            throw ConfigError("scenario: replacement row for '" + name + "' is not a valid row");
          }
          change.row_overrides.emplace_back(*state, values);
        }
      }
      scenario.changes.push_back(std::move(change));
    }
    return scenario;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

void write_profile_json(std::ostream& out, const HouseholdProfile& profile) {
  json j;
  j["household_id"] = profile.household_id;
  j["timezone"] = profile.timezone;
  j["seed"] = profile.seed;
  json slots;
  for (int s = 0; s < 24; ++s) {
    slots[std::to_string(s)] = {{"rate", profile.slots[s].rate},
                                {"matrix", matrix_to_json(profile.slots[s].matrix)}};
  }
  j["slots"] = std::move(slots);
  out << j.dump(2) << '\n';
}

void write_scenario_json(std::ostream& out, const ChangeScenario& scenario) {
  json j;
  j["archetype"] = std::string(to_string(scenario.archetype));
  json changes = json::array();
  for (const auto& c : scenario.changes) {
    json jc;
    jc["onset"] = format_date(c.onset);
    if (c.end) jc["end"] = format_date(*c.end);
    jc["rate_multiplier"] = c.rate_multiplier;
    json rows;
    for (const auto& [state, row] : c.row_overrides) {
      rows[std::string(to_string(state))] = row;
    }
    if (!rows.is_null()) jc["rows"] = std::move(rows);
    changes.push_back(std::move(jc));
  }
  j["changes"] = std::move(changes);
  out << j.dump(2) << '\n';
}

}  // namespace routine
