#include "routine/chain.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "routine/errors.hpp"

namespace routine {

std::string_view to_string(State s) {
  switch (s) {
    case State::kitchen: return "kitchen";
    case State::kettle: return "kettle";
    case State::fridge: return "fridge";
    case State::oven: return "oven";
  }
  return "?";
}

std::optional<State> parse_state(std::string_view s) {
  if (s == "kitchen") return State::kitchen;
  if (s == "kettle") return State::kettle;
  if (s == "fridge") return State::fridge;
  if (s == "oven") return State::oven;
  return std::nullopt;
}

StateMappingConfig StateMappingConfig::defaults() {
  StateMappingConfig cfg;
  cfg.mapping = {
      {Sensor::kitchen_motion, State::kitchen}, {Sensor::kettle_plug, State::kettle},
      {Sensor::fridge_door, State::fridge},     {Sensor::oven_plug, State::oven},
      {Sensor::toaster_plug, State::oven},      {Sensor::microwave_plug, State::oven},
  };
  return cfg;
}

StateEventSequence map_to_states(const ValidatedEventLog& log, const StateMappingConfig& mapping) {
  StateEventSequence seq;
  seq.household_id = log.household_id;
  seq.items.reserve(log.events.size());
  for (const auto& e : log.events) {
    if (e.sensor == Sensor::fridge_door && e.value == EventValue::door_closed) continue;
    const auto it = mapping.mapping.find(e.sensor);
    if (it == mapping.mapping.end()) {
      throw ConfigError("no state mapping for sensor '" + std::string(to_string(e.sensor)) + "'");
    }
    const State state = it->second;
    if (state == State::kitchen && !seq.items.empty() &&
        seq.items.back().state == State::kitchen) {
      continue;  // consecutive kitchen items collapse to the first
    }
    seq.items.push_back({e.timestamp, state});
  }
  return seq;
}

TransitionCounts count_transitions(const StateEventSequence& seq, TimePoint start, TimePoint end) {
  TransitionCounts counts;
  const auto& items = seq.items;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const bool inside = items[i].timestamp >= start && items[i].timestamp < end;
    if (!inside) continue;
    ++counts.n_events;
    if (i + 1 < items.size() && items[i + 1].timestamp >= start && items[i + 1].timestamp < end) {
      ++counts.cell[static_cast<int>(items[i].state)][static_cast<int>(items[i + 1].state)];
    }
  }
  return counts;
}

TransitionMatrix normalize(const TransitionCounts& counts) {
  TransitionMatrix m;
  for (int r = 0; r < kNumStates; ++r) {
    std::int64_t row_sum = 0;
    for (int c = 0; c < kNumStates; ++c) row_sum += counts.cell[r][c];
    if (row_sum == 0) continue;
    for (int c = 0; c < kNumStates; ++c) {
      m.p[r][c] = static_cast<double>(counts.cell[r][c]) / static_cast<double>(row_sum);
    }
  }
  return m;
}

TransitionCounts merge_counts(const TransitionCounts& a, const TransitionCounts& b) {
  TransitionCounts out;
  for (int r = 0; r < kNumStates; ++r) {
    for (int c = 0; c < kNumStates; ++c) out.cell[r][c] = a.cell[r][c] + b.cell[r][c];
  }
  out.n_events = a.n_events + b.n_events;
  return out;
}

bool is_valid_transition_matrix(const TransitionMatrix& m, double tol) {
  if (m.p[0][0] != 0.0) return false;
  for (int r = 0; r < kNumStates; ++r) {
    double sum = 0.0;
    for (int c = 0; c < kNumStates; ++c) {
      if (m.p[r][c] < 0.0 || m.p[r][c] > 1.0) return false;
      sum += m.p[r][c];
    }
    if (sum != 0.0 && (sum < 1.0 - tol || sum > 1.0 + tol)) return false;
  }
  return true;
}

void write_matrix_csv(std::ostream& out, const TransitionMatrix& m) {
  out << "from,kitchen,kettle,fridge,oven\n";
  for (int r = 0; r < kNumStates; ++r) {
    out << to_string(static_cast<State>(r));
    for (int c = 0; c < kNumStates; ++c) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", m.p[r][c]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

std::optional<TransitionMatrix> read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  TransitionMatrix m;
  for (int r = 0; r < kNumStates; ++r) {
    if (!std::getline(in, line)) return std::nullopt;
    std::istringstream row(line);
    std::string field;
    if (!std::getline(row, field, ',')) return std::nullopt;
    if (field != to_string(static_cast<State>(r))) return std::nullopt;
    for (int c = 0; c < kNumStates; ++c) {
      if (!std::getline(row, field, ',')) return std::nullopt;
      try {
        m.p[r][c] = std::stod(field);
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
  }
  return m;
}

}  // namespace routine
