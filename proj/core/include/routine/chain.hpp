#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "routine/ingest.hpp"
#include "routine/time.hpp"

namespace routine {

// Fixed index order for all matrix operations.
enum class State : int { kitchen = 0, kettle = 1, fridge = 2, oven = 3 };
inline constexpr int kNumStates = 4;

std::string_view to_string(State s);
std::optional<State> parse_state(std::string_view s);

struct StateEvent {
  TimePoint timestamp = 0;
  State state = State::kitchen;

  friend bool operator==(const StateEvent&, const StateEvent&) = default;
};

// Strictly time-ordered; never contains two consecutive kitchen items.
struct StateEventSequence {
  std::string household_id;
  std::vector<StateEvent> items;
};

struct StateMappingConfig {
  std::map<Sensor, State> mapping;

  // kitchen_motion -> kitchen, kettle_plug -> kettle, fridge usage -> fridge,
  // oven/toaster/microwave plugs -> oven.
  static StateMappingConfig defaults();
};

// Requires a log that has passed collapse_fridge_events (fridge usage kept as
// door_opened markers; stray door_closed events are ignored). Throws
// ConfigError if a sensor present in the log has no mapping entry.
StateEventSequence map_to_states(const ValidatedEventLog& log, const StateMappingConfig& mapping);

struct TransitionCounts {
  std::array<std::array<std::int64_t, kNumStates>, kNumStates> cell{};
  std::int64_t n_events = 0;  // state events contributing to the bucket

  friend bool operator==(const TransitionCounts&, const TransitionCounts&) = default;
};

struct TransitionMatrix {
  std::array<std::array<double, kNumStates>, kNumStates> p{};

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;
};

// Tallies s_i -> s_{i+1} for consecutive pairs with BOTH items inside
// [start, end); boundary-spanning pairs are dropped.
TransitionCounts count_transitions(const StateEventSequence& seq, TimePoint start, TimePoint end);

// Row-wise division by the row sum; zero-count rows stay all-zero.
TransitionMatrix normalize(const TransitionCounts& counts);

TransitionCounts merge_counts(const TransitionCounts& a, const TransitionCounts& b);

// kitchen->kitchen cell is zero and every row sums to 1 within tol or is
// identically all-zero.
bool is_valid_transition_matrix(const TransitionMatrix& m, double tol = 1e-9);

// 4x4 CSV block with a fixed row/column order header.
void write_matrix_csv(std::ostream& out, const TransitionMatrix& m);
std::optional<TransitionMatrix> read_matrix_csv(std::istream& in);

}  // namespace routine
