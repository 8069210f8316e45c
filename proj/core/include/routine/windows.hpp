#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "routine/chain.hpp"
#include "routine/time.hpp"

namespace routine {

struct WindowConfig {
  Duration step = kSecondsPerDay;
  Duration current_len = 7 * kSecondsPerDay;
  Duration baseline_len = 21 * kSecondsPerDay;
  Duration resample = kSecondsPerHour;  // must divide 24h evenly
  double score_cap = 4.0;               // per-matrix distance cap
  int min_support = 10;                 // low-support flag threshold

  void validate() const;  // throws ConfigError
  int slots_per_day() const { return static_cast<int>(kSecondsPerDay / resample); }
};

// Night first: the export and calibration order is night < morning <
// afternoon < evening.
enum class PeriodOfDay : int { night = 0, morning = 1, afternoon = 2, evening = 3 };
inline constexpr int kNumPeriods = 4;

std::string_view to_string(PeriodOfDay p);
std::optional<PeriodOfDay> parse_period(std::string_view s);

inline PeriodOfDay period_of_hour(int hour) { return static_cast<PeriodOfDay>((hour / 6) % 4); }

struct SeriesPoint {
  Date step_date = 0;
  PeriodOfDay period = PeriodOfDay::night;
  double score = 0.0;
  std::int64_t current_events = 0;
  std::int64_t baseline_events = 0;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

struct DissimilaritySeries {
  std::string household_id;
  std::vector<SeriesPoint> points;  // sorted by step_date, then period order
};

inline bool low_support(const SeriesPoint& p, int min_support) {
  return p.current_events < min_support || p.baseline_events < min_support;
}

// min(cap, sqrt(sum of squared elementwise differences)).
double frobenius_distance(const TransitionMatrix& a, const TransitionMatrix& b, double cap);

// One matrix per clock slot: counts merged over every occurrence of the slot
// inside [start, end), then normalized. Buckets are clipped to the window.
std::vector<TransitionMatrix> window_matrices(const StateEventSequence& seq, TimePoint start,
                                              TimePoint end, Duration resample);

// Timestamps in seq and [t0, t1) are local time; t0/t1 midnight-aligned.
// Emits one point per (step date, period) starting at t0 + baseline + current.
// Throws RangeError if the range is shorter than baseline + current.
DissimilaritySeries sliding_scan(const StateEventSequence& seq, const WindowConfig& config,
                                 TimePoint t0, TimePoint t1);

// Long-format CSV: household_id,step_date,period,score,current_events,baseline_events.
void export_series_csv(std::ostream& out, const DissimilaritySeries& series);
std::optional<DissimilaritySeries> parse_series_csv(std::istream& in);

}  // namespace routine
