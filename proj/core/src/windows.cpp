#include "routine/windows.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "routine/errors.hpp"

namespace routine {

void WindowConfig::validate() const {
  if (step <= 0 || current_len <= 0 || baseline_len <= 0 || resample <= 0) {
    throw ConfigError("window config: step, current, baseline, and resample must all be > 0");
  }
  if (kSecondsPerDay % resample != 0) {
    throw ConfigError("window config: resample must divide 24 hours evenly");
  }
  if (!(score_cap > 0)) throw ConfigError("window config: score_cap must be > 0");
}

std::string_view to_string(PeriodOfDay p) {
  switch (p) {
    case PeriodOfDay::night: return "night";
    case PeriodOfDay::morning: return "morning";
    case PeriodOfDay::afternoon: return "afternoon";
    case PeriodOfDay::evening: return "evening";
  }
  return "?";
}

std::optional<PeriodOfDay> parse_period(std::string_view s) {
  if (s == "night") return PeriodOfDay::night;
  if (s == "morning") return PeriodOfDay::morning;
  if (s == "afternoon") return PeriodOfDay::afternoon;
  if (s == "evening") return PeriodOfDay::evening;
  return std::nullopt;
}

double frobenius_distance(const TransitionMatrix& a, const TransitionMatrix& b, double cap) {
  double sum = 0.0;
  for (int r = 0; r < kNumStates; ++r) {
    for (int c = 0; c < kNumStates; ++c) {
      const double d = a.p[r][c] - b.p[r][c];
      sum += d * d;
    }
  }
  return std::min(cap, std::sqrt(sum));
}

namespace {

// Merged counts for one clock slot across every day the slot occurs in
// [start, end), buckets clipped to the window.
TransitionCounts slot_counts(const StateEventSequence& seq, TimePoint start, TimePoint end,
                             Duration resample, int slot) {
  TransitionCounts merged;
  const Date first_day = date_of(start);
  const Date last_day = date_of(end - 1);
  for (Date d = first_day; d <= last_day; ++d) {
    const TimePoint bucket_start = midnight(d) + slot * resample;
    const TimePoint bucket_end = bucket_start + resample;
    const TimePoint lo = std::max(bucket_start, start);
    const TimePoint hi = std::min(bucket_end, end);
    if (lo >= hi) continue;
    merged = merge_counts(merged, count_transitions(seq, lo, hi));
  }
  return merged;
}

}  // namespace

std::vector<TransitionMatrix> window_matrices(const StateEventSequence& seq, TimePoint start,
                                              TimePoint end, Duration resample) {
  const int slots = static_cast<int>(kSecondsPerDay / resample);
  std::vector<TransitionMatrix> out(slots);
  for (int s = 0; s < slots; ++s) out[s] = normalize(slot_counts(seq, start, end, resample, s));
  return out;
}

DissimilaritySeries sliding_scan(const StateEventSequence& seq, const WindowConfig& config,
                                 TimePoint t0, TimePoint t1) {
  config.validate();
  const Duration warmup = config.baseline_len + config.current_len;
  if (t1 - t0 < warmup) {
    throw RangeError("scan range of " + std::to_string((t1 - t0) / kSecondsPerDay) +
                     " days is shorter than baseline + current = " +
                     std::to_string(warmup / kSecondsPerDay) + " days");
  }

  const int slots = config.slots_per_day();
  const Date d0 = date_of(t0);
  const Date d1 = date_of(t1 - 1);

  // Per-(day, slot) counts computed once; window counts are merges over days.
  const int n_days = d1 - d0 + 1;
  std::vector<TransitionCounts> day_slot(static_cast<std::size_t>(n_days) * slots);
  {
    std::size_t item = 0;
    const auto& items = seq.items;
    for (Date d = d0; d <= d1; ++d) {
      for (int s = 0; s < slots; ++s) {
        const TimePoint lo = midnight(d) + s * config.resample;
        const TimePoint hi = lo + config.resample;
        while (item < items.size() && items[item].timestamp < lo) ++item;
        TransitionCounts& counts = day_slot[static_cast<std::size_t>(d - d0) * slots + s];
        for (std::size_t i = item; i < items.size() && items[i].timestamp < hi; ++i) {
          ++counts.n_events;
          if (i + 1 < items.size() && items[i + 1].timestamp < hi) {
            ++counts.cell[static_cast<int>(items[i].state)][static_cast<int>(items[i + 1].state)];
          }
        }
      }
    }
  }

  const auto merge_window = [&](TimePoint start, TimePoint end, int slot) {
    TransitionCounts merged;
    for (Date d = date_of(start); d <= date_of(end - 1); ++d) {
      merged = merge_counts(merged, day_slot[static_cast<std::size_t>(d - d0) * slots + slot]);
    }
    return merged;
  };

  DissimilaritySeries series;
  series.household_id = seq.household_id;
  for (TimePoint t = t0 + warmup; t <= t1; t += config.step) {
    const TimePoint cur_start = t - config.current_len;
    const TimePoint base_start = cur_start - config.baseline_len;
    std::array<double, kNumPeriods> score{};
    std::array<std::int64_t, kNumPeriods> cur_events{};
    std::array<std::int64_t, kNumPeriods> base_events{};
    for (int s = 0; s < slots; ++s) {
      const int hour = static_cast<int>((s * config.resample) / kSecondsPerHour);
      const int period = static_cast<int>(period_of_hour(hour));
      const TransitionCounts cur = merge_window(cur_start, t, s);
      const TransitionCounts base = merge_window(base_start, cur_start, s);
      score[period] += frobenius_distance(normalize(cur), normalize(base), config.score_cap);
      cur_events[period] += cur.n_events;
      base_events[period] += base.n_events;
    }
    for (int p = 0; p < kNumPeriods; ++p) {
      series.points.push_back({date_of(t), static_cast<PeriodOfDay>(p), score[p], cur_events[p],
                               base_events[p]});
    }
  }
  return series;
}

void export_series_csv(std::ostream& out, const DissimilaritySeries& series) {
  out << "household_id,step_date,period,score,current_events,baseline_events\n";
  for (const auto& p : series.points) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", p.score);
    out << series.household_id << ',' << format_date(p.step_date) << ',' << to_string(p.period)
        << ',' << buf << ',' << p.current_events << ',' << p.baseline_events << '\n';
  }
}

std::optional<DissimilaritySeries> parse_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "household_id,step_date,period,score,current_events,baseline_events") {
    return std::nullopt;
  }
  DissimilaritySeries series;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string id, date_s, period_s, score_s, cur_s, base_s;
    if (!std::getline(row, id, ',') || !std::getline(row, date_s, ',') ||
        !std::getline(row, period_s, ',') || !std::getline(row, score_s, ',') ||
        !std::getline(row, cur_s, ',') || !std::getline(row, base_s)) {
      return std::nullopt;
    }
    const auto date = parse_date(date_s);
    const auto period = parse_period(period_s);
    if (!date || !period) return std::nullopt;
    SeriesPoint point;
    point.step_date = *date;
    point.period = *period;
    try {
      point.score = std::stod(score_s);
      point.current_events = std::stoll(cur_s);
      point.baseline_events = std::stoll(base_s);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (series.points.empty() && series.household_id.empty()) series.household_id = id;
    series.points.push_back(point);
  }
  return series;
}

}  // namespace routine
