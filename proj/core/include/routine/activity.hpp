#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "routine/ingest.hpp"
#include "routine/time.hpp"
#include "routine/windows.hpp"

namespace routine {

// Closed date interval with its timeline label (P1..P7 by default).
struct CovidPeriodDef {
  std::string label;
  Date start = 0;
  Date end = 0;  // inclusive
};

// The seven pandemic periods, 2019-12-01 through 2021-04-12.
std::vector<CovidPeriodDef> default_covid_periods();

std::optional<std::string> assign_covid_period(Date date, std::span<const CovidPeriodDef> periods);

enum class Occupancy { single, multiple };

std::string_view to_string(Occupancy o);
std::optional<Occupancy> parse_occupancy(std::string_view s);

struct ActivityRecord {
  std::string household_id;
  Date date = 0;
  std::optional<PeriodOfDay> period;  // present iff six-hourly granularity
  double value = 0.0;
  Occupancy occupancy = Occupancy::multiple;
};

enum class DailyMeanMode {
  per_sensor_mean,  // sum over sensors of (sensor total / sensor reporting days)
  daily_sum,        // plain per-date sum of counts across sensors
};

struct ActivityOptions {
  DailyMeanMode mode = DailyMeanMode::per_sensor_mean;
  Duration tz_offset = 0;  // local-time bucketing
  Occupancy occupancy = Occupancy::multiple;
};

// One record per non-gap date in the log's span. A sensor's "reporting days"
// are the dates on which it produced at least one event, so a late-installed
// plug does not dilute its mean.
std::vector<ActivityRecord> daily_mean_activity(const ValidatedEventLog& log,
                                                const std::set<Sensor>& sensors,
                                                const ActivityOptions& options = {});

// As daily_mean_activity, bucketed per (date, period of day).
std::vector<ActivityRecord> six_hourly_activity(const ValidatedEventLog& log,
                                                const std::set<Sensor>& sensors,
                                                const ActivityOptions& options = {});

// In-place z-scoring within each time-of-day stratum pooled across households
// and dates; records without a period form their own stratum. Sample (n-1)
// standard deviation. Throws CalibrationError on a degenerate stratum.
void standardize_by_time_of_day(std::vector<ActivityRecord>& records);

// household_id,date,period_label,period_of_day,occupancy,value — sorted by
// household, date, then period order.
void export_lme_table(std::ostream& out, std::span<const ActivityRecord> records,
                      std::span<const CovidPeriodDef> periods);

}  // namespace routine
