#include "routine/activity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "routine/errors.hpp"

namespace routine {

std::vector<CovidPeriodDef> default_covid_periods() {
  const auto d = [](int y, unsigned m, unsigned day) { return days_from_civil(y, m, day); };
  return {
      {"P1", d(2019, 12, 1), d(2020, 1, 30)},
      {"P2", d(2020, 1, 31), d(2020, 3, 23)},
      {"P3", d(2020, 3, 24), d(2020, 6, 1)},
      {"P4", d(2020, 6, 2), d(2020, 11, 5)},
      {"P5", d(2020, 11, 6), d(2020, 12, 2)},
      {"P6", d(2020, 12, 3), d(2021, 1, 6)},
      {"P7", d(2021, 1, 7), d(2021, 4, 12)},
  };
}

std::optional<std::string> assign_covid_period(Date date, std::span<const CovidPeriodDef> periods) {
  for (const auto& p : periods) {
    if (date >= p.start && date <= p.end) return p.label;
  }
  return std::nullopt;
}

std::string_view to_string(Occupancy o) {
  return o == Occupancy::single ? "single" : "multiple";
}

std::optional<Occupancy> parse_occupancy(std::string_view s) {
  if (s == "single") return Occupancy::single;
  if (s == "multiple") return Occupancy::multiple;
  return std::nullopt;
}

namespace {

bool date_in_gap(Date date, const std::vector<Interval>& gaps, Duration tz_offset) {
  const TimePoint lo = midnight(date) - tz_offset;
  const TimePoint hi = lo + kSecondsPerDay;
  for (const auto& g : gaps) {
    if (g.start <= lo && hi <= g.end) return true;
  }
  return false;
}

// Buckets are (date [, period]) in local time, restricted to the wanted
// sensors. Returns counts plus each sensor's set of reporting dates.
struct SensorTallies {
  // sensor -> (date, period index or -1) -> count
  std::map<Sensor, std::map<std::pair<Date, int>, std::int64_t>> counts;
  std::map<Sensor, std::set<Date>> reporting_days;
  Date first = 0, last = 0;
  bool any = false;
};

SensorTallies tally(const ValidatedEventLog& log, const std::set<Sensor>& sensors,
                    Duration tz_offset, bool six_hourly) {
  SensorTallies t;
  for (const auto& e : log.events) {
    if (!sensors.count(e.sensor)) continue;
    const TimePoint local = e.timestamp + tz_offset;
    const Date date = date_of(local);
    const int per = six_hourly ? static_cast<int>(period_of_hour(hour_of_day(local))) : -1;
    ++t.counts[e.sensor][{date, per}];
    t.reporting_days[e.sensor].insert(date);
    if (!t.any) {
      t.first = t.last = date;
      t.any = true;
    } else {
      t.first = std::min(t.first, date);
      t.last = std::max(t.last, date);
    }
  }
  return t;
}

std::vector<ActivityRecord> activity_records(const ValidatedEventLog& log,
                                             const std::set<Sensor>& sensors,
                                             const ActivityOptions& options, bool six_hourly) {
  if (sensors.empty()) throw ConfigError("activity: sensor set must be non-empty");
  const SensorTallies t = tally(log, sensors, options.tz_offset, six_hourly);
  std::vector<ActivityRecord> records;
  if (!t.any) return records;

  const int pers = six_hourly ? kNumPeriods : 1;
  for (Date d = t.first; d <= t.last; ++d) {
    if (date_in_gap(d, log.gaps, options.tz_offset)) continue;
    for (int per = 0; per < pers; ++per) {
      const int per_key = six_hourly ? per : -1;
      double value = 0.0;
      for (const auto& [sensor, buckets] : t.counts) {
        if (options.mode == DailyMeanMode::per_sensor_mean) {
          // Mean count for this bucket-of-day over the sensor's reporting days.
          std::int64_t total = 0;
          for (const auto& [key, n] : buckets) {
            if (key.second == per_key) total += n;
          }
          const auto days = static_cast<double>(t.reporting_days.at(sensor).size());
          value += static_cast<double>(total) / days;
        } else {
          const auto it = buckets.find({d, per_key});
          if (it != buckets.end()) value += static_cast<double>(it->second);
        }
      }
      ActivityRecord rec;
      rec.household_id = log.household_id;
      rec.date = d;
      if (six_hourly) rec.period = static_cast<PeriodOfDay>(per);
      rec.value = value;
      rec.occupancy = options.occupancy;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

}  // namespace

std::vector<ActivityRecord> daily_mean_activity(const ValidatedEventLog& log,
                                                const std::set<Sensor>& sensors,
                                                const ActivityOptions& options) {
  return activity_records(log, sensors, options, /*six_hourly=*/false);
}

std::vector<ActivityRecord> six_hourly_activity(const ValidatedEventLog& log,
                                                const std::set<Sensor>& sensors,
                                                const ActivityOptions& options) {
  return activity_records(log, sensors, options, /*six_hourly=*/true);
}

void standardize_by_time_of_day(std::vector<ActivityRecord>& records) {
  // Stratum key: period index, or -1 for daily records.
  std::map<int, std::vector<ActivityRecord*>> strata;
  for (auto& r : records) {
    strata[r.period ? static_cast<int>(*r.period) : -1].push_back(&r);
  }
  for (auto& [key, members] : strata) {
    const std::string name =
        key < 0 ? "daily" : std::string(to_string(static_cast<PeriodOfDay>(key)));
    if (members.size() < 2) {
      throw CalibrationError("standardization stratum '" + name + "' has fewer than 2 values");
    }
    double mean = 0.0;
    for (const auto* r : members) mean += r->value;
    mean /= static_cast<double>(members.size());
    double ss = 0.0;
    for (const auto* r : members) ss += (r->value - mean) * (r->value - mean);
    const double sd = std::sqrt(ss / static_cast<double>(members.size() - 1));
    if (!(sd > 0.0)) {
      throw CalibrationError("standardization stratum '" + name + "' has zero standard deviation");
    }
    for (auto* r : members) r->value = (r->value - mean) / sd;
  }
}

void export_lme_table(std::ostream& out, std::span<const ActivityRecord> records,
                      std::span<const CovidPeriodDef> periods) {
  std::vector<const ActivityRecord*> sorted;
  sorted.reserve(records.size());
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const ActivityRecord* a, const ActivityRecord* b) {
    if (a->household_id != b->household_id) return a->household_id < b->household_id;
    if (a->date != b->date) return a->date < b->date;
    const int pa = a->period ? static_cast<int>(*a->period) : -1;
    const int pb = b->period ? static_cast<int>(*b->period) : -1;
    return pa < pb;
  });

  out << "household_id,date,period_label,period_of_day,occupancy,value\n";
  for (const auto* r : sorted) {
    const auto label = assign_covid_period(r->date, periods);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", r->value);
    out << r->household_id << ',' << format_date(r->date) << ','
        << (label ? *label : "out_of_range") << ','
        << (r->period ? to_string(*r->period) : "all_day") << ',' << to_string(r->occupancy)
        << ',' << buf << '\n';
  }
}

}  // namespace routine
