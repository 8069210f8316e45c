#include "routine/detect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "routine/errors.hpp"

namespace routine {

std::string_view to_string(Archetype a) {
  switch (a) {
    case Archetype::episodic: return "episodic";
    case Archetype::sustained: return "sustained";
    case Archetype::cumulative: return "cumulative";
    case Archetype::unclassified: return "unclassified";
  }
  return "?";
}

std::optional<Archetype> parse_archetype(std::string_view s) {
  if (s == "episodic") return Archetype::episodic;
  if (s == "sustained") return Archetype::sustained;
  if (s == "cumulative") return Archetype::cumulative;
  if (s == "unclassified") return Archetype::unclassified;
  return std::nullopt;
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double med = v[mid];
  if (v.size() % 2 == 0) {
    const auto lower = std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    med = 0.5 * (med + *lower);
  }
  return med;
}

}  // namespace

ThresholdProfile calibrate(const DissimilaritySeries& series, Date start, Date end,
                           const DetectConfig& config) {
  ThresholdProfile profile;
  profile.household_id = series.household_id;
  profile.calibration_start = start;
  profile.calibration_end = end;

  std::set<Date> step_dates;
  std::array<std::vector<double>, kNumPeriods> scores;
  for (const auto& p : series.points) {
    if (p.step_date < start || p.step_date >= end) continue;
    step_dates.insert(p.step_date);
    if (low_support(p, config.min_support)) continue;
    scores[static_cast<int>(p.period)].push_back(p.score);
  }
  if (static_cast<int>(step_dates.size()) < config.min_calibration_steps) {
    throw CalibrationError("calibration range holds " + std::to_string(step_dates.size()) +
                           " step dates; need at least " +
                           std::to_string(config.min_calibration_steps));
  }

  for (int per = 0; per < kNumPeriods; ++per) {
    auto& t = profile.periods[per];
    t.center = median(scores[per]);
    std::vector<double> dev;
    dev.reserve(scores[per].size());
    for (double s : scores[per]) dev.push_back(std::abs(s - t.center));
    t.spread = config.mad_scale * median(std::move(dev));
    t.threshold = t.center + config.k * (t.spread > 0 ? t.spread : config.spread_epsilon);
  }
  return profile;
}

std::vector<Alert> flag(const DissimilaritySeries& series, const ThresholdProfile& profile,
                        const DetectConfig& config) {
  // Per period, step dates in scan order with their scores.
  std::array<std::vector<const SeriesPoint*>, kNumPeriods> per_period;
  for (const auto& p : series.points) {
    if (p.step_date < profile.calibration_end) continue;
    per_period[static_cast<int>(p.period)].push_back(&p);
  }

  std::vector<Alert> alerts;
  for (int per = 0; per < kNumPeriods; ++per) {
    const double threshold = profile.periods[per].threshold;
    const auto& pts = per_period[per];
    Alert current;
    bool open = false;
    std::size_t last_over_idx = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!(pts[i]->score > threshold)) continue;
      // Runs separated by >= 2 sub-threshold step dates are distinct alerts.
      if (open && i - last_over_idx > 2) {
        alerts.push_back(current);
        open = false;
      }
      if (!open) {
        current = Alert{};
        current.household_id = series.household_id;
        current.period = static_cast<PeriodOfDay>(per);
        current.onset = pts[i]->step_date;
        current.threshold = threshold;
        open = true;
      }
      current.last_day = pts[i]->step_date;
      current.duration_days += 1;
      current.peak = std::max(current.peak, pts[i]->score);
      last_over_idx = i;
    }
    if (open) alerts.push_back(current);
  }
  std::sort(alerts.begin(), alerts.end(), [](const Alert& a, const Alert& b) {
    if (a.onset != b.onset) return a.onset < b.onset;
    return static_cast<int>(a.period) < static_cast<int>(b.period);
  });
  classify_alerts(alerts, series, profile, config);
  return alerts;
}

void classify_alerts(std::vector<Alert>& alerts, const DissimilaritySeries& series,
                     const ThresholdProfile& profile, const DetectConfig& config) {
  // Chains of stacked alerts within one period mark cumulative change.
  std::array<std::vector<Alert*>, kNumPeriods> per_period;
  for (auto& a : alerts) per_period[static_cast<int>(a.period)].push_back(&a);
  for (auto& chain_src : per_period) {
    std::size_t chain_start = 0;
    for (std::size_t i = 0; i <= chain_src.size(); ++i) {
      const bool linked = i > 0 && i < chain_src.size() &&
                          chain_src[i]->onset - chain_src[i - 1]->last_day <= config.days_baseline;
      if (i < chain_src.size() && (i == chain_start || linked)) continue;
      if (i - chain_start >= 3) {
        for (std::size_t j = chain_start; j < i; ++j) {
          chain_src[j]->archetype = Archetype::cumulative;
        }
      }
      chain_start = i;
    }
  }

  for (auto& alert : alerts) {
    if (alert.archetype == Archetype::cumulative) continue;
    const int per = static_cast<int>(alert.period);

    Date series_last = alert.last_day;
    std::vector<double> settle_scores;
    for (const auto& p : series.points) {
      if (static_cast<int>(p.period) != per) continue;
      series_last = std::max(series_last, p.step_date);
      if (p.step_date > alert.last_day &&
          p.step_date <= alert.last_day + config.days_baseline) {
        settle_scores.push_back(p.score);
      }
    }
    const bool returned_below = alert.last_day < series_last;

    if (alert.duration_days <= config.days_current && returned_below) {
      alert.archetype = Archetype::episodic;
      continue;
    }
    if (alert.duration_days > config.days_current && !returned_below) {
      // Still over threshold when the series ends: a routine change in force.
      alert.archetype = Archetype::sustained;
      continue;
    }
    if (alert.duration_days > config.days_current && !settle_scores.empty()) {
      const double settle = median(settle_scores);
      const double center = profile.periods[per].center;
      if (settle < alert.peak && settle > config.sustained_settle_ratio * center) {
        alert.archetype = Archetype::sustained;
        continue;
      }
    }
    alert.archetype = Archetype::unclassified;
  }
}

void write_alerts_csv(std::ostream& out, const std::vector<Alert>& alerts) {
  out << "household_id,period,onset,duration_days,peak,archetype,threshold\n";
  for (const auto& a : alerts) {
    char peak[32], thr[32];
    std::snprintf(peak, sizeof(peak), "%.9g", a.peak);
    std::snprintf(thr, sizeof(thr), "%.9g", a.threshold);
    out << a.household_id << ',' << to_string(a.period) << ',' << format_date(a.onset) << ','
        << a.duration_days << ',' << peak << ',' << to_string(a.archetype) << ',' << thr << '\n';
  }
}

}  // namespace routine
