#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "routine/time.hpp"
#include "routine/windows.hpp"

namespace routine {

struct DetectConfig {
  double k = 3.0;                 // threshold multiplier
  double spread_epsilon = 0.1;    // stand-in spread when MAD is 0
  // MAD multiplier. 1.4826 is the normal-consistency factor; the default adds
  // headroom for the right-skewed score distribution so k = 3 stays quiet on
  // stationary input.
  double mad_scale = 1.75;
  int min_support = 10;           // points below this are excluded from calibration
  int min_calibration_steps = 28;
  int days_current = 7;           // scan window lengths, in days, for classification
  int days_baseline = 21;
  double sustained_settle_ratio = 1.25;  // post-alert plateau vs pre-alert center
};

struct PeriodThreshold {
  double center = 0.0;     // median score over the calibration range
  double spread = 0.0;     // scaled median absolute deviation
  double threshold = 0.0;  // center + k * spread (or k * epsilon when spread is 0)
};

struct ThresholdProfile {
  std::string household_id;
  std::array<PeriodThreshold, kNumPeriods> periods;
  Date calibration_start = 0;
  Date calibration_end = 0;  // exclusive
};

enum class Archetype { episodic, sustained, cumulative, unclassified };

std::string_view to_string(Archetype a);
std::optional<Archetype> parse_archetype(std::string_view s);

struct Alert {
  std::string household_id;
  PeriodOfDay period = PeriodOfDay::night;
  Date onset = 0;
  Date last_day = 0;       // last over-threshold step date in the run
  int duration_days = 0;   // step dates over threshold within the run
  double peak = 0.0;
  Archetype archetype = Archetype::unclassified;
  double threshold = 0.0;
};

// Robust per-period center/spread over [start, end); low-support points are
// excluded. Throws CalibrationError when fewer than min_calibration_steps
// step dates fall in the range.
ThresholdProfile calibrate(const DissimilaritySeries& series, Date start, Date end,
                           const DetectConfig& config);

// Maximal runs of step dates with score > threshold become alerts; runs
// separated by a single sub-threshold day merge. Only step dates at or after
// the profile's calibration end are scored. Alerts come back classified.
std::vector<Alert> flag(const DissimilaritySeries& series, const ThresholdProfile& profile,
                        const DetectConfig& config);

// Archetype rules, applied to alerts produced by flag:
//   cumulative - part of a chain of >= 3 alerts in one period, each onset
//                within days_baseline of the previous alert's end;
//   episodic   - over threshold for <= days_current step dates and the score
//                returned below threshold before the series ended;
//   sustained  - longer exceedance that is either still in force when the
//                series ends, or decays after its peak while the scores
//                following the alert settle above
//                sustained_settle_ratio x the pre-alert center.
void classify_alerts(std::vector<Alert>& alerts, const DissimilaritySeries& series,
                     const ThresholdProfile& profile, const DetectConfig& config);

// household_id,period,onset,duration_days,peak,archetype,threshold
void write_alerts_csv(std::ostream& out, const std::vector<Alert>& alerts);

}  // namespace routine
