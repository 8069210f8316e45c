#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace routine {

// All internal timestamps are whole seconds since the Unix epoch (UTC).
// Analysis code works on "local seconds": utc + fixed offset.
using TimePoint = std::int64_t;
using Duration = std::int64_t;

inline constexpr Duration kSecondsPerMinute = 60;
inline constexpr Duration kSecondsPerHour = 3600;
inline constexpr Duration kSecondsPerDay = 86400;

// Days since 1970-01-01.
using Date = std::int32_t;

Date days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(Date days, int& year, unsigned& month, unsigned& day);

inline Date date_of(TimePoint t) {
  return static_cast<Date>(t >= 0 ? t / kSecondsPerDay
                                  : (t - (kSecondsPerDay - 1)) / kSecondsPerDay);
}

inline TimePoint midnight(Date d) { return static_cast<TimePoint>(d) * kSecondsPerDay; }

inline int second_of_day(TimePoint t) {
  return static_cast<int>(t - midnight(date_of(t)));
}

inline int hour_of_day(TimePoint t) { return second_of_day(t) / static_cast<int>(kSecondsPerHour); }

// "2020-03-24T09:15:02Z". Fractional seconds are rejected unless
// truncate_fractional is set, in which case they are dropped.
std::optional<TimePoint> parse_rfc3339_utc(std::string_view s, bool truncate_fractional = false);
std::string format_rfc3339_utc(TimePoint t);

// "2020-03-24"
std::optional<Date> parse_date(std::string_view s);
std::string format_date(Date d);

// Fixed-offset timezone spec: "UTC", "Z", "+HH:MM", "-HH:MM". Returns the
// offset in seconds to add to a UTC instant to obtain local time.
std::optional<Duration> parse_utc_offset(std::string_view tz);

}  // namespace routine
