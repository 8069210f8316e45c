#include "routine/time.hpp"

#include <cstdio>
#include <cstdlib>

namespace routine {

// Howard Hinnant's civil date algorithms.
Date days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<Date>(era * 146097 + static_cast<int>(doe) - 719468);
}

void civil_from_days(Date z, int& y, unsigned& m, unsigned& d) {
  int zz = z + 719468;
  const int era = (zz >= 0 ? zz : zz - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(zz - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int yr = static_cast<int>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = yr + (m <= 2);
}

namespace {

bool parse_uint(std::string_view s, std::size_t pos, std::size_t len, unsigned& out) {
  if (pos + len > s.size()) return false;
  unsigned v = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  out = v;
  return true;
}

bool valid_ymd(unsigned y, unsigned mo, unsigned da) {
  if (mo < 1 || mo > 12 || da < 1) return false;
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  unsigned dim = kDays[mo - 1];
  if (mo == 2 && (y % 4 == 0 && (y % 100 != 0 || y % 400 == 0))) dim = 29;
  return da <= dim;
}

}  // namespace

std::optional<TimePoint> parse_rfc3339_utc(std::string_view s, bool truncate_fractional) {
  // YYYY-MM-DDTHH:MM:SS[.frac]Z
  unsigned y, mo, da, h, mi, se;
  if (s.size() < 20) return std::nullopt;
  if (!parse_uint(s, 0, 4, y) || s[4] != '-' || !parse_uint(s, 5, 2, mo) || s[7] != '-' ||
      !parse_uint(s, 8, 2, da) || (s[10] != 'T' && s[10] != 't') || !parse_uint(s, 11, 2, h) ||
      s[13] != ':' || !parse_uint(s, 14, 2, mi) || s[16] != ':' || !parse_uint(s, 17, 2, se)) {
    return std::nullopt;
  }
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    if (!truncate_fractional) return std::nullopt;
    ++pos;
    std::size_t ndigits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      ++pos;
      ++ndigits;
    }
    if (ndigits == 0) return std::nullopt;
  }
  if (pos + 1 != s.size() || (s[pos] != 'Z' && s[pos] != 'z')) return std::nullopt;
  if (!valid_ymd(y, mo, da) || h > 23 || mi > 59 || se > 60) return std::nullopt;
  const Date days = days_from_civil(static_cast<int>(y), mo, da);
  return midnight(days) + h * kSecondsPerHour + mi * kSecondsPerMinute + se;
}

std::string format_rfc3339_utc(TimePoint t) {
  int y;
  unsigned mo, da;
  civil_from_days(date_of(t), y, mo, da);
  const int sod = second_of_day(t);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", y, mo, da,
                sod / 3600, (sod / 60) % 60, sod % 60);
  return buf;
}

std::optional<Date> parse_date(std::string_view s) {
  unsigned y, mo, da;
  if (s.size() != 10) return std::nullopt;
  if (!parse_uint(s, 0, 4, y) || s[4] != '-' || !parse_uint(s, 5, 2, mo) || s[7] != '-' ||
      !parse_uint(s, 8, 2, da)) {
    return std::nullopt;
  }
  if (!valid_ymd(y, mo, da)) return std::nullopt;
  return days_from_civil(static_cast<int>(y), mo, da);
}

std::string format_date(Date d) {
  int y;
  unsigned mo, da;
  civil_from_days(d, y, mo, da);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, mo, da);
  return buf;
}

std::optional<Duration> parse_utc_offset(std::string_view tz) {
  if (tz == "UTC" || tz == "utc" || tz == "Z" || tz == "z") return 0;
  if (tz.size() != 6 || (tz[0] != '+' && tz[0] != '-') || tz[3] != ':') return std::nullopt;
  unsigned h, m;
  if (!parse_uint(tz, 1, 2, h) || !parse_uint(tz, 4, 2, m)) return std::nullopt;
  if (h > 14 || m > 59) return std::nullopt;
  const Duration off = h * kSecondsPerHour + m * kSecondsPerMinute;
  return tz[0] == '-' ? -off : off;
}

}  // namespace routine
