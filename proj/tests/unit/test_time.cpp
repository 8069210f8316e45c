#include <doctest.h>

#include "routine/time.hpp"

using namespace routine;

TEST_CASE("rfc3339 parse and format round-trip") {
  const auto t = parse_rfc3339_utc("2020-03-24T09:15:02Z");
  REQUIRE(t.has_value());
  CHECK(format_rfc3339_utc(*t) == "2020-03-24T09:15:02Z");
  CHECK(hour_of_day(*t) == 9);
  CHECK(format_date(date_of(*t)) == "2020-03-24");
}

TEST_CASE("fractional seconds rejected unless truncation is enabled") {
  CHECK(!parse_rfc3339_utc("2020-03-24T09:15:02.500Z").has_value());
  const auto t = parse_rfc3339_utc("2020-03-24T09:15:02.500Z", true);
  REQUIRE(t.has_value());
  CHECK(*t == *parse_rfc3339_utc("2020-03-24T09:15:02Z"));
}

TEST_CASE("malformed timestamps rejected") {
  CHECK(!parse_rfc3339_utc("2020-03-24 09:15:02Z").has_value());
  CHECK(!parse_rfc3339_utc("2020-03-24T09:15:02").has_value());
  CHECK(!parse_rfc3339_utc("2020-13-24T09:15:02Z").has_value());
  CHECK(!parse_rfc3339_utc("2020-02-30T09:15:02Z").has_value());
  CHECK(!parse_rfc3339_utc("").has_value());
}

TEST_CASE("civil date conversions agree at leap boundaries") {
  const auto d = parse_date("2020-02-29");
  REQUIRE(d.has_value());
  CHECK(format_date(*d) == "2020-02-29");
  CHECK(format_date(*d + 1) == "2020-03-01");
  CHECK(!parse_date("2021-02-29").has_value());
  CHECK(*parse_date("1970-01-01") == 0);
}

TEST_CASE("utc offsets") {
  CHECK(*parse_utc_offset("UTC") == 0);
  CHECK(*parse_utc_offset("+01:00") == 3600);
  CHECK(*parse_utc_offset("-05:30") == -(5 * 3600 + 1800));
  CHECK(!parse_utc_offset("Europe/London").has_value());
}
