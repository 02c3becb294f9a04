#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>

#include "afdkit/errors.hpp"

namespace afdkit {

// Calendar date, UTC, day precision.
struct Date {
  int year = 0;
  unsigned month = 0;  // 1..12
  unsigned day = 0;    // 1..31

  auto operator<=>(const Date&) const = default;

  bool ok() const {
    return std::chrono::year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                       std::chrono::day{day}}
        .ok();
  }

  std::chrono::sys_days to_sys_days() const {
    return std::chrono::sys_days{std::chrono::year_month_day{
        std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}}};
  }

  static Date from_sys_days(std::chrono::sys_days sd) {
    std::chrono::year_month_day ymd{sd};
    return Date{int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day())};
  }

  Date next() const { return from_sys_days(to_sys_days() + std::chrono::days{1}); }
};

// Inclusive day count between two dates; start must not exceed end.
inline int64_t inclusive_days(const Date& start, const Date& end) {
  return (end.to_sys_days() - start.to_sys_days()).count() + 1;
}

// "2023-01-05" -> Date. Throws PreconditionViolation on malformed input.
Date parse_date(const std::string& iso);

// Date -> "2023-01-05".
std::string to_iso(const Date& d);

// English month name, as used in daily log page titles ("January").
std::string month_name(unsigned month);

// "January" -> 1; returns 0 when the name is not a month.
unsigned month_from_name(const std::string& name);

}  // namespace afdkit
