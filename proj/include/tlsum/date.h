// Copyright 2026 The tlsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TLSUM_DATE_H_
#define TLSUM_DATE_H_

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace tlsum {

// Calendar day. Stored as a day count relative to 1970-01-01 so that
// arithmetic and comparison are plain integer operations.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days days)
      : days_(days.time_since_epoch().count()) {}

  // Returns nullopt unless (year, month, day) is a valid calendar date.
  static std::optional<Date> from_ymd(int year, int month, int day);

  // Accepts "YYYY-MM-DD" optionally followed by a time part starting with
  // 'T' or ' ' (the time is discarded).
  static std::optional<Date> parse_iso(std::string_view text);

  static constexpr Date from_serial(int32_t days) {
    Date d;
    d.days_ = days;
    return d;
  }

  int year() const;
  unsigned month() const;
  unsigned day() const;
  // 0 = Sunday ... 6 = Saturday.
  unsigned weekday() const;

  constexpr int32_t serial() const { return days_; }
  std::chrono::sys_days sys_days() const {
    return std::chrono::sys_days{std::chrono::days{days_}};
  }

  std::string iso() const;

  constexpr Date operator+(int32_t n) const { return from_serial(days_ + n); }
  constexpr Date operator-(int32_t n) const { return from_serial(days_ - n); }
  constexpr int32_t operator-(Date other) const { return days_ - other.days_; }

  constexpr auto operator<=>(const Date&) const = default;

 private:
  int32_t days_ = 0;
};

// Absolute distance in days.
inline int32_t days_between(Date a, Date b) {
  int32_t d = a - b;
  return d < 0 ? -d : d;
}

}  // namespace tlsum

template <>
struct std::hash<tlsum::Date> {
  size_t operator()(tlsum::Date d) const noexcept {
    return std::hash<int32_t>{}(d.serial());
  }
};

#endif  // TLSUM_DATE_H_
