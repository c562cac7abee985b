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

// Rule-based temporal expression tagger.
//
// Recognized expressions, all resolved to a calendar day:
//   2012-04-26                      absolute ISO date
//   26 April 2012, 26th of April 2012
//   April 26, 2012, April 26 2012
//   26 April, April 26              nearest occurrence to the publication date
//   Monday, last Monday             most recent strictly earlier Monday
//   next Monday                     nearest strictly later Monday
//   today, yesterday, tomorrow
// Month and weekday names must be capitalized. Anything partial (month and
// year only, bare years) is ignored.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>

#include "tlsum/corpus.h"
#include "tlsum/text.h"

namespace tlsum::corpus {

namespace {

struct Word {
  size_t begin;
  size_t end;
  std::string_view text;
};

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

std::vector<Word> split_words(std::string_view s) {
  std::vector<Word> words;
  size_t i = 0;
  while (i < s.size()) {
    if (!is_alnum(s[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < s.size() && is_alnum(s[j])) ++j;
    words.push_back({i, j, s.substr(i, j - i)});
    i = j;
  }
  return words;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

// "April" or "APRIL", not "april".
bool capitalized(std::string_view w) {
  return !w.empty() && is_upper(w.front());
}

struct NamedValue {
  std::string_view name;
  int value;
};

constexpr std::array<NamedValue, 24> kMonths = {{
    {"january", 1}, {"february", 2}, {"march", 3},    {"april", 4},
    {"may", 5},     {"june", 6},     {"july", 7},     {"august", 8},
    {"september", 9}, {"october", 10}, {"november", 11}, {"december", 12},
    {"jan", 1},     {"feb", 2},      {"mar", 3},      {"apr", 4},
    {"jun", 6},     {"jul", 7},      {"aug", 8},      {"sep", 9},
    {"sept", 9},    {"oct", 10},     {"nov", 11},     {"dec", 12},
}};

constexpr std::array<NamedValue, 7> kWeekdays = {{
    {"sunday", 0}, {"monday", 1}, {"tuesday", 2}, {"wednesday", 3},
    {"thursday", 4}, {"friday", 5}, {"saturday", 6},
}};

std::optional<int> lookup(std::string_view w, std::span<const NamedValue> table) {
  if (!capitalized(w)) return std::nullopt;
  for (const auto& e : table) {
    if (iequals(w, e.name)) return e.value;
  }
  return std::nullopt;
}

std::optional<int> month_of(std::string_view w) { return lookup(w, kMonths); }
std::optional<int> weekday_of(std::string_view w) { return lookup(w, kWeekdays); }

// "5", "05", "5th", "21st".
std::optional<int> day_of(std::string_view w) {
  size_t digits = 0;
  while (digits < w.size() && is_digit(w[digits])) ++digits;
  if (digits == 0 || digits > 2) return std::nullopt;
  std::string_view suffix = w.substr(digits);
  if (!suffix.empty() && !iequals(suffix, "st") && !iequals(suffix, "nd") &&
      !iequals(suffix, "rd") && !iequals(suffix, "th")) {
    return std::nullopt;
  }
  int v = 0;
  for (size_t i = 0; i < digits; ++i) v = v * 10 + (w[i] - '0');
  if (v < 1 || v > 31) return std::nullopt;
  return v;
}

std::optional<int> year_of(std::string_view w) {
  if (w.size() != 4) return std::nullopt;
  int v = 0;
  for (char c : w) {
    if (!is_digit(c)) return std::nullopt;
    v = v * 10 + (c - '0');
  }
  if (v < 1000) return std::nullopt;
  return v;
}

// The text between two words only contains characters from `allowed` and
// at least one separator.
bool separated_by(std::string_view s, const Word& a, const Word& b,
                  std::string_view allowed) {
  if (b.begin <= a.end) return false;
  for (size_t i = a.end; i < b.begin; ++i) {
    if (allowed.find(s[i]) == std::string_view::npos) return false;
  }
  return true;
}

constexpr std::string_view kSpace = " \t";
constexpr std::string_view kSpaceComma = " \t,";
constexpr std::string_view kSpaceDot = " \t.";

std::optional<Date> nearest_occurrence(int month, int day, Date pub) {
  std::optional<Date> best;
  int32_t best_dist = 0;
  for (int y = pub.year() - 1; y <= pub.year() + 1; ++y) {
    auto d = Date::from_ymd(y, month, day);
    if (!d) continue;
    int32_t dist = days_between(*d, pub);
    // Candidates are visited in ascending order, so strict < keeps the
    // earlier date on ties.
    if (!best || dist < best_dist) {
      best = d;
      best_dist = dist;
    }
  }
  return best;
}

Date previous_weekday(Date pub, int target) {
  int diff = (static_cast<int>(pub.weekday()) - target + 7) % 7;
  if (diff == 0) diff = 7;
  return pub - diff;
}

Date next_weekday(Date pub, int target) {
  int diff = (target - static_cast<int>(pub.weekday()) + 7) % 7;
  if (diff == 0) diff = 7;
  return pub + diff;
}

// ISO dates are found on the character level because '-' separates words.
bool match_iso(std::string_view s, size_t i, Date* out) {
  if (i + 10 > s.size()) return false;
  if (i > 0 && is_alnum(s[i - 1])) return false;
  if (i + 10 < s.size() && is_alnum(s[i + 10])) return false;
  for (size_t k = 0; k < 10; ++k) {
    char c = s[i + k];
    bool want_dash = (k == 4 || k == 7);
    if (want_dash ? c != '-' : !is_digit(c)) return false;
  }
  auto d = Date::parse_iso(s.substr(i, 10));
  if (!d) return false;
  *out = *d;
  return true;
}

struct Span {
  size_t begin;
  size_t end;
  Date date;
};

}  // namespace

std::vector<DateMention> tag_date_mentions(std::string_view s, Date pub) {
  std::vector<Span> spans;

  std::vector<bool> taken(s.size(), false);
  for (size_t i = 0; i + 10 <= s.size(); ++i) {
    Date d;
    if (is_digit(s[i]) && match_iso(s, i, &d)) {
      spans.push_back({i, i + 10, d});
      std::fill(taken.begin() + static_cast<long>(i),
                taken.begin() + static_cast<long>(i + 10), true);
      i += 9;
    }
  }

  std::vector<Word> words = split_words(s);
  const size_t n = words.size();
  auto free_word = [&](size_t k) { return k < n && !taken[words[k].begin]; };

  size_t i = 0;
  while (i < n) {
    if (!free_word(i)) {
      ++i;
      continue;
    }
    const Word& w = words[i];

    // Day first: "26 April [2012]", "26th of April [2012]".
    if (auto day = day_of(w.text)) {
      size_t m = i + 1;
      if (free_word(m) && iequals(words[m].text, "of") &&
          separated_by(s, w, words[m], kSpace)) {
        ++m;
      }
      if (free_word(m) && separated_by(s, words[m - 1], words[m], kSpace)) {
        if (auto month = month_of(words[m].text)) {
          size_t y = m + 1;
          if (free_word(y) && separated_by(s, words[m], words[y], kSpaceComma)) {
            if (auto year = year_of(words[y].text)) {
              if (auto d = Date::from_ymd(*year, *month, *day)) {
                spans.push_back({w.begin, words[y].end, *d});
              }
              i = y + 1;
              continue;
            }
          }
          if (auto d = nearest_occurrence(*month, *day, pub)) {
            spans.push_back({w.begin, words[m].end, *d});
          }
          i = m + 1;
          continue;
        }
      }
    }

    // Month first: "April 26, 2012", "April 26".
    if (auto month = month_of(w.text)) {
      size_t d_idx = i + 1;
      if (free_word(d_idx) && separated_by(s, w, words[d_idx], kSpaceDot)) {
        if (auto day = day_of(words[d_idx].text)) {
          size_t y = d_idx + 1;
          if (free_word(y) &&
              separated_by(s, words[d_idx], words[y], kSpaceComma)) {
            if (auto year = year_of(words[y].text)) {
              if (auto d = Date::from_ymd(*year, *month, *day)) {
                spans.push_back({w.begin, words[y].end, *d});
              }
              i = y + 1;
              continue;
            }
          }
          if (auto d = nearest_occurrence(*month, *day, pub)) {
            spans.push_back({w.begin, words[d_idx].end, *d});
          }
          i = d_idx + 1;
          continue;
        }
      }
    }

    if (auto wd = weekday_of(w.text)) {
      size_t begin = w.begin;
      bool next = false;
      if (i > 0 && free_word(i - 1) && separated_by(s, words[i - 1], w, kSpace)) {
        if (iequals(words[i - 1].text, "last")) {
          begin = words[i - 1].begin;
        } else if (iequals(words[i - 1].text, "next")) {
          begin = words[i - 1].begin;
          next = true;
        }
      }
      Date d = next ? next_weekday(pub, *wd) : previous_weekday(pub, *wd);
      spans.push_back({begin, w.end, d});
      ++i;
      continue;
    }

    if (iequals(w.text, "today")) {
      spans.push_back({w.begin, w.end, pub});
    } else if (iequals(w.text, "yesterday")) {
      spans.push_back({w.begin, w.end, pub - 1});
    } else if (iequals(w.text, "tomorrow")) {
      spans.push_back({w.begin, w.end, pub + 1});
    }
    ++i;
  }

  std::sort(spans.begin(), spans.end(),
            [](const Span& a, const Span& b) { return a.begin < b.begin; });
  std::vector<DateMention> out;
  out.reserve(spans.size());
  for (const auto& sp : spans) {
    out.push_back({std::string(s.substr(sp.begin, sp.end - sp.begin)), sp.date});
  }
  return out;
}

}  // namespace tlsum::corpus
