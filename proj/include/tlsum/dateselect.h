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

// Candidate dates and date ranking.

#ifndef TLSUM_DATESELECT_H_
#define TLSUM_DATESELECT_H_

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "tlsum/corpus.h"
#include "tlsum/linear.h"

namespace tlsum::dateselect {

inline constexpr size_t kNumDateFeatures = 8;
inline constexpr std::string_view kDateFeatureSchema = "date-features-v1";

// Feature order:
//   0 pub_count             articles published on the date
//   1 mention_count         sentences mentioning the date
//   2 mentions_from_before  ... published strictly before the date
//   3 mentions_same_day     ... published on the date
//   4 mentions_from_after   ... published strictly after the date
//   5 mentions_in_lead      ... that are among the first 5 of their article
//   6 pub_count_window      articles published within +-1 day
//   7 mention_count_window  mention_count summed over the +-1 day window
using DateFeatures = std::array<double, kNumDateFeatures>;

struct DateStats {
  Date date;
  int pub_count = 0;
  int mention_count = 0;
  DateFeatures features{};
};

// Union of publication dates and mentioned dates, restricted to the
// ground-truth span when the task has one. Sorted by date.
std::vector<DateStats> collect_dates(const Task& task);
// Same on a bare collection with an optional span.
std::vector<DateStats> collect_dates(std::span<const Article> articles,
                                     const DateSpan* span);

// Descending count, ties broken by the earlier date.
std::vector<Date> rank_pubcount(std::span<const DateStats> stats);
std::vector<Date> rank_mentioncount(std::span<const DateStats> stats);

struct Samples {
  std::vector<std::vector<double>> x;
  std::vector<double> y;

  void append(const Samples& other);
};

// Feature rows and labels of one task's candidate dates.
Samples date_samples(const Task& task);

// Labels are 1 for dates of the task's ground truth and 0 otherwise.
// Classification fits logistic regression, regression fits ridge; both with
// the default L2 penalty. Throws DegenerateLabels.
LinearModel train_date_selector(std::span<const Task> training_tasks,
                                LinearMode mode);
LinearModel train_date_selector(const Samples& samples, LinearMode mode);

// Descending model score, ties broken by the earlier date. Throws
// std::invalid_argument when the model's feature count does not match.
std::vector<Date> rank_dates_supervised(std::span<const DateStats> stats,
                                        const LinearModel& model);

}  // namespace tlsum::dateselect

#endif  // TLSUM_DATESELECT_H_
