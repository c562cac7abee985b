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

// Timeline metrics, oracles and significance testing.

#ifndef TLSUM_EVALUATE_H_
#define TLSUM_EVALUATE_H_

#include <cstdint>
#include <cstdlib>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tlsum/corpus.h"
#include "tlsum/linear.h"

namespace tlsum::evaluate {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const Prf&) const = default;
};

double harmonic(double p, double r);

struct RougeOptions {
  bool stem = false;
  bool remove_stopwords = false;
};

// Lowercased alphanumeric tokens, optionally stopword-filtered and stemmed.
std::vector<std::string> rouge_tokens(std::string_view text, const RougeOptions& options = {});

// Clipped n-gram overlap. Either side without n-grams gives all zeros.
// Throws std::invalid_argument unless n is 1 or 2.
Prf rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
            int n);

// Set precision and recall over exact date matches.
Prf date_f1(const Timeline& system, const Timeline& reference);

// Weight of aligning dates that are `days` apart.
inline double alignment_weight(int days) { return 1.0 / (1.0 + std::abs(days)); }

struct AlignedPair {
  Date from;
  Date to;
  double weight;
};

struct AlignmentScore {
  Prf prf;
  // Precision pass: system date -> reference date.
  std::vector<AlignedPair> precision_pairs;
  // Recall pass: reference date -> system date.
  std::vector<AlignedPair> recall_pairs;
};

// Each date of one side is aligned to the date of the other side maximizing
// weight * ROUGE-n F1 (ties to the earlier date); several dates may share a
// partner. Precision is the weighted clipped match over all system n-grams,
// recall the same with the roles swapped.
AlignmentScore alignment_rouge_detail(const Timeline& system, const Timeline& reference,
                                      int n, const RougeOptions& options = {});
double alignment_rouge(const Timeline& system, const Timeline& reference, int n,
                       const RougeOptions& options = {});

// Adds, k times or until candidates run out, the sentence maximizing the
// ROUGE-1 F1 of the summary so far against the reference. Ties go to the
// smaller (article_id, index).
SentenceRefs greedy_oracle(const SentenceRefs& candidates,
                           std::span<const std::string> reference_tokens, int k);

enum class OracleMode { kDate, kText, kFull };
const char* oracle_name(OracleMode m);
OracleMode parse_oracle(std::string_view name);

// Days after d whose articles feed the oracle pool.
inline constexpr int kOracleWindowDays = 5;

// Sentences mentioning d plus the first 5 sentences of articles published in
// [d, d + 5], restricted to sentences containing a query keyphrase.
SentenceRefs oracle_pool(Date d, std::span<const Article> articles,
                         std::span<const std::string> queries);

// Date mode: ground-truth dates, Centroid-Opt summaries. Full mode:
// ground-truth dates, greedy oracle summaries. Text mode: the top l dates of
// the regression date model, greedy oracle summaries against the nearest
// ground-truth date's summary (ties to the earlier). Dates whose pool is
// empty are omitted.
Timeline oracle_timeline(const Task& task, OracleMode mode,
                         const LinearModel* regression_model = nullptr);

inline constexpr uint64_t kDefaultSeed = 42;
inline constexpr int kDefaultResamples = 10000;

// Two-sided paired approximate randomization test on the mean difference.
// Resample r draws its flips from a generator seeded by (seed, r).
double approx_randomization(std::span<const double> a, std::span<const double> b,
                            int resamples = kDefaultResamples, uint64_t seed = kDefaultSeed);

// Pearson correlation of average ranks. Throws std::invalid_argument with
// "zero-variance" for constant input and on bad lengths.
double spearman(std::span<const double> xs, std::span<const double> ys);

// Fraction of consecutive dates exactly one day apart; 0 below two dates.
double adjacent_date_ratio(const Timeline& timeline);

struct TaskScore {
  double ar1_f = 0.0;
  double ar2_f = 0.0;
  double date_f1 = 0.0;
};

struct EvalResult {
  double ar1_f = 0.0;
  double ar2_f = 0.0;
  double date_f1 = 0.0;
  // Task name -> scores, in task name order.
  std::map<std::string, TaskScore> per_task;

  // Recomputes the aggregate as the mean over tasks.
  void aggregate();
  std::string to_json() const;
  std::string to_csv() const;
};

TaskScore score_timeline(const Timeline& system, const Timeline& reference,
                         const RougeOptions& options = {});

}  // namespace tlsum::evaluate

#endif  // TLSUM_EVALUATE_H_
