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

// Date-wise timeline construction: rank dates, pick candidate sentences per
// date and summarize each date separately.

#ifndef TLSUM_DATEWISE_H_
#define TLSUM_DATEWISE_H_

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tlsum/corpus.h"
#include "tlsum/linear.h"
#include "tlsum/summarize.h"
#include "tlsum/vecspace.h"

namespace tlsum::datewise {

class InsufficientEvidence : public std::runtime_error {
 public:
  InsufficientEvidence() : std::runtime_error("insufficient-evidence") {}
};

// Sentences published on d or up to this many days later form P_d.
inline constexpr int kPublishedWindowDays = 2;
// Body sentences per article used for P_d.
inline constexpr int kLeadSentences = 5;

enum class CandidateStrategy {
  kP,
  kM,
  kPMMean,
  // Every body sentence of articles published on d, unscored.
  kPublishedOnDay,
};

const char* strategy_name(CandidateStrategy s);
// Accepts "p", "m", "pm-mean" and "pub-day".
CandidateStrategy parse_strategy(std::string_view name);

enum class DateSelector { kPubCount, kMentionCount, kSupervisedClf, kSupervisedReg };

const char* selector_name(DateSelector s);
// Accepts "pubcount", "mentioncount", "supervised-clf" and "supervised-reg".
DateSelector parse_selector(std::string_view name);
bool is_supervised(DateSelector s);

// Sentence-level TF-IDF over the content tokens of every body sentence.
vecspace::TfidfModel fit_sentence_model(std::span<const Article> articles);

// Plain scans over the collection.
SentenceRefs build_pd(Date d, std::span<const Article> articles);
SentenceRefs build_md(Date d, std::span<const Article> articles);

// Precomputed lookups for repeated P_d / M_d queries on one collection.
// Results equal build_pd and build_md.
class DateIndex {
 public:
  explicit DateIndex(std::span<const Article> articles);

  SentenceRefs pd(Date d) const;
  SentenceRefs md(Date d) const;
  // Articles published in [d, d + kPublishedWindowDays], in collection order.
  std::vector<const Article*> published_near(Date d) const;
  std::vector<const Article*> published_on(Date d) const;

 private:
  std::map<Date, std::vector<const Article*>> by_pub_;
  std::map<Date, SentenceRefs> by_mention_;
};

// x_d[i] = mean_P[i] / |P| + mean_M[i] / |M| where both means are positive,
// else 0. Not renormalized. Throws InsufficientEvidence if either side is
// empty.
vecspace::SparseVector date_vector(std::span<const vecspace::SparseVector> p,
                                   std::span<const vecspace::SparseVector> m);
vecspace::SparseVector date_vector(const SentenceRefs& p_sents,
                                   const SentenceRefs& m_sents,
                                   const vecspace::TfidfModel& model);

// Knee of the descending score curve. Positions and scores are scaled to
// [0, 1] and the knee is the point lying farthest above the chord from the
// first to the last point; the raw score there is returned. Ties go to the
// smaller index, so a curve with no point above the chord keeps only the top
// score. Fewer than 3 scores or all-equal scores return the minimum.
double knee_threshold(std::span<const double> scores);

struct DateCandidateSet {
  Date date;
  SentenceRefs p_sents;
  SentenceRefs m_sents;
  vecspace::SparseVector date_vector;
  // Scores parallel to `pool` for kPMMean; empty otherwise.
  SentenceRefs pool;
  std::vector<double> scores;
  SentenceRefs selected;
};

// With titles_only the P_d article titles are the candidates and are scored
// against the date vector built from body sentences. Throws
// InsufficientEvidence for kPMMean when P_d or M_d is empty.
DateCandidateSet select_candidates(Date d, const DateIndex& index,
                                   const vecspace::TfidfModel& model,
                                   CandidateStrategy strategy,
                                   bool titles_only = false);
DateCandidateSet select_candidates(Date d, std::span<const Article> articles,
                                   const vecspace::TfidfModel& model,
                                   CandidateStrategy strategy,
                                   bool titles_only = false);

struct DatewiseConfig {
  DateSelector selector = DateSelector::kMentionCount;
  // Required by the supervised selectors.
  const LinearModel* date_model = nullptr;
  CandidateStrategy strategy = CandidateStrategy::kPMMean;
  summarize::Method summarizer = summarize::Method::kCentroidOpt;
  int l = 10;
  int k = 1;
  bool titles_only = false;
};

inline constexpr std::string_view kNoSummarizableDates = "no-summarizable-dates";

struct BuildResult {
  Timeline timeline;
  // Empty, or a warning code such as kNoSummarizableDates.
  std::string warning;
};

// Ranked dates of a task under a selector.
std::vector<Date> rank_task_dates(const Task& task, DateSelector selector,
                                  const LinearModel* model);

// Walks the ranked dates and summarizes each until l dates have a summary.
// Dates without a summary are skipped. With PM-Mean, a date with only one of
// P_d, M_d falls back to that set unscored.
BuildResult build_datewise_timeline(const Task& task, const DatewiseConfig& config);

}  // namespace tlsum::datewise

#endif  // TLSUM_DATEWISE_H_
