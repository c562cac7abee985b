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

// Data model for article collections and timelines, corpus ingestion,
// dataset construction and dataset statistics.

#ifndef TLSUM_CORPUS_H_
#define TLSUM_CORPUS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tlsum/date.h"

namespace tlsum {

// Input that cannot be parsed or violates a file schema.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DateMention {
  std::string surface;
  Date resolved;

  bool operator==(const DateMention&) const = default;
};

// Index of the pseudo-sentence built from an article title.
inline constexpr int kTitleIndex = -1;

struct Sentence {
  std::string article_id;
  int index = 0;
  std::string text;
  std::vector<std::string> tokens;
  std::vector<DateMention> mentions;
  Date pub_date;

  bool mentions_date(Date d) const;
  bool operator==(const Sentence&) const = default;
};

// Non-owning references into an article collection.
using SentenceRefs = std::vector<const Sentence*>;

// Total order used for every tie-break on sentences.
inline bool sentence_key_less(const Sentence& a, const Sentence& b) {
  if (a.article_id != b.article_id) return a.article_id < b.article_id;
  return a.index < b.index;
}

struct Article {
  std::string id;
  std::string title;
  Date pub_date;
  std::vector<Sentence> sentences;
  // Title as a sentence (index kTitleIndex), used by the titles-only mode.
  Sentence headline;

  bool operator==(const Article&) const = default;
};

// Builds a fully tagged article from raw sentence strings.
Article make_article(std::string id, std::string title, Date pub_date,
                     std::span<const std::string> sentences);

// Builds a sentence with tokens and resolved date mentions.
Sentence make_sentence(const std::string& article_id, int index,
                       std::string text, Date pub_date);

struct TimelineEntry {
  Date date;
  std::vector<std::string> sentences;

  bool operator==(const TimelineEntry&) const = default;
};

// Date-ordered summaries. Construction sorts by date, merges entries that
// share a date and drops entries without sentences.
class Timeline {
 public:
  Timeline() = default;
  explicit Timeline(std::vector<TimelineEntry> entries);

  const std::vector<TimelineEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }

  // l: number of dates.
  size_t num_dates() const { return entries_.size(); }
  // m: total number of sentences.
  size_t num_sentences() const;
  // k = m / l (0 for the empty timeline).
  double avg_sentences_per_date() const;

  std::vector<Date> dates() const;
  const TimelineEntry* find(Date d) const;
  Date first_date() const { return entries_.front().date; }
  Date last_date() const { return entries_.back().date; }

  bool operator==(const Timeline&) const = default;

 private:
  std::vector<TimelineEntry> entries_;
};

struct Task {
  std::string name;
  std::string topic;
  std::vector<Article> articles;
  std::vector<std::string> queries;
  Timeline ground_truth;

  // k rounded to the nearest integer, at least 1.
  int target_k() const;
  size_t num_sentences() const;
};

struct DatasetStats {
  size_t n_topics = 0;
  size_t n_timelines = 0;
  double avg_docs = 0;
  double avg_sents = 0;
  double avg_pubdates = 0;
  double avg_duration_days = 0;
  double avg_l = 0;
  double avg_k = 0;
  double avg_m = 0;
  double comp_ratio_sents = 0;
  double comp_ratio_dates = 0;
  double date_cov_published = 0;
  double date_cov_mentioned = 0;
};

// Ground-truth timeline as found in the wild: dates may lack day precision.
struct RawTimelineEntry {
  std::string date;
  std::vector<std::string> sentences;
};

struct RawTimeline {
  std::string topic;
  std::vector<std::string> keywords;
  std::vector<RawTimelineEntry> entries;
};

enum class RejectReason { kMinEntries, kMentionCoverage, kArticleCount };
const char* reject_reason_code(RejectReason r);

struct FilterOutcome {
  std::optional<Task> task;
  std::optional<RejectReason> reason;
};

struct DateSpan {
  Date first;
  Date last;
  bool contains(Date d) const { return first <= d && d <= last; }
};

namespace corpus {

// Reads an articles JSONL file. Articles come back sorted by publication
// date, then id. Throws DataError naming the line or the article.
std::vector<Article> load_articles(const std::filesystem::path& path);
std::vector<Article> parse_articles(std::string_view jsonl,
                                    std::string_view source = "<memory>");

// Writes articles as JSONL with pre-split sentences.
void write_articles(const std::filesystem::path& path,
                    std::span<const Article> articles);
std::string serialize_articles(std::span<const Article> articles);

// Ground-truth JSON: {"topic", "keywords", "timeline": [[date, [s...]]...]}.
RawTimeline load_raw_timeline(const std::filesystem::path& path);
RawTimeline parse_raw_timeline(std::string_view json,
                               std::string_view source = "<memory>");
// Parses a raw timeline requiring day precision for every entry.
Timeline to_timeline(const RawTimeline& raw, std::string_view source = "<memory>");
std::string serialize_timeline(const Timeline& timeline, std::string_view topic,
                               std::span<const std::string> keywords);

// Day-granularity date resolution relative to the publication date.
std::vector<DateMention> tag_date_mentions(std::string_view sentence_text,
                                           Date pub_date);

// Articles with first_date <= pub_date <= last_date of the timeline.
std::vector<Article> truncate_to_timeline_range(std::span<const Article> articles,
                                                const Timeline& ground_truth);

// Dataset construction: cleans the raw timeline and applies the acceptance
// criteria in order min-entries, mention-coverage, article-count.
FilterOutcome filter_dataset_task(std::span<const Article> articles,
                                  const RawTimeline& raw_timeline,
                                  std::span<const std::string> queries);

// Per-task quantities averaged over tasks. Throws std::invalid_argument on
// an empty list.
DatasetStats dataset_stats(std::span<const Task> tasks);

// Loads <dir>/<topic>/articles.jsonl with every <dir>/<topic>/timelines/*.json
// as one task each; articles are truncated to the timeline range. An optional
// topic filter restricts loading.
std::vector<Task> load_dataset(const std::filesystem::path& dir,
                               std::span<const std::string> topics = {},
                               int jobs = 1);

}  // namespace corpus
}  // namespace tlsum

#endif  // TLSUM_CORPUS_H_
