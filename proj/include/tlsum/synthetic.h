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

// Deterministic synthetic news collections with planted events.

#ifndef TLSUM_SYNTHETIC_H_
#define TLSUM_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tlsum/corpus.h"

namespace tlsum::synthetic {

struct SyntheticSpec {
  int n_events = 10;
  int articles_per_event = 5;
  int noise_articles = 50;
  int span_days = 365;
  int vocab_size = 2000;
  uint64_t seed = 42;
  // Fraction of event words drawn from the background vocabulary.
  double overlap = 0.0;
  int sentences_per_article = 8;
  std::string topic = "synthetic";
  std::string keyphrase = "Zarvex";
  Date start = *Date::from_ymd(2020, 1, 1);
};

struct SyntheticCorpus {
  std::vector<Article> articles;
  Timeline ground_truth;
  std::vector<std::string> queries;
  std::string topic;

  // Task named "<topic>/timeline" with articles truncated to the timeline.
  Task to_task() const;
};

// Event dates sit on a 4-day grid inside the span, so planted dates are at
// least 4 days apart. Each event article is published on the event date or
// the day after; its first three sentences carry the keyphrase, most of the
// event's words and an explicit mention of the event date. Noise articles use
// background words only and never mention dates within 2 days of an event.
// Throws std::invalid_argument when the span cannot hold the events.
SyntheticCorpus generate(const SyntheticSpec& spec);

// Writes <dir>/<topic>/articles.jsonl and <dir>/<topic>/timelines/timeline.json.
void write_dataset(const SyntheticCorpus& corpus, const std::filesystem::path& dir);

}  // namespace tlsum::synthetic

#endif  // TLSUM_SYNTHETIC_H_
