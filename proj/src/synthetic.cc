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

#include "tlsum/synthetic.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "tlsum/io.h"
#include "tlsum/text.h"

namespace tlsum::synthetic {

namespace {

constexpr int kEventGrid = 4;
constexpr int kEventWords = 6;
constexpr int kEventLeadSentences = 3;
// Noise mentions stay this far from planted dates.
constexpr int kQuietRadius = 2;

constexpr std::array<const char*, 12> kMonths = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  uint64_t below(uint64_t n) { return gen_() % n; }
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

// Pronounceable three-syllable pseudo-words that are never stopwords.
class WordSource {
 public:
  std::string next() {
    for (;;) {
      std::string w = make(counter_++);
      if (!text::is_stopword(w)) return w;
    }
  }

 private:
  static std::string make(uint64_t i) {
    static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
    static constexpr std::string_view kVowels = "aeiou";
    const uint64_t syllables = kConsonants.size() * kVowels.size();
    std::string out;
    for (int s = 0; s < 3; ++s) {
      uint64_t syl = i % syllables;
      i /= syllables;
      out += kConsonants[syl / kVowels.size()];
      out += kVowels[syl % kVowels.size()];
    }
    return out;
  }

  uint64_t counter_ = 0;
};

std::string capitalized(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string date_phrase(Date d, int style) {
  char buf[64];
  switch (style % 3) {
    case 0:
      std::snprintf(buf, sizeof buf, "%u %s %d", d.day(), kMonths[d.month() - 1], d.year());
      break;
    case 1:
      std::snprintf(buf, sizeof buf, "%s %u, %d", kMonths[d.month() - 1], d.day(), d.year());
      break;
    default:
      return d.iso();
  }
  return buf;
}

std::string join_sentence(const std::vector<std::string>& words, const std::string& tail) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  out = capitalized(out);
  if (!tail.empty()) out += " on " + tail;
  return out + ".";
}

}  // namespace

Task SyntheticCorpus::to_task() const {
  Task t;
  t.name = topic + "/timeline";
  t.topic = topic;
  t.articles = corpus::truncate_to_timeline_range(articles, ground_truth);
  t.queries = queries;
  t.ground_truth = ground_truth;
  return t;
}

SyntheticCorpus generate(const SyntheticSpec& spec) {
  if (spec.n_events < 1) throw std::invalid_argument("synthetic: n_events must be >= 1");
  if (spec.articles_per_event < 0 || spec.noise_articles < 0 || spec.vocab_size < 1 ||
      spec.sentences_per_article < kEventLeadSentences) {
    throw std::invalid_argument("synthetic: invalid counts");
  }
  if (spec.overlap < 0.0 || spec.overlap > 1.0) {
    throw std::invalid_argument("synthetic: overlap must lie in [0, 1]");
  }
  const int slots = spec.span_days / kEventGrid;
  if (slots < spec.n_events) {
    throw std::invalid_argument("synthetic: span of " + std::to_string(spec.span_days) +
                                " days cannot hold " + std::to_string(spec.n_events) +
                                " distinct events");
  }

  Rng rng(spec.seed);
  WordSource words;
  std::vector<std::string> background;
  for (int i = 0; i < spec.vocab_size; ++i) background.push_back(words.next());
  auto background_word = [&]() {
    // Skewed towards low indices, a cheap stand-in for a Zipf curve.
    double u = rng.unit();
    return background[static_cast<size_t>(u * u * static_cast<double>(background.size()))];
  };

  std::vector<int> slot_ids(static_cast<size_t>(slots));
  for (int i = 0; i < slots; ++i) slot_ids[static_cast<size_t>(i)] = i;
  rng.shuffle(slot_ids);
  std::vector<Date> event_dates;
  for (int e = 0; e < spec.n_events; ++e) {
    event_dates.push_back(spec.start + slot_ids[static_cast<size_t>(e)] * kEventGrid);
  }
  std::sort(event_dates.begin(), event_dates.end());

  auto quiet = [&](Date d) {
    for (Date e : event_dates) {
      if (std::abs(d - e) <= kQuietRadius) return false;
    }
    return true;
  };
  auto background_sentence = [&]() {
    std::vector<std::string> ws;
    int len = 8 + static_cast<int>(rng.below(5));
    for (int i = 0; i < len; ++i) ws.push_back(background_word());
    if (rng.chance(0.05)) ws.insert(ws.begin() + static_cast<long>(rng.below(ws.size())), spec.keyphrase);
    std::string tail;
    if (rng.chance(0.1)) {
      Date d = spec.start + static_cast<int>(rng.below(static_cast<uint64_t>(spec.span_days)));
      if (quiet(d)) tail = date_phrase(d, static_cast<int>(rng.below(3)));
    }
    return join_sentence(ws, tail);
  };

  SyntheticCorpus out;
  out.topic = spec.topic;
  out.queries = {spec.keyphrase};
  std::vector<TimelineEntry> entries;

  for (int e = 0; e < spec.n_events; ++e) {
    const Date date = event_dates[static_cast<size_t>(e)];
    std::vector<std::string> event_words;
    while (event_words.size() < static_cast<size_t>(kEventWords)) {
      std::string w = rng.chance(spec.overlap) ? background_word() : words.next();
      if (std::find(event_words.begin(), event_words.end(), w) == event_words.end()) {
        event_words.push_back(w);
      }
    }
    std::vector<std::string> canonical_words = {spec.keyphrase};
    canonical_words.insert(canonical_words.end(), event_words.begin(), event_words.end());
    const std::string canonical = join_sentence(canonical_words, date_phrase(date, 0));
    entries.push_back({date, {canonical}});

    for (int a = 0; a < spec.articles_per_event; ++a) {
      const Date pub = date + static_cast<int>(rng.below(2));
      std::vector<std::string> sents;
      for (int s = 0; s < kEventLeadSentences; ++s) {
        if (a == 0 && s == 0) {
          sents.push_back(canonical);
          continue;
        }
        std::vector<std::string> ws;
        for (const auto& w : event_words) {
          if (!rng.chance(0.2)) ws.push_back(w);
        }
        while (ws.size() < 4) ws.push_back(event_words[rng.below(event_words.size())]);
        ws.push_back(background_word());
        ws.push_back(background_word());
        rng.shuffle(ws);
        ws.insert(ws.begin(), spec.keyphrase);
        sents.push_back(join_sentence(ws, date_phrase(date, static_cast<int>(rng.below(3)))));
      }
      for (int s = kEventLeadSentences; s < spec.sentences_per_article; ++s) {
        sents.push_back(background_sentence());
      }
      std::vector<std::string> title = {spec.keyphrase, event_words[0], event_words[1],
                                        event_words[2]};
      char id[48];
      std::snprintf(id, sizeof id, "syn-e%03d-a%02d", e, a);
      out.articles.push_back(make_article(id, join_sentence(title, ""), pub, sents));
    }
  }

  for (int n = 0; n < spec.noise_articles; ++n) {
    const Date pub = spec.start + static_cast<int>(rng.below(static_cast<uint64_t>(spec.span_days)));
    std::vector<std::string> sents;
    for (int s = 0; s < spec.sentences_per_article; ++s) sents.push_back(background_sentence());
    std::vector<std::string> title;
    for (int i = 0; i < 5; ++i) title.push_back(background_word());
    char id[48];
    std::snprintf(id, sizeof id, "syn-n%05d", n);
    out.articles.push_back(make_article(id, join_sentence(title, ""), pub, sents));
  }

  std::sort(out.articles.begin(), out.articles.end(), [](const Article& x, const Article& y) {
    return x.pub_date != y.pub_date ? x.pub_date < y.pub_date : x.id < y.id;
  });
  out.ground_truth = Timeline(std::move(entries));
  return out;
}

void write_dataset(const SyntheticCorpus& corpus_in, const std::filesystem::path& dir) {
  const auto topic_dir = dir / corpus_in.topic;
  corpus::write_articles(topic_dir / "articles.jsonl", corpus_in.articles);
  io::write_file_atomic(topic_dir / "timelines" / "timeline.json",
                        corpus::serialize_timeline(corpus_in.ground_truth, corpus_in.topic,
                                                   corpus_in.queries));
}

}  // namespace tlsum::synthetic
