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

#include "tlsum/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "tlsum/io.h"
#include "tlsum/parallel.h"
#include "tlsum/text.h"

namespace tlsum {

using nlohmann::json;

bool Sentence::mentions_date(Date d) const {
  for (const auto& m : mentions) {
    if (m.resolved == d) return true;
  }
  return false;
}

Sentence make_sentence(const std::string& article_id, int index,
                       std::string text, Date pub_date) {
  Sentence s;
  s.article_id = article_id;
  s.index = index;
  s.tokens = text::tokenize(text);
  s.mentions = corpus::tag_date_mentions(text, pub_date);
  s.text = std::move(text);
  s.pub_date = pub_date;
  return s;
}

Article make_article(std::string id, std::string title, Date pub_date,
                     std::span<const std::string> sentences) {
  Article a;
  a.id = std::move(id);
  a.pub_date = pub_date;
  a.sentences.reserve(sentences.size());
  for (size_t i = 0; i < sentences.size(); ++i) {
    a.sentences.push_back(
        make_sentence(a.id, static_cast<int>(i), sentences[i], pub_date));
  }
  a.headline = make_sentence(a.id, kTitleIndex, title, pub_date);
  a.title = std::move(title);
  return a;
}

Timeline::Timeline(std::vector<TimelineEntry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const TimelineEntry& a, const TimelineEntry& b) {
                     return a.date < b.date;
                   });
  for (auto& e : entries) {
    if (e.sentences.empty()) continue;
    if (!entries_.empty() && entries_.back().date == e.date) {
      auto& dst = entries_.back().sentences;
      dst.insert(dst.end(), std::make_move_iterator(e.sentences.begin()),
                 std::make_move_iterator(e.sentences.end()));
    } else {
      entries_.push_back(std::move(e));
    }
  }
}

size_t Timeline::num_sentences() const {
  size_t m = 0;
  for (const auto& e : entries_) m += e.sentences.size();
  return m;
}

double Timeline::avg_sentences_per_date() const {
  if (entries_.empty()) return 0.0;
  return static_cast<double>(num_sentences()) / static_cast<double>(entries_.size());
}

std::vector<Date> Timeline::dates() const {
  std::vector<Date> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.date);
  return out;
}

const TimelineEntry* Timeline::find(Date d) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), d,
      [](const TimelineEntry& e, Date x) { return e.date < x; });
  if (it == entries_.end() || it->date != d) return nullptr;
  return &*it;
}

int Task::target_k() const {
  double k = ground_truth.avg_sentences_per_date();
  return std::max(1, static_cast<int>(std::lround(k)));
}

size_t Task::num_sentences() const {
  size_t n = 0;
  for (const auto& a : articles) n += a.sentences.size();
  return n;
}

const char* reject_reason_code(RejectReason r) {
  switch (r) {
    case RejectReason::kMinEntries:
      return "min-entries";
    case RejectReason::kMentionCoverage:
      return "mention-coverage";
    case RejectReason::kArticleCount:
      return "article-count";
  }
  return "unknown";
}

namespace corpus {

namespace {

std::string source_line(std::string_view source, size_t line) {
  std::ostringstream os;
  os << source << ":" << line;
  return os.str();
}

Article parse_article_record(const json& rec, std::string_view source,
                             size_t line) {
  if (!rec.is_object()) {
    throw DataError(source_line(source, line) + ": record is not an object");
  }
  auto id_it = rec.find("id");
  if (id_it == rec.end() || !id_it->is_string()) {
    throw DataError(source_line(source, line) + ": missing string field 'id'");
  }
  std::string id = id_it->get<std::string>();
  auto time_it = rec.find("time");
  if (time_it == rec.end() || !time_it->is_string()) {
    throw DataError("article '" + id + "': missing string field 'time'");
  }
  auto date = Date::parse_iso(time_it->get<std::string>());
  if (!date) {
    throw DataError("article '" + id + "': unparseable date '" +
                    time_it->get<std::string>() + "'");
  }
  std::string title;
  if (auto t = rec.find("title"); t != rec.end() && t->is_string()) {
    title = t->get<std::string>();
  }
  std::vector<std::string> sentences;
  if (auto s = rec.find("sentences"); s != rec.end()) {
    if (!s->is_array()) {
      throw DataError(source_line(source, line) + ": 'sentences' is not an array");
    }
    for (const auto& item : *s) {
      if (!item.is_string()) {
        throw DataError(source_line(source, line) +
                        ": 'sentences' must contain strings");
      }
      std::string text = item.get<std::string>();
      if (!text.empty()) sentences.push_back(std::move(text));
    }
  } else if (auto t = rec.find("text"); t != rec.end()) {
    if (!t->is_string()) {
      throw DataError(source_line(source, line) + ": 'text' is not a string");
    }
    sentences = text::split_sentences(t->get<std::string>());
  } else {
    throw DataError(source_line(source, line) +
                    ": record needs 'text' or 'sentences'");
  }
  return make_article(std::move(id), std::move(title), *date, sentences);
}

bool article_less(const Article& a, const Article& b) {
  if (a.pub_date != b.pub_date) return a.pub_date < b.pub_date;
  return a.id < b.id;
}

}  // namespace

std::vector<Article> parse_articles(std::string_view jsonl, std::string_view source) {
  std::vector<Article> out;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= jsonl.size()) {
    size_t eol = jsonl.find('\n', pos);
    if (eol == std::string_view::npos) eol = jsonl.size();
    std::string_view line = jsonl.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (eol == jsonl.size()) break;
      continue;
    }
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(source_line(source, line_no) + ": malformed JSON: " + e.what());
    }
    Article a = parse_article_record(rec, source, line_no);
    // Articles without any body sentence carry no evidence and are dropped.
    if (!a.sentences.empty()) out.push_back(std::move(a));
    if (eol == jsonl.size()) break;
  }
  std::sort(out.begin(), out.end(), article_less);
  return out;
}

std::vector<Article> load_articles(const std::filesystem::path& path) {
  return parse_articles(io::read_file(path), path.string());
}

std::string serialize_articles(std::span<const Article> articles) {
  std::string out;
  for (const auto& a : articles) {
    json rec;
    rec["id"] = a.id;
    rec["title"] = a.title;
    rec["time"] = a.pub_date.iso();
    json sents = json::array();
    for (const auto& s : a.sentences) sents.push_back(s.text);
    rec["sentences"] = std::move(sents);
    out += rec.dump();
    out += '\n';
  }
  return out;
}

void write_articles(const std::filesystem::path& path,
                    std::span<const Article> articles) {
  io::write_file_atomic(path, serialize_articles(articles));
}

RawTimeline parse_raw_timeline(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string(source) + ": malformed JSON: " + e.what());
  }
  if (!doc.is_object()) throw DataError(std::string(source) + ": not an object");
  RawTimeline raw;
  if (auto t = doc.find("topic"); t != doc.end() && t->is_string()) {
    raw.topic = t->get<std::string>();
  }
  if (auto k = doc.find("keywords"); k != doc.end()) {
    if (!k->is_array()) {
      throw DataError(std::string(source) + ": 'keywords' is not an array");
    }
    for (const auto& w : *k) {
      if (!w.is_string()) {
        throw DataError(std::string(source) + ": keywords must be strings");
      }
      raw.keywords.push_back(w.get<std::string>());
    }
  }
  auto tl = doc.find("timeline");
  if (tl == doc.end() || !tl->is_array()) {
    throw DataError(std::string(source) + ": missing array 'timeline'");
  }
  for (const auto& entry : *tl) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
        !entry[1].is_array()) {
      throw DataError(std::string(source) +
                      ": timeline entries must be [date, [sentences]]");
    }
    RawTimelineEntry e;
    e.date = entry[0].get<std::string>();
    for (const auto& s : entry[1]) {
      if (!s.is_string()) {
        throw DataError(std::string(source) + ": summaries must be strings");
      }
      e.sentences.push_back(s.get<std::string>());
    }
    raw.entries.push_back(std::move(e));
  }
  return raw;
}

RawTimeline load_raw_timeline(const std::filesystem::path& path) {
  return parse_raw_timeline(io::read_file(path), path.string());
}

Timeline to_timeline(const RawTimeline& raw, std::string_view source) {
  std::vector<TimelineEntry> entries;
  for (const auto& e : raw.entries) {
    auto d = Date::parse_iso(e.date);
    if (!d || e.date.size() != 10) {
      throw DataError(std::string(source) + ": timeline date '" + e.date +
                      "' is not YYYY-MM-DD");
    }
    entries.push_back({*d, e.sentences});
  }
  return Timeline(std::move(entries));
}

std::string serialize_timeline(const Timeline& timeline, std::string_view topic,
                               std::span<const std::string> keywords) {
  json doc;
  doc["topic"] = std::string(topic);
  doc["keywords"] = std::vector<std::string>(keywords.begin(), keywords.end());
  json entries = json::array();
  for (const auto& e : timeline.entries()) {
    entries.push_back(json::array({e.date.iso(), e.sentences}));
  }
  doc["timeline"] = std::move(entries);
  return doc.dump(2) + "\n";
}

std::vector<Article> truncate_to_timeline_range(std::span<const Article> articles,
                                                const Timeline& ground_truth) {
  std::vector<Article> out;
  if (ground_truth.empty()) return out;
  DateSpan span{ground_truth.first_date(), ground_truth.last_date()};
  for (const auto& a : articles) {
    if (span.contains(a.pub_date)) out.push_back(a);
  }
  return out;
}

FilterOutcome filter_dataset_task(std::span<const Article> articles,
                                  const RawTimeline& raw_timeline,
                                  std::span<const std::string> queries) {
  std::vector<Date> pub_dates;
  pub_dates.reserve(articles.size());
  for (const auto& a : articles) pub_dates.push_back(a.pub_date);
  std::sort(pub_dates.begin(), pub_dates.end());

  std::vector<TimelineEntry> entries;
  for (const auto& e : raw_timeline.entries) {
    // (a) Day precision required.
    if (e.date.size() != 10) continue;
    auto d = Date::parse_iso(e.date);
    if (!d) continue;
    // (b) Within the article publication range.
    if (pub_dates.empty() || *d < pub_dates.front() || *d > pub_dates.back()) {
      continue;
    }
    // (c) Some article published within +-2 days.
    auto it = std::lower_bound(pub_dates.begin(), pub_dates.end(), *d - 2);
    if (it == pub_dates.end() || *it > *d + 2) continue;
    entries.push_back({*d, e.sentences});
  }
  Timeline timeline(std::move(entries));

  FilterOutcome out;
  if (timeline.num_dates() < 5) {
    out.reason = RejectReason::kMinEntries;
    return out;
  }

  std::unordered_set<Date> gt_dates;
  for (Date d : timeline.dates()) gt_dates.insert(d);
  std::unordered_set<Date> mentioned;
  for (const auto& a : articles) {
    for (const auto& s : a.sentences) {
      for (const auto& m : s.mentions) {
        if (gt_dates.contains(m.resolved)) mentioned.insert(m.resolved);
      }
    }
  }
  if (2 * mentioned.size() < gt_dates.size()) {
    out.reason = RejectReason::kMentionCoverage;
    return out;
  }

  size_t matching = 0;
  for (const auto& a : articles) {
    for (const auto& s : a.sentences) {
      if (text::contains_any(s.text, queries)) {
        ++matching;
        break;
      }
    }
  }
  if (matching < 100 || matching >= 3000) {
    out.reason = RejectReason::kArticleCount;
    return out;
  }

  Task task;
  task.name = raw_timeline.topic;
  task.topic = raw_timeline.topic;
  task.articles.assign(articles.begin(), articles.end());
  task.queries.assign(queries.begin(), queries.end());
  task.ground_truth = std::move(timeline);
  out.task = std::move(task);
  return out;
}

DatasetStats dataset_stats(std::span<const Task> tasks) {
  if (tasks.empty()) throw std::invalid_argument("dataset_stats: no tasks");
  DatasetStats st;
  std::set<std::string> topics;
  const double n = static_cast<double>(tasks.size());
  for (const auto& t : tasks) {
    topics.insert(t.topic.empty() ? t.name : t.topic);
    std::set<Date> pub;
    std::unordered_set<Date> mentioned;
    size_t sents = 0;
    for (const auto& a : t.articles) {
      pub.insert(a.pub_date);
      sents += a.sentences.size();
      for (const auto& s : a.sentences) {
        for (const auto& m : s.mentions) mentioned.insert(m.resolved);
      }
    }
    const auto& gt = t.ground_truth;
    double l = static_cast<double>(gt.num_dates());
    double m = static_cast<double>(gt.num_sentences());
    size_t cov_pub = 0, cov_men = 0;
    for (Date d : gt.dates()) {
      if (pub.contains(d)) ++cov_pub;
      if (mentioned.contains(d)) ++cov_men;
    }
    st.avg_docs += static_cast<double>(t.articles.size()) / n;
    st.avg_sents += static_cast<double>(sents) / n;
    st.avg_pubdates += static_cast<double>(pub.size()) / n;
    if (!gt.empty()) {
      st.avg_duration_days += static_cast<double>(gt.last_date() - gt.first_date()) / n;
    }
    st.avg_l += l / n;
    st.avg_k += gt.avg_sentences_per_date() / n;
    st.avg_m += m / n;
    if (sents > 0) st.comp_ratio_sents += m / static_cast<double>(sents) / n;
    if (!pub.empty()) st.comp_ratio_dates += l / static_cast<double>(pub.size()) / n;
    if (l > 0) {
      st.date_cov_published += static_cast<double>(cov_pub) / l / n;
      st.date_cov_mentioned += static_cast<double>(cov_men) / l / n;
    }
  }
  st.n_topics = topics.size();
  st.n_timelines = tasks.size();
  return st;
}

std::vector<Task> load_dataset(const std::filesystem::path& dir,
                               std::span<const std::string> topics, int jobs) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw DataError("dataset directory not found: " + dir.string());
  }
  std::vector<fs::path> topic_dirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_directory()) continue;
    std::string name = entry.path().filename().string();
    if (!topics.empty() &&
        std::find(topics.begin(), topics.end(), name) == topics.end()) {
      continue;
    }
    topic_dirs.push_back(entry.path());
  }
  std::sort(topic_dirs.begin(), topic_dirs.end());

  std::vector<std::vector<Task>> per_topic(topic_dirs.size());
  parallel_for(topic_dirs.size(), jobs, [&](size_t i) {
    const fs::path& tdir = topic_dirs[i];
    std::string topic = tdir.filename().string();
    fs::path articles_path = tdir / "articles.jsonl";
    fs::path timelines_dir = tdir / "timelines";
    if (!fs::exists(articles_path)) {
      throw DataError("missing " + articles_path.string());
    }
    if (!fs::is_directory(timelines_dir)) {
      throw DataError("missing " + timelines_dir.string());
    }
    std::vector<fs::path> tl_files;
    for (const auto& e : fs::directory_iterator(timelines_dir)) {
      if (e.is_regular_file() && e.path().extension() == ".json") {
        tl_files.push_back(e.path());
      }
    }
    std::sort(tl_files.begin(), tl_files.end());
    std::vector<Article> articles = load_articles(articles_path);
    for (const auto& f : tl_files) {
      RawTimeline raw = load_raw_timeline(f);
      Task task;
      task.topic = topic;
      task.name = topic + "/" + f.stem().string();
      task.ground_truth = to_timeline(raw, f.string());
      task.queries = raw.keywords;
      if (task.queries.empty()) {
        throw DataError(f.string() + ": 'keywords' must not be empty");
      }
      task.articles = truncate_to_timeline_range(articles, task.ground_truth);
      per_topic[i].push_back(std::move(task));
    }
  });

  std::vector<Task> tasks;
  for (auto& v : per_topic) {
    for (auto& t : v) tasks.push_back(std::move(t));
  }
  return tasks;
}

}  // namespace corpus
}  // namespace tlsum
