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

#include "tlsum/dateselect.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tlsum::dateselect {

namespace {

constexpr int kLeadSentences = 5;

struct Counts {
  int pub = 0;
  int mentions = 0;
  int before = 0;
  int same = 0;
  int after = 0;
  int lead = 0;
};

std::vector<Date> rank_by(std::span<const DateStats> stats,
                          const std::vector<double>& score) {
  std::vector<size_t> order(stats.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return stats[a].date < stats[b].date;
  });
  std::vector<Date> out;
  out.reserve(order.size());
  for (size_t i : order) out.push_back(stats[i].date);
  return out;
}

}  // namespace

std::vector<DateStats> collect_dates(std::span<const Article> articles,
                                     const DateSpan* span) {
  std::map<Date, Counts> counts;
  auto inside = [&](Date d) { return span == nullptr || span->contains(d); };
  for (const auto& a : articles) {
    if (inside(a.pub_date)) ++counts[a.pub_date].pub;
    for (const auto& s : a.sentences) {
      // A sentence counts once per distinct date it mentions.
      std::vector<Date> dates;
      for (const auto& m : s.mentions) dates.push_back(m.resolved);
      std::sort(dates.begin(), dates.end());
      dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
      for (Date d : dates) {
        if (!inside(d)) continue;
        Counts& c = counts[d];
        ++c.mentions;
        if (s.pub_date < d) {
          ++c.before;
        } else if (s.pub_date == d) {
          ++c.same;
        } else {
          ++c.after;
        }
        if (s.index >= 0 && s.index < kLeadSentences) ++c.lead;
      }
    }
  }

  auto count_at = [&](Date d) -> const Counts* {
    auto it = counts.find(d);
    return it == counts.end() ? nullptr : &it->second;
  };
  std::vector<DateStats> out;
  out.reserve(counts.size());
  for (const auto& [date, c] : counts) {
    DateStats st;
    st.date = date;
    st.pub_count = c.pub;
    st.mention_count = c.mentions;
    double pub_window = 0, mention_window = 0;
    for (int off = -1; off <= 1; ++off) {
      if (const Counts* w = count_at(date + off)) {
        pub_window += w->pub;
        mention_window += w->mentions;
      }
    }
    st.features = {static_cast<double>(c.pub),    static_cast<double>(c.mentions),
                   static_cast<double>(c.before), static_cast<double>(c.same),
                   static_cast<double>(c.after),  static_cast<double>(c.lead),
                   pub_window,                    mention_window};
    out.push_back(st);
  }
  return out;
}

std::vector<DateStats> collect_dates(const Task& task) {
  if (task.ground_truth.empty()) return collect_dates(task.articles, nullptr);
  DateSpan span{task.ground_truth.first_date(), task.ground_truth.last_date()};
  return collect_dates(task.articles, &span);
}

std::vector<Date> rank_pubcount(std::span<const DateStats> stats) {
  std::vector<double> score;
  score.reserve(stats.size());
  for (const auto& s : stats) score.push_back(s.pub_count);
  return rank_by(stats, score);
}

std::vector<Date> rank_mentioncount(std::span<const DateStats> stats) {
  std::vector<double> score;
  score.reserve(stats.size());
  for (const auto& s : stats) score.push_back(s.mention_count);
  return rank_by(stats, score);
}

void Samples::append(const Samples& other) {
  x.insert(x.end(), other.x.begin(), other.x.end());
  y.insert(y.end(), other.y.begin(), other.y.end());
}

Samples date_samples(const Task& task) {
  Samples s;
  for (const auto& st : collect_dates(task)) {
    s.x.emplace_back(st.features.begin(), st.features.end());
    s.y.push_back(task.ground_truth.find(st.date) != nullptr ? 1.0 : 0.0);
  }
  return s;
}

LinearModel train_date_selector(const Samples& samples, LinearMode mode) {
  if (samples.x.empty()) throw DegenerateLabels();
  LinearModel m = mode == LinearMode::kClassification ? train_logistic(samples.x, samples.y)
                                                      : train_ridge(samples.x, samples.y);
  m.feature_schema = std::string(kDateFeatureSchema);
  return m;
}

LinearModel train_date_selector(std::span<const Task> training_tasks,
                                LinearMode mode) {
  if (training_tasks.empty()) {
    throw std::invalid_argument("train_date_selector: no training tasks");
  }
  Samples all;
  for (const auto& task : training_tasks) all.append(date_samples(task));
  return train_date_selector(all, mode);
}

std::vector<Date> rank_dates_supervised(std::span<const DateStats> stats,
                                        const LinearModel& model) {
  if (model.num_features() != kNumDateFeatures) {
    throw std::invalid_argument("feature-length mismatch: date model expects " +
                                std::to_string(kNumDateFeatures) + " features, has " +
                                std::to_string(model.num_features()));
  }
  std::vector<double> score;
  score.reserve(stats.size());
  for (const auto& s : stats) score.push_back(model.score(s.features));
  return rank_by(stats, score);
}

}  // namespace tlsum::dateselect
