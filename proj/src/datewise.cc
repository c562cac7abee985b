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

#include "tlsum/datewise.h"

#include <algorithm>
#include <cmath>

#include "tlsum/dateselect.h"
#include "tlsum/text.h"

namespace tlsum::datewise {

using vecspace::SparseVector;

namespace {

SentenceRefs lead_sentences(const Article& a) {
  SentenceRefs out;
  size_t n = std::min<size_t>(a.sentences.size(), kLeadSentences);
  for (size_t i = 0; i < n; ++i) out.push_back(&a.sentences[i]);
  return out;
}

void sort_unique(SentenceRefs& refs) {
  std::sort(refs.begin(), refs.end(),
            [](const Sentence* a, const Sentence* b) { return sentence_key_less(*a, *b); });
  refs.erase(std::unique(refs.begin(), refs.end(),
                         [](const Sentence* a, const Sentence* b) {
                           return a->article_id == b->article_id && a->index == b->index;
                         }),
             refs.end());
}

std::vector<SparseVector> vectors_of(const SentenceRefs& sents,
                                     const vecspace::TfidfModel& model) {
  std::vector<SparseVector> out;
  out.reserve(sents.size());
  for (const Sentence* s : sents) out.push_back(vecspace::vectorize(s->tokens, model));
  return out;
}

SentenceRefs headlines(const std::vector<const Article*>& articles) {
  SentenceRefs out;
  for (const Article* a : articles) {
    if (!a->headline.tokens.empty()) out.push_back(&a->headline);
  }
  sort_unique(out);
  return out;
}

}  // namespace

const char* strategy_name(CandidateStrategy s) {
  switch (s) {
    case CandidateStrategy::kP:
      return "p";
    case CandidateStrategy::kM:
      return "m";
    case CandidateStrategy::kPMMean:
      return "pm-mean";
    case CandidateStrategy::kPublishedOnDay:
      return "pub-day";
  }
  return "unknown";
}

CandidateStrategy parse_strategy(std::string_view name) {
  if (name == "p") return CandidateStrategy::kP;
  if (name == "m") return CandidateStrategy::kM;
  if (name == "pm-mean") return CandidateStrategy::kPMMean;
  if (name == "pub-day") return CandidateStrategy::kPublishedOnDay;
  throw std::invalid_argument("unknown candidate strategy '" + std::string(name) + "'");
}

const char* selector_name(DateSelector s) {
  switch (s) {
    case DateSelector::kPubCount:
      return "pubcount";
    case DateSelector::kMentionCount:
      return "mentioncount";
    case DateSelector::kSupervisedClf:
      return "supervised-clf";
    case DateSelector::kSupervisedReg:
      return "supervised-reg";
  }
  return "unknown";
}

DateSelector parse_selector(std::string_view name) {
  if (name == "pubcount") return DateSelector::kPubCount;
  if (name == "mentioncount") return DateSelector::kMentionCount;
  if (name == "supervised-clf") return DateSelector::kSupervisedClf;
  if (name == "supervised-reg") return DateSelector::kSupervisedReg;
  throw std::invalid_argument("unknown date selector '" + std::string(name) + "'");
}

bool is_supervised(DateSelector s) {
  return s == DateSelector::kSupervisedClf || s == DateSelector::kSupervisedReg;
}

vecspace::TfidfModel fit_sentence_model(std::span<const Article> articles) {
  std::vector<std::vector<std::string>> units;
  for (const auto& a : articles) {
    for (const auto& s : a.sentences) units.push_back(text::content_tokens(s.tokens));
  }
  return vecspace::fit(units);
}

SentenceRefs build_pd(Date d, std::span<const Article> articles) {
  SentenceRefs out;
  for (const auto& a : articles) {
    if (a.pub_date < d || a.pub_date > d + kPublishedWindowDays) continue;
    for (const Sentence* s : lead_sentences(a)) out.push_back(s);
  }
  sort_unique(out);
  return out;
}

SentenceRefs build_md(Date d, std::span<const Article> articles) {
  SentenceRefs out;
  for (const auto& a : articles) {
    for (const auto& s : a.sentences) {
      if (s.mentions_date(d)) out.push_back(&s);
    }
  }
  sort_unique(out);
  return out;
}

DateIndex::DateIndex(std::span<const Article> articles) {
  for (const auto& a : articles) {
    by_pub_[a.pub_date].push_back(&a);
    for (const auto& s : a.sentences) {
      for (const auto& m : s.mentions) by_mention_[m.resolved].push_back(&s);
    }
  }
  for (auto& [d, refs] : by_mention_) sort_unique(refs);
}

std::vector<const Article*> DateIndex::published_near(Date d) const {
  std::vector<const Article*> out;
  for (auto it = by_pub_.lower_bound(d);
       it != by_pub_.end() && it->first <= d + kPublishedWindowDays; ++it) {
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<const Article*> DateIndex::published_on(Date d) const {
  auto it = by_pub_.find(d);
  return it == by_pub_.end() ? std::vector<const Article*>{} : it->second;
}

SentenceRefs DateIndex::pd(Date d) const {
  SentenceRefs out;
  for (const Article* a : published_near(d)) {
    for (const Sentence* s : lead_sentences(*a)) out.push_back(s);
  }
  sort_unique(out);
  return out;
}

SentenceRefs DateIndex::md(Date d) const {
  auto it = by_mention_.find(d);
  return it == by_mention_.end() ? SentenceRefs{} : it->second;
}

SparseVector date_vector(std::span<const SparseVector> p, std::span<const SparseVector> m) {
  if (p.empty() || m.empty()) throw InsufficientEvidence();
  SparseVector mp = vecspace::mean(p);
  SparseVector mm = vecspace::mean(m);
  const double wp = 1.0 / static_cast<double>(p.size());
  const double wm = 1.0 / static_cast<double>(m.size());
  std::vector<vecspace::Feature> out;
  const auto& a = mp.features();
  const auto& b = mm.features();
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index < b[j].index) {
      ++i;
    } else if (b[j].index < a[i].index) {
      ++j;
    } else {
      if (a[i].weight > 0 && b[j].weight > 0) {
        out.push_back({a[i].index, wp * a[i].weight + wm * b[j].weight});
      }
      ++i;
      ++j;
    }
  }
  return SparseVector::from_pairs(std::move(out));
}

SparseVector date_vector(const SentenceRefs& p_sents, const SentenceRefs& m_sents,
                         const vecspace::TfidfModel& model) {
  if (p_sents.empty() || m_sents.empty()) throw InsufficientEvidence();
  auto p = vectors_of(p_sents, model);
  auto m = vectors_of(m_sents, model);
  return date_vector(p, m);
}

double knee_threshold(std::span<const double> scores) {
  if (scores.empty()) return 0.0;
  std::vector<double> y(scores.begin(), scores.end());
  std::sort(y.begin(), y.end(), std::greater<>());
  const double hi = y.front();
  const double lo = y.back();
  if (y.size() < 3 || hi == lo) return lo;
  const size_t n = y.size();
  size_t knee = 0;
  double best = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double x = static_cast<double>(i) / static_cast<double>(n - 1);
    double yn = (y[i] - lo) / (hi - lo);
    // The chord runs from (0, 1) to (1, 0); points above it have x + y > 1.
    double dist = (x + yn - 1.0) / std::sqrt(2.0);
    if (dist > best + 1e-12) {
      best = dist;
      knee = i;
    }
  }
  return y[knee];
}

DateCandidateSet select_candidates(Date d, const DateIndex& index,
                                   const vecspace::TfidfModel& model,
                                   CandidateStrategy strategy, bool titles_only) {
  DateCandidateSet c;
  c.date = d;
  if (strategy == CandidateStrategy::kPublishedOnDay) {
    auto on_day = index.published_on(d);
    if (titles_only) {
      c.selected = headlines(on_day);
    } else {
      for (const Article* a : on_day) {
        for (const auto& s : a->sentences) c.selected.push_back(&s);
      }
      sort_unique(c.selected);
    }
    c.p_sents = c.selected;
    return c;
  }

  c.p_sents = index.pd(d);
  c.m_sents = index.md(d);
  SentenceRefs titles;
  if (titles_only) titles = headlines(index.published_near(d));

  switch (strategy) {
    case CandidateStrategy::kP:
      c.selected = titles_only ? titles : c.p_sents;
      return c;
    case CandidateStrategy::kM:
      c.selected = titles_only ? titles : c.m_sents;
      return c;
    default:
      break;
  }

  c.date_vector = date_vector(c.p_sents, c.m_sents, model);
  if (titles_only) {
    c.pool = std::move(titles);
  } else {
    c.pool = c.p_sents;
    c.pool.insert(c.pool.end(), c.m_sents.begin(), c.m_sents.end());
    sort_unique(c.pool);
  }
  c.scores.reserve(c.pool.size());
  for (const Sentence* s : c.pool) {
    c.scores.push_back(vecspace::cosine(vecspace::vectorize(s->tokens, model), c.date_vector));
  }
  double threshold = knee_threshold(c.scores);
  for (size_t i = 0; i < c.pool.size(); ++i) {
    if (c.scores[i] >= threshold) c.selected.push_back(c.pool[i]);
  }
  return c;
}

DateCandidateSet select_candidates(Date d, std::span<const Article> articles,
                                   const vecspace::TfidfModel& model,
                                   CandidateStrategy strategy, bool titles_only) {
  DateIndex index(articles);
  return select_candidates(d, index, model, strategy, titles_only);
}

std::vector<Date> rank_task_dates(const Task& task, DateSelector selector,
                                  const LinearModel* model) {
  auto stats = dateselect::collect_dates(task);
  switch (selector) {
    case DateSelector::kPubCount:
      return dateselect::rank_pubcount(stats);
    case DateSelector::kMentionCount:
      return dateselect::rank_mentioncount(stats);
    case DateSelector::kSupervisedClf:
    case DateSelector::kSupervisedReg:
      if (model == nullptr) {
        throw std::invalid_argument("supervised date selection requires a model");
      }
      return dateselect::rank_dates_supervised(stats, *model);
  }
  throw std::invalid_argument("unknown date selector");
}

BuildResult build_datewise_timeline(const Task& task, const DatewiseConfig& config) {
  if (config.l < 1 || config.k < 1) {
    throw std::invalid_argument("datewise: l and k must be >= 1");
  }
  BuildResult result;
  bool has_body = std::any_of(task.articles.begin(), task.articles.end(),
                              [](const Article& a) { return !a.sentences.empty(); });
  std::vector<Date> ranked;
  if (has_body) ranked = rank_task_dates(task, config.selector, config.date_model);
  if (ranked.empty()) {
    result.warning = std::string(kNoSummarizableDates);
    return result;
  }
  vecspace::TfidfModel model;
  try {
    model = fit_sentence_model(task.articles);
  } catch (const std::invalid_argument&) {
    result.warning = std::string(kNoSummarizableDates);
    return result;
  }
  DateIndex index(task.articles);

  std::vector<TimelineEntry> entries;
  for (Date d : ranked) {
    if (entries.size() >= static_cast<size_t>(config.l)) break;
    SentenceRefs candidates;
    try {
      candidates = select_candidates(d, index, model, config.strategy, config.titles_only)
                       .selected;
    } catch (const InsufficientEvidence&) {
      // Use whichever of P_d, M_d exists, unscored.
      SentenceRefs p = index.pd(d);
      if (config.titles_only) {
        candidates = headlines(index.published_near(d));
      } else {
        candidates = p.empty() ? index.md(d) : p;
      }
    }
    if (candidates.empty()) continue;
    summarize::SummaryRequest req{candidates, config.k, task.queries, &model};
    SentenceRefs summary = summarize::summarize(config.summarizer, req);
    if (summary.empty()) continue;
    TimelineEntry e{d, {}};
    for (const Sentence* s : summary) e.sentences.push_back(s->text);
    entries.push_back(std::move(e));
  }
  result.timeline = Timeline(std::move(entries));
  if (result.timeline.empty()) result.warning = std::string(kNoSummarizableDates);
  return result;
}

}  // namespace tlsum::datewise
