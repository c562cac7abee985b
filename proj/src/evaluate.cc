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

#include "tlsum/evaluate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "tlsum/dateselect.h"
#include "tlsum/datewise.h"
#include "tlsum/summarize.h"
#include "tlsum/text.h"

namespace tlsum::evaluate {

namespace {

using Counts = std::unordered_map<std::string, int>;

Counts ngram_counts(std::span<const std::string> tokens, int n) {
  Counts out;
  if (tokens.size() < static_cast<size_t>(n)) return out;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    if (n == 1) {
      ++out[tokens[i]];
    } else {
      ++out[tokens[i] + '\x1f' + tokens[i + 1]];
    }
  }
  return out;
}

int total(const Counts& c) {
  int t = 0;
  for (const auto& [g, n] : c) t += n;
  return t;
}

int clipped_match(const Counts& cand, const Counts& ref) {
  int m = 0;
  for (const auto& [g, n] : cand) {
    auto it = ref.find(g);
    if (it != ref.end()) m += std::min(n, it->second);
  }
  return m;
}

void check_n(int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("ROUGE order must be 1 or 2");
}

std::string joined(const TimelineEntry& e) {
  std::string out;
  for (const auto& s : e.sentences) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

struct DateCounts {
  Date date;
  Counts grams;
  int total = 0;
};

std::vector<DateCounts> timeline_counts(const Timeline& t, int n, const RougeOptions& opt) {
  std::vector<DateCounts> out;
  for (const auto& e : t.entries()) {
    DateCounts d;
    d.date = e.date;
    auto toks = rouge_tokens(joined(e), opt);
    d.grams = ngram_counts(toks, n);
    d.total = total(d.grams);
    out.push_back(std::move(d));
  }
  return out;
}

// One alignment pass from `from` onto `to`; returns the weighted match sum.
double align_pass(const std::vector<DateCounts>& from, const std::vector<DateCounts>& to,
                  std::vector<AlignedPair>& pairs) {
  double weighted = 0.0;
  for (const auto& f : from) {
    double best = -1.0;
    const DateCounts* partner = nullptr;
    int partner_match = 0;
    for (const auto& t : to) {
      int m = clipped_match(f.grams, t.grams);
      double p = f.total > 0 ? static_cast<double>(m) / f.total : 0.0;
      double r = t.total > 0 ? static_cast<double>(m) / t.total : 0.0;
      double w = alignment_weight(t.date - f.date);
      double score = w * harmonic(p, r);
      // `to` is in date order, so strict improvement keeps the earlier date.
      if (score > best) {
        best = score;
        partner = &t;
        partner_match = m;
      }
    }
    if (partner == nullptr) continue;
    double w = alignment_weight(partner->date - f.date);
    pairs.push_back({f.date, partner->date, w});
    weighted += w * partner_match;
  }
  return weighted;
}

}  // namespace

double harmonic(double p, double r) {
  return p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
}

std::vector<std::string> rouge_tokens(std::string_view text_in, const RougeOptions& options) {
  std::vector<std::string> toks = text::tokenize(text_in);
  if (options.remove_stopwords) toks = text::content_tokens(toks);
  if (options.stem) {
    for (auto& t : toks) t = text::porter_stem(t);
  }
  return toks;
}

Prf rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
            int n) {
  check_n(n);
  Counts c = ngram_counts(candidate, n);
  Counts r = ngram_counts(reference, n);
  int tc = total(c), tr = total(r);
  if (tc == 0 || tr == 0) return {};
  int m = clipped_match(c, r);
  Prf out;
  out.precision = static_cast<double>(m) / tc;
  out.recall = static_cast<double>(m) / tr;
  out.f1 = harmonic(out.precision, out.recall);
  return out;
}

Prf date_f1(const Timeline& system, const Timeline& reference) {
  std::set<Date> s, r;
  for (const auto& e : system.entries()) s.insert(e.date);
  for (const auto& e : reference.entries()) r.insert(e.date);
  if (s.empty() || r.empty()) return {};
  size_t hit = 0;
  for (Date d : s) hit += r.count(d);
  Prf out;
  out.precision = static_cast<double>(hit) / static_cast<double>(s.size());
  out.recall = static_cast<double>(hit) / static_cast<double>(r.size());
  out.f1 = harmonic(out.precision, out.recall);
  return out;
}

AlignmentScore alignment_rouge_detail(const Timeline& system, const Timeline& reference,
                                      int n, const RougeOptions& options) {
  check_n(n);
  AlignmentScore out;
  auto sys = timeline_counts(system, n, options);
  auto ref = timeline_counts(reference, n, options);
  int sys_total = 0, ref_total = 0;
  for (const auto& d : sys) sys_total += d.total;
  for (const auto& d : ref) ref_total += d.total;
  double p_match = align_pass(sys, ref, out.precision_pairs);
  double r_match = align_pass(ref, sys, out.recall_pairs);
  out.prf.precision = sys_total > 0 ? p_match / sys_total : 0.0;
  out.prf.recall = ref_total > 0 ? r_match / ref_total : 0.0;
  out.prf.f1 = harmonic(out.prf.precision, out.prf.recall);
  return out;
}

double alignment_rouge(const Timeline& system, const Timeline& reference, int n,
                       const RougeOptions& options) {
  return alignment_rouge_detail(system, reference, n, options).prf.f1;
}

SentenceRefs greedy_oracle(const SentenceRefs& candidates_in,
                           std::span<const std::string> reference_tokens, int k) {
  if (k < 1) throw std::invalid_argument("greedy_oracle: k must be >= 1");
  SentenceRefs candidates = candidates_in;
  std::sort(candidates.begin(), candidates.end(),
            [](const Sentence* a, const Sentence* b) { return sentence_key_less(*a, *b); });
  const Counts ref = ngram_counts(reference_tokens, 1);
  const int ref_total = total(ref);
  std::vector<Counts> grams;
  grams.reserve(candidates.size());
  for (const Sentence* s : candidates) grams.push_back(ngram_counts(rouge_tokens(s->text), 1));

  Counts chosen;
  int chosen_total = 0;
  int chosen_match = 0;
  std::vector<bool> used(candidates.size(), false);
  SentenceRefs out;
  while (out.size() < static_cast<size_t>(k)) {
    size_t best_i = candidates.size();
    double best_f = -1.0;
    int best_match = 0;
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (used[i]) continue;
      int m = chosen_match;
      for (const auto& [g, c] : grams[i]) {
        auto it = ref.find(g);
        if (it == ref.end()) continue;
        auto ch = chosen.find(g);
        int have = ch == chosen.end() ? 0 : ch->second;
        m += std::min(have + c, it->second) - std::min(have, it->second);
      }
      int t = chosen_total + total(grams[i]);
      double p = t > 0 ? static_cast<double>(m) / t : 0.0;
      double r = ref_total > 0 ? static_cast<double>(m) / ref_total : 0.0;
      double f = harmonic(p, r);
      if (f > best_f) {
        best_f = f;
        best_i = i;
        best_match = m;
      }
    }
    if (best_i == candidates.size()) break;
    used[best_i] = true;
    out.push_back(candidates[best_i]);
    for (const auto& [g, c] : grams[best_i]) chosen[g] += c;
    chosen_total += total(grams[best_i]);
    chosen_match = best_match;
  }
  return out;
}

const char* oracle_name(OracleMode m) {
  switch (m) {
    case OracleMode::kDate:
      return "date";
    case OracleMode::kText:
      return "text";
    case OracleMode::kFull:
      return "full";
  }
  return "unknown";
}

OracleMode parse_oracle(std::string_view name) {
  if (name == "date") return OracleMode::kDate;
  if (name == "text") return OracleMode::kText;
  if (name == "full") return OracleMode::kFull;
  throw std::invalid_argument("unknown oracle '" + std::string(name) + "'");
}

SentenceRefs oracle_pool(Date d, std::span<const Article> articles,
                         std::span<const std::string> queries) {
  SentenceRefs out;
  for (const auto& a : articles) {
    bool near = a.pub_date >= d && a.pub_date <= d + kOracleWindowDays;
    for (const auto& s : a.sentences) {
      bool lead = near && s.index < datewise::kLeadSentences;
      if ((lead || s.mentions_date(d)) && text::contains_any(s.text, queries)) {
        out.push_back(&s);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Sentence* a, const Sentence* b) { return sentence_key_less(*a, *b); });
  return out;
}

Timeline oracle_timeline(const Task& task, OracleMode mode, const LinearModel* regression_model) {
  const Timeline& gt = task.ground_truth;
  if (gt.empty()) return {};
  const int k = task.target_k();

  std::vector<Date> dates;
  if (mode == OracleMode::kText) {
    if (regression_model == nullptr) {
      throw std::invalid_argument("text oracle requires a date regression model");
    }
    auto stats = dateselect::collect_dates(task);
    auto ranked = dateselect::rank_dates_supervised(stats, *regression_model);
    ranked.resize(std::min(ranked.size(), gt.num_dates()));
    dates = std::move(ranked);
  } else {
    dates = gt.dates();
  }

  vecspace::TfidfModel model;
  bool have_model = false;
  if (mode == OracleMode::kDate) {
    try {
      model = datewise::fit_sentence_model(task.articles);
      have_model = true;
    } catch (const std::invalid_argument&) {
      return {};
    }
  }

  const std::vector<Date> gt_dates = gt.dates();
  auto reference_for = [&](Date d) -> const TimelineEntry* {
    if (const TimelineEntry* e = gt.find(d)) return e;
    const TimelineEntry* best = nullptr;
    int best_gap = 0;
    for (const auto& e : gt.entries()) {
      int gap = std::abs(e.date - d);
      if (best == nullptr || gap < best_gap) {
        best = &e;
        best_gap = gap;
      }
    }
    return best;
  };

  std::vector<TimelineEntry> entries;
  for (Date d : dates) {
    SentenceRefs pool = oracle_pool(d, task.articles, task.queries);
    if (pool.empty()) continue;
    SentenceRefs summary;
    if (mode == OracleMode::kDate && have_model) {
      summarize::SummaryRequest req{pool, k, task.queries, &model};
      summary = summarize::summarize_centroid_opt(req);
    } else {
      auto ref_tokens = rouge_tokens(joined(*reference_for(d)));
      summary = greedy_oracle(pool, ref_tokens, k);
    }
    if (summary.empty()) continue;
    TimelineEntry e{d, {}};
    for (const Sentence* s : summary) e.sentences.push_back(s->text);
    entries.push_back(std::move(e));
  }
  return Timeline(std::move(entries));
}

double approx_randomization(std::span<const double> a, std::span<const double> b,
                            int resamples, uint64_t seed) {
  if (a.size() != b.size()) throw std::invalid_argument("approx_randomization: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("approx_randomization: need >= 2 tasks");
  if (resamples < 1) throw std::invalid_argument("approx_randomization: resamples must be >= 1");
  const size_t n = a.size();
  std::vector<double> diff(n);
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    diff[i] = a[i] - b[i];
    sum += diff[i];
  }
  const double observed = std::abs(sum) / static_cast<double>(n);
  // Guards ties against summation-order noise.
  const double slack = 1e-12 * std::max(1.0, observed);
  int count = 0;
  for (int r = 0; r < resamples; ++r) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(r)};
    std::mt19937_64 gen(seq);
    double s = 0.0;
    uint64_t bits = 0;
    for (size_t i = 0; i < n; ++i) {
      if (i % 64 == 0) bits = gen();
      s += (bits & 1) ? -diff[i] : diff[i];
      bits >>= 1;
    }
    if (std::abs(s) / static_cast<double>(n) >= observed - slack) ++count;
  }
  return (count + 1.0) / (resamples + 1.0);
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<size_t> order(v.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return v[x] < v[y]; });
  std::vector<double> rank(v.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t t = i; t <= j; ++t) rank[order[t]] = avg;
    i = j + 1;
  }
  return rank;
}

}  // namespace

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("spearman: length mismatch");
  if (xs.size() < 3) throw std::invalid_argument("spearman: need >= 3 values");
  auto rx = average_ranks(xs);
  auto ry = average_ranks(ys);
  const double n = static_cast<double>(rx.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("zero-variance");
  return sxy / std::sqrt(sxx * syy);
}

double adjacent_date_ratio(const Timeline& timeline) {
  const auto& e = timeline.entries();
  if (e.size() < 2) return 0.0;
  size_t adjacent = 0;
  for (size_t i = 1; i < e.size(); ++i) {
    if (e[i].date - e[i - 1].date == 1) ++adjacent;
  }
  return static_cast<double>(adjacent) / static_cast<double>(e.size() - 1);
}

TaskScore score_timeline(const Timeline& system, const Timeline& reference,
                         const RougeOptions& options) {
  TaskScore s;
  s.ar1_f = alignment_rouge(system, reference, 1, options);
  s.ar2_f = alignment_rouge(system, reference, 2, options);
  s.date_f1 = date_f1(system, reference).f1;
  return s;
}

void EvalResult::aggregate() {
  ar1_f = ar2_f = date_f1 = 0.0;
  if (per_task.empty()) return;
  for (const auto& [name, s] : per_task) {
    ar1_f += s.ar1_f;
    ar2_f += s.ar2_f;
    date_f1 += s.date_f1;
  }
  const double n = static_cast<double>(per_task.size());
  ar1_f /= n;
  ar2_f /= n;
  date_f1 /= n;
}

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string EvalResult::to_json() const {
  nlohmann::ordered_json doc;
  doc["n_tasks"] = per_task.size();
  doc["ar1_f"] = ar1_f;
  doc["ar2_f"] = ar2_f;
  doc["date_f1"] = date_f1;
  nlohmann::ordered_json tasks = nlohmann::ordered_json::object();
  for (const auto& [name, s] : per_task) {
    tasks[name] = {{"ar1_f", s.ar1_f}, {"ar2_f", s.ar2_f}, {"date_f1", s.date_f1}};
  }
  doc["per_task"] = std::move(tasks);
  return doc.dump(2) + "\n";
}

std::string EvalResult::to_csv() const {
  std::string out = "task,ar1_f,ar2_f,date_f1\n";
  for (const auto& [name, s] : per_task) {
    std::string quoted = name;
    if (quoted.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char c : name) {
        if (c == '"') q += '"';
        q += c;
      }
      quoted = q + "\"";
    }
    out += quoted + "," + fixed(s.ar1_f) + "," + fixed(s.ar2_f) + "," + fixed(s.date_f1) + "\n";
  }
  return out;
}

}  // namespace tlsum::evaluate
