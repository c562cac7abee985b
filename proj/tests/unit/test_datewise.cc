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
#include <random>
#include <set>

#include "doctest.h"
#include "test_util.h"
#include "tlsum/synthetic.h"
#include "tlsum/text.h"

using namespace tlsum;
using namespace tlsum::datewise;
using tlsum::testing::article;
using tlsum::testing::day;
using vecspace::Feature;
using vecspace::SparseVector;

namespace {

std::vector<std::string> numbered(int n, const std::string& stem) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(stem + " " + std::to_string(i) + ".");
  return out;
}

std::set<std::pair<std::string, int>> keys(const SentenceRefs& refs) {
  std::set<std::pair<std::string, int>> out;
  for (const Sentence* s : refs) out.insert({s->article_id, s->index});
  return out;
}

}  // namespace

TEST_CASE("build_pd takes the first 5 sentences in the publication window") {
  const Date d = day(10);
  std::vector<Article> arts = {article("a", d, numbered(8, "Lead")),
                               article("b", d + 3, numbered(4, "Late")),
                               article("c", d + 2, numbered(3, "Short")),
                               article("e", d - 1, numbered(3, "Early"))};
  auto pd = build_pd(d, arts);
  CHECK(keys(pd) == std::set<std::pair<std::string, int>>{
                        {"a", 0}, {"a", 1}, {"a", 2}, {"a", 3}, {"a", 4}, {"c", 0}, {"c", 1}, {"c", 2}});
  DateIndex index(arts);
  CHECK(index.pd(d) == pd);
}

TEST_CASE("build_md finds every sentence mentioning the date once") {
  const Date d = day(40);
  std::vector<Article> arts = {
      article("a", d - 30, {"Vote set for " + d.iso() + ".", "Unrelated."}),
      article("b", d + 5, {"On " + d.iso() + " and again on " + d.iso() + "."})};
  auto md = build_md(d, arts);
  CHECK(keys(md) == std::set<std::pair<std::string, int>>{{"a", 0}, {"b", 0}});
  CHECK(build_md(d + 1, arts).empty());
  DateIndex index(arts);
  CHECK(index.md(d) == md);
  CHECK(index.md(d + 1).empty());
}

TEST_CASE("date vector examples") {
  std::vector<SparseVector> p = {SparseVector::from_pairs({{0, 1.0}})};
  std::vector<SparseVector> m = {SparseVector::from_pairs({{1, 1.0}})};
  CHECK(date_vector(p, m).empty());
  std::vector<SparseVector> same = {SparseVector::from_pairs({{3, 1.0}})};
  auto x = date_vector(same, same);
  REQUIRE(x.size() == 1);
  CHECK(x.weight(3) == doctest::Approx(2.0));
  std::vector<SparseVector> p2 = {SparseVector::from_pairs({{0, 0.6}, {1, 0.8}})};
  std::vector<SparseVector> m2 = {SparseVector::from_pairs({{1, 1.0}})};
  auto y = date_vector(p2, m2);
  CHECK(y.weight(0) == 0.0);
  CHECK(y.weight(1) == doctest::Approx(1.8));
  try {
    date_vector(std::span<const SparseVector>(), m);
    FAIL("expected an error");
  } catch (const InsufficientEvidence& e) {
    CHECK(std::string(e.what()) == "insufficient-evidence");
  }
  CHECK_THROWS_AS(date_vector(p, std::span<const SparseVector>()), InsufficientEvidence);
}

TEST_CASE("date vector support and scale laws") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_set = [&](size_t n) {
    std::vector<SparseVector> out;
    for (size_t i = 0; i < n; ++i) {
      std::vector<Feature> f;
      for (int j = 0; j < 15; ++j) {
        if (u(rng) < 0.3) f.push_back({j, u(rng)});
      }
      out.push_back(SparseVector::from_pairs(f).normalized());
    }
    return out;
  };
  for (int t = 0; t < 200; ++t) {
    auto p = random_set(1 + rng() % 5);
    auto m = random_set(1 + rng() % 5);
    auto x = date_vector(p, m);
    auto mp = vecspace::mean(p), mm = vecspace::mean(m);
    for (int j = 0; j < 15; ++j) {
      bool both = mp.weight(j) > 0 && mm.weight(j) > 0;
      CHECK((x.weight(j) > 0) == both);
    }
    const double c = 0.1 + 5.0 * u(rng);
    std::vector<SparseVector> ps, ms;
    for (const auto& v : p) ps.push_back(v.scaled(c));
    for (const auto& v : m) ms.push_back(v.scaled(c));
    auto xs = date_vector(ps, ms);
    for (int j = 0; j < 15; ++j) CHECK(xs.weight(j) == doctest::Approx(c * x.weight(j)));
    std::vector<double> s1, s2;
    for (const auto& v : p) s1.push_back(vecspace::cosine(v, x));
    for (const auto& v : ps) s2.push_back(vecspace::cosine(v, xs));
    for (size_t a = 0; a < s1.size(); ++a) {
      for (size_t b = 0; b < s1.size(); ++b) {
        if (s1[a] > s1[b] + 1e-9) CHECK(s2[a] > s2[b]);
      }
    }
  }
}

TEST_CASE("knee threshold examples") {
  CHECK(knee_threshold(std::vector<double>{1.0, 0.95, 0.9, 0.1, 0.05}) == 0.9);
  CHECK(knee_threshold(std::vector<double>{0.05, 0.9, 1.0, 0.1, 0.95}) == 0.9);
  CHECK(knee_threshold(std::vector<double>{1.0, 0.75, 0.5, 0.25, 0.0}) == 1.0);
  CHECK(knee_threshold(std::vector<double>{0.7, 0.2}) == 0.2);
  CHECK(knee_threshold(std::vector<double>{0.4}) == 0.4);
  CHECK(knee_threshold(std::vector<double>{0.3, 0.3, 0.3, 0.3}) == 0.3);
  CHECK(knee_threshold(std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0}) == 1.0);
}

TEST_CASE("knee threshold keeps at least one score") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> s(1 + rng() % 12);
    for (double& v : s) v = u(rng);
    double th = knee_threshold(s);
    CHECK(std::count_if(s.begin(), s.end(), [&](double v) { return v >= th; }) >= 1);
    CHECK(std::find(s.begin(), s.end(), th) != s.end());
  }
}

TEST_CASE("PM-Mean keeps the sentence aligned with the date vector") {
  const Date d = day(30);
  std::vector<Article> arts = {article(
      "a", d, {"Alpha beta on " + d.iso() + ".", "Gamma.", "Delta.", "Epsilon.", "Zeta."})};
  auto model = fit_sentence_model(arts);
  auto c = select_candidates(d, arts, model, CandidateStrategy::kPMMean);
  CHECK(c.p_sents.size() == 5);
  CHECK(c.m_sents.size() == 1);
  REQUIRE(c.selected.size() == 1);
  CHECK(c.selected[0]->index == 0);
  REQUIRE(c.scores.size() == 5);
  CHECK(c.scores[0] == doctest::Approx(1.0));
}

TEST_CASE("pass-through strategies and the zero date vector") {
  const Date d = day(30);
  std::vector<Article> arts = {article("a", d, {"Alpha.", "Beta."}),
                               article("b", d - 30, {"Gamma on " + d.iso() + "."})};
  auto model = fit_sentence_model(arts);
  auto p = select_candidates(d, arts, model, CandidateStrategy::kP);
  CHECK(p.selected == build_pd(d, arts));
  CHECK(p.scores.empty());
  auto m = select_candidates(d, arts, model, CandidateStrategy::kM);
  CHECK(m.selected == build_md(d, arts));
  auto pm = select_candidates(d, arts, model, CandidateStrategy::kPMMean);
  CHECK(pm.date_vector.empty());
  CHECK(pm.selected.size() == 3);
  for (double s : pm.scores) CHECK(s == 0.0);
  CHECK_THROWS_AS(select_candidates(d + 100, arts, model, CandidateStrategy::kPMMean),
                  InsufficientEvidence);
}

TEST_CASE("selected candidates come from P_d and M_d and the date vector support law holds") {
  auto corpus = synthetic::generate({});
  auto task = corpus.to_task();
  auto model = fit_sentence_model(task.articles);
  DateIndex index(task.articles);
  for (const auto& e : task.ground_truth.entries()) {
    auto c = select_candidates(e.date, index, model, CandidateStrategy::kPMMean);
    auto allowed = keys(c.p_sents);
    for (const auto& k : keys(c.m_sents)) allowed.insert(k);
    CHECK_FALSE(c.selected.empty());
    for (const auto& k : keys(c.selected)) CHECK(allowed.contains(k));
    std::vector<SparseVector> pv, mv;
    for (const Sentence* s : c.p_sents) pv.push_back(vecspace::vectorize(s->tokens, model));
    for (const Sentence* s : c.m_sents) mv.push_back(vecspace::vectorize(s->tokens, model));
    auto mp = vecspace::mean(pv), mm = vecspace::mean(mv);
    for (const auto& f : c.date_vector.features()) {
      CHECK(mp.weight(f.index) > 0);
      CHECK(mm.weight(f.index) > 0);
    }
  }
}

TEST_CASE("the sentence model ignores stopwords") {
  std::vector<Article> arts = {article("a", day(1), {"The verdict was a surprise."})};
  auto model = fit_sentence_model(arts);
  CHECK_FALSE(model.index_of("the").has_value());
  CHECK(model.index_of("verdict").has_value());
}

namespace {

// Dates day(0), day(10), day(20) with 3, 2 and 1 mentions; day(10) has no
// keyphrase anywhere near it.
Task skip_task() {
  Task t;
  t.name = "acme/t";
  t.queries = {"Acme"};
  const Date d1 = day(0), d2 = day(10), d3 = day(20);
  t.articles = {
      article("a", d1, {"Acme signed on " + d1.iso() + ".", "Acme shares rose " + d1.iso() + ".",
                        "Acme staff cheered on " + d1.iso() + "."}),
      article("b", d2, {"Rain fell on " + d2.iso() + ".", "Floods followed on " + d2.iso() + "."}),
      article("c", d3, {"Acme closed a plant on " + d3.iso() + "."}),
  };
  t.ground_truth = tlsum::testing::timeline({{d1, {"x"}}, {d2, {"y"}}, {d3, {"z"}}});
  return t;
}

}  // namespace

TEST_CASE("unsummarizable dates are skipped") {
  auto t = skip_task();
  CHECK(rank_task_dates(t, DateSelector::kMentionCount, nullptr) ==
        std::vector<Date>{day(0), day(10), day(20)});
  DatewiseConfig cfg;
  cfg.selector = DateSelector::kMentionCount;
  cfg.l = 2;
  auto r = build_datewise_timeline(t, cfg);
  CHECK(r.timeline.dates() == std::vector<Date>{day(0), day(20)});
  CHECK(r.warning.empty());
  cfg.l = 10;
  CHECK(build_datewise_timeline(t, cfg).timeline.dates() == std::vector<Date>{day(0), day(20)});
}

TEST_CASE("no summarizable dates gives an empty timeline with a warning") {
  auto t = skip_task();
  t.queries = {"Nowhere"};
  DatewiseConfig cfg;
  auto r = build_datewise_timeline(t, cfg);
  CHECK(r.timeline.empty());
  CHECK(r.warning == kNoSummarizableDates);
}

TEST_CASE("titles-only summaries are drawn from titles") {
  auto t = skip_task();
  t.articles[0] = article("a", day(0), {"Signed on " + day(0).iso() + ".", "Rose " + day(0).iso() + "."},
                          "Acme signs the merger");
  t.articles[2] = article("c", day(20), {"Closed on " + day(20).iso() + "."}, "Acme closes a plant");
  for (auto strategy : {CandidateStrategy::kP, CandidateStrategy::kPMMean}) {
    DatewiseConfig cfg;
    cfg.strategy = strategy;
    cfg.titles_only = true;
    auto r = build_datewise_timeline(t, cfg);
    REQUIRE(r.timeline.size() == 2);
    CHECK(r.timeline.entries()[0].sentences == std::vector<std::string>{"Acme signs the merger"});
    CHECK(r.timeline.entries()[1].sentences == std::vector<std::string>{"Acme closes a plant"});
  }
}

TEST_CASE("timeline shape invariants on a synthetic corpus") {
  synthetic::SyntheticSpec spec;
  spec.overlap = 0.3;
  spec.seed = 5;
  auto task = synthetic::generate(spec).to_task();
  for (int l : {1, 3, 10}) {
    for (int k : {1, 2}) {
      for (auto strategy : {CandidateStrategy::kP, CandidateStrategy::kM, CandidateStrategy::kPMMean}) {
        for (auto method : {summarize::Method::kTextRank, summarize::Method::kCentroidRank,
                            summarize::Method::kCentroidOpt, summarize::Method::kSubmodular}) {
          DatewiseConfig cfg;
          cfg.selector = DateSelector::kPubCount;
          cfg.strategy = strategy;
          cfg.summarizer = method;
          cfg.l = l;
          cfg.k = k;
          auto r = build_datewise_timeline(task, cfg);
          CHECK(r.timeline.size() <= static_cast<size_t>(l));
          for (const auto& e : r.timeline.entries()) {
            CHECK(e.sentences.size() <= static_cast<size_t>(k));
            for (const auto& s : e.sentences) CHECK(text::contains_any(s, task.queries));
          }
        }
      }
    }
  }
}

TEST_CASE("strategy and selector names") {
  for (auto s : {CandidateStrategy::kP, CandidateStrategy::kM, CandidateStrategy::kPMMean,
                 CandidateStrategy::kPublishedOnDay}) {
    CHECK(parse_strategy(strategy_name(s)) == s);
  }
  for (auto s : {DateSelector::kPubCount, DateSelector::kMentionCount, DateSelector::kSupervisedClf,
                 DateSelector::kSupervisedReg}) {
    CHECK(parse_selector(selector_name(s)) == s);
  }
  CHECK_THROWS(parse_strategy("q"));
  CHECK_THROWS(parse_selector("random"));
  CHECK(is_supervised(DateSelector::kSupervisedReg));
  CHECK_FALSE(is_supervised(DateSelector::kMentionCount));
}

TEST_CASE("supervised selection needs a model") {
  auto t = skip_task();
  DatewiseConfig cfg;
  cfg.selector = DateSelector::kSupervisedClf;
  CHECK_THROWS_AS(build_datewise_timeline(t, cfg), std::invalid_argument);
}
