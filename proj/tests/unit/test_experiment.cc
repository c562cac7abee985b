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

#include "tlsum/experiment.h"

#include "doctest.h"
#include "tlsum/synthetic.h"

using namespace tlsum;
using pipeline::ConfigError;
using pipeline::MethodKind;
using pipeline::RunConfig;

namespace {

std::vector<Task> tasks(int n) {
  std::vector<Task> out;
  for (int i = 0; i < n; ++i) {
    synthetic::SyntheticSpec spec;
    spec.seed = 100 + static_cast<uint64_t>(i);
    spec.topic = "topic" + std::to_string(i);
    spec.n_events = 6;
    spec.noise_articles = 25;
    spec.span_days = 120;
    spec.overlap = 0.2;
    out.push_back(synthetic::generate(spec).to_task());
  }
  return out;
}

RunConfig unsupervised() {
  RunConfig c;
  c.date_selector = datewise::DateSelector::kMentionCount;
  return c;
}

void check_same(const evaluate::EvalResult& a, const evaluate::EvalResult& b) {
  CHECK(a.ar1_f == b.ar1_f);
  CHECK(a.ar2_f == b.ar2_f);
  CHECK(a.date_f1 == b.date_f1);
  REQUIRE(a.per_task.size() == b.per_task.size());
  for (const auto& [name, s] : a.per_task) {
    const auto& t = b.per_task.at(name);
    CHECK(s.ar1_f == t.ar1_f);
    CHECK(s.ar2_f == t.ar2_f);
    CHECK(s.date_f1 == t.date_f1);
  }
}

}  // namespace

TEST_CASE("unsupervised results do not depend on the other tasks") {
  auto all = tasks(3);
  for (MethodKind m : {MethodKind::kDatewise, MethodKind::kClust, MethodKind::kPubCount}) {
    RunConfig c = unsupervised();
    c.method = m;
    auto full = experiment::loocv(all, c);
    for (size_t i = 0; i < all.size(); ++i) {
      auto alone = experiment::loocv(std::span<const Task>(&all[i], 1), c);
      const auto& s = full.eval.per_task.at(all[i].name);
      const auto& t = alone.eval.per_task.at(all[i].name);
      CHECK(s.ar1_f == t.ar1_f);
      CHECK(s.ar2_f == t.ar2_f);
      CHECK(s.date_f1 == t.date_f1);
      CHECK(full.runs[i].timeline == alone.runs[0].timeline);
      CHECK(!full.models[i].date_model);
    }
  }
}

TEST_CASE("three tasks give three rounds trained on the others") {
  auto all = tasks(3);
  RunConfig c;
  c.date_selector = datewise::DateSelector::kSupervisedReg;
  auto r = experiment::loocv(all, c);
  CHECK(r.rounds == 3);
  REQUIRE(r.runs.size() == 3);
  REQUIRE(r.models.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(r.runs[i].task == all[i].name);
    std::vector<Task> others;
    for (size_t j = 0; j < 3; ++j) {
      if (j != i) others.push_back(all[j]);
    }
    auto direct = dateselect::train_date_selector(others, LinearMode::kRegression);
    REQUIRE(r.models[i].date_model);
    CHECK(r.models[i].date_model->weights == direct.weights);
    CHECK(r.models[i].date_model->bias == direct.bias);
  }
  double mean = 0;
  for (const auto& [n, s] : r.eval.per_task) mean += s.ar1_f;
  CHECK(r.eval.ar1_f == doctest::Approx(mean / 3));
}

TEST_CASE("loocv is deterministic and independent of the job count") {
  auto all = tasks(3);
  for (const char* ranker : {"datementioncount", "regression-dates"}) {
    RunConfig c;
    c.method = MethodKind::kClust;
    c.cluster_ranker = cluster::parse_ranker(ranker);
    auto a = experiment::loocv(all, c, 1);
    auto b = experiment::loocv(all, c, 1);
    auto d = experiment::loocv(all, c, 3);
    check_same(a.eval, b.eval);
    check_same(a.eval, d.eval);
    for (size_t i = 0; i < all.size(); ++i) CHECK(a.runs[i].timeline == d.runs[i].timeline);
  }
  RunConfig clf;
  check_same(experiment::loocv(all, clf, 1).eval, experiment::loocv(all, clf, 2).eval);
}

TEST_CASE("supervised configs need two tasks") {
  auto one = tasks(1);
  RunConfig c;
  CHECK_THROWS_AS(experiment::loocv(one, c), ConfigError);
  RunConfig clust;
  clust.method = MethodKind::kClust;
  clust.cluster_ranker = cluster::parse_ranker("regression-rouge");
  CHECK_THROWS_AS(experiment::loocv(one, clust), ConfigError);
  CHECK_NOTHROW(experiment::loocv(one, unsupervised()));
}

TEST_CASE("loocv validates the config") {
  auto all = tasks(2);
  RunConfig c = unsupervised();
  c.method = MethodKind::kClust;
  c.titles_only = true;
  CHECK_THROWS_AS(experiment::loocv(all, c), ConfigError);
}

TEST_CASE("rouge options reach the scores") {
  auto all = tasks(2);
  RunConfig c = unsupervised();
  evaluate::RougeOptions stem;
  stem.stem = true;
  stem.remove_stopwords = true;
  auto plain = experiment::loocv(all, c);
  auto filtered = experiment::loocv(all, c, 1, stem);
  for (size_t i = 0; i < all.size(); ++i) {
    auto expected = evaluate::score_timeline(plain.runs[i].timeline, all[i].ground_truth, stem);
    CHECK(filtered.eval.per_task.at(all[i].name).ar1_f == expected.ar1_f);
  }
}
