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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cli_util.h"
#include "oracles.h"
#include "summary_oracles.h"
#include "test_util.h"
#include "tlsum/cluster.h"
#include "tlsum/datewise.h"
#include "tlsum/evaluate.h"
#include "tlsum/experiment.h"
#include "tlsum/linear.h"
#include "tlsum/pipeline.h"
#include "tlsum/synthetic.h"

using namespace tlsum;
using namespace tlsum::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = "failed: " + what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome support_law() {
  Outcome o;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int dim = 20;
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    auto random_set = [&](size_t n, std::vector<std::vector<double>>& dense) {
      std::vector<vecspace::SparseVector> out;
      for (size_t i = 0; i < n; ++i) {
        std::vector<double> row(dim, 0.0);
        std::vector<vecspace::Feature> f;
        for (int j = 0; j < dim; ++j) {
          if (u(rng) < 0.3) {
            row[j] = u(rng) + 1e-3;
            f.push_back({j, row[j]});
          }
        }
        dense.push_back(row);
        out.push_back(vecspace::SparseVector::from_pairs(f));
      }
      return out;
    };
    std::vector<std::vector<double>> dp, dm;
    auto p = random_set(1 + rng() % 6, dp);
    auto m = random_set(1 + rng() % 6, dm);
    auto x = datewise::date_vector(p, m);
    for (int j = 0; j < dim; ++j) {
      double mp = 0, mm = 0;
      for (const auto& r : dp) mp += r[j];
      for (const auto& r : dm) mm += r[j];
      mp /= static_cast<double>(dp.size());
      mm /= static_cast<double>(dm.size());
      const bool both = mp > 0 && mm > 0;
      const double expected =
          both ? mp / static_cast<double>(dp.size()) + mm / static_cast<double>(dm.size()) : 0.0;
      o.require((x.weight(j) != 0.0) == both, "support mismatch");
      worst = std::max(worst, std::abs(x.weight(j) - expected));
    }
  }
  o.require(worst <= 1e-12, "value error above 1e-12");
  if (o.pass) o.detail = fmt("1000 cases, max value error %.2e", worst);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(2002);
  const std::vector<std::string> words = {"storm", "vote", "court", "bank", "fire", "match",
                                          "river", "rain",  "city",  "law",  "key",  "port"};
  auto sentence = [&](int len) {
    std::string s;
    for (int i = 0; i < len; ++i) s += (i ? " " : "") + words[rng() % words.size()];
    return s + ".";
  };
  auto unigram_f1 = [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::map<std::string, int> ca, cb;
    for (const auto& t : a) ++ca[t];
    for (const auto& t : b) ++cb[t];
    int m = 0;
    for (const auto& [g, c] : ca) m += std::min(c, cb.count(g) ? cb[g] : 0);
    if (m == 0) return 0.0;
    double p = static_cast<double>(m) / a.size(), r = static_cast<double>(m) / b.size();
    return 2 * p * r / (p + r);
  };
  int greedy_matches = 0;
  for (int t = 0; t < 200; ++t) {
    std::deque<Sentence> store;
    SentenceRefs cands;
    int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      store.push_back(make_sentence("a" + std::to_string(i), 0, sentence(1 + rng() % 8), Date()));
      cands.push_back(&store.back());
    }
    auto ref = evaluate::rouge_tokens(sentence(4 + rng() % 8));
    double best = -1;
    const Sentence* arg = nullptr;
    for (const Sentence* s : cands) {
      double f = unigram_f1(evaluate::rouge_tokens(s->text), ref);
      if (f > best) {
        best = f;
        arg = s;
      }
    }
    auto got = evaluate::greedy_oracle(cands, ref, 1);
    if (got.size() == 1 && got[0] == arg) ++greedy_matches;
  }
  o.require(greedy_matches == 200, "greedy oracle k=1 differs from brute force");

  const double ratio = 1.0 - 1.0 / std::exp(1.0);
  double worst_c = 1.0, worst_s = 1.0;
  int instances = 0;
  for (int t = 0; t < 400; ++t) {
    auto p = random_pool(rng, 1 + rng() % 8);
    int k = 1 + static_cast<int>(rng() % 3);
    bool any_eligible = false;
    for (const auto& s : p.sents) any_eligible |= text::contains_any(s.text, std::vector<std::string>{"key"});
    if (!any_eligible) continue;
    ++instances;
    auto cobj = [&](const std::vector<size_t>& s) {
      SentenceRefs r;
      for (size_t i : s) r.push_back(&p.sents[i]);
      return centroid_objective(p, r);
    };
    auto sobj = [&](const std::vector<size_t>& s) { return submodular_objective(p, s); };
    double copt = brute_force(p, k, cobj);
    double cgot = cobj(positions(p, summarize::summarize_centroid_opt(p.request(k))));
    double sopt = brute_force(p, k, sobj);
    double sgot = sobj(positions(p, summarize::summarize_submodular(p.request(k))));
    if (copt > 0) worst_c = std::min(worst_c, cgot / copt);
    if (sopt > 0) worst_s = std::min(worst_s, sgot / sopt);
    o.require(cgot >= ratio * copt - 1e-12, "centroid-opt below (1-1/e) of optimum");
    o.require(sgot >= ratio * sopt - 1e-12, "submodular below (1-1/e) of optimum");
  }
  if (o.pass) {
    o.detail = "greedy k=1 200/200 exact; " + std::to_string(instances) +
               fmt(" subset instances, worst ratio centroid-opt %.4f submodular %.4f", worst_c,
                   worst_s);
  }
  return o;
}

Outcome mcl_planted() {
  Outcome o;
  auto start = Clock::now();
  cluster::ArticleGraph g;
  for (size_t i = 0; i < 8; ++i) {
    g.ids.push_back("n" + std::to_string(i));
    g.dates.push_back(day(static_cast<int>(i % 2)));
  }
  for (size_t base : {0u, 4u}) {
    for (size_t i = 0; i < 4; ++i) {
      for (size_t j = i + 1; j < 4; ++j) g.edges.push_back({base + i, base + j, 0.9});
    }
  }
  g.edges.push_back({3, 4, 0.05});
  std::sort(g.edges.begin(), g.edges.end(),
            [](const auto& x, const auto& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
  auto clusters = cluster::mcl(g);
  std::vector<std::vector<size_t>> expected = {{0, 1, 2, 3}, {4, 5, 6, 7}};
  std::vector<std::vector<size_t>> got;
  for (const auto& c : clusters) got.push_back(c.members);
  std::vector<DenseEdge> de;
  for (const auto& e : g.edges) de.push_back({e.a, e.b, e.weight});
  o.require(got == expected, "planted cliques not recovered");
  o.require(dense_mcl(8, de) == expected, "reference disagrees");
  cluster::ArticleGraph empty;
  for (size_t i = 0; i < 6; ++i) {
    empty.ids.push_back("e" + std::to_string(i));
    empty.dates.push_back(day(0));
  }
  auto singles = cluster::mcl(empty);
  bool all_single = singles.size() == 6;
  for (size_t i = 0; all_single && i < 6; ++i) all_single = singles[i].members == std::vector<size_t>{i};
  o.require(all_single, "empty graph not all singletons");
  double secs = seconds_since(start);
  o.require(secs < 1.0, "runtime above 1 s");
  if (o.pass) o.detail = fmt("2 clusters, 6 singletons, %.4f s", secs);
  return o;
}

Timeline random_timeline(std::mt19937_64& rng) {
  const std::vector<std::string> words = {"storm", "vote", "court", "bank", "fire",
                                          "match", "river", "rain", "city", "law"};
  std::vector<TimelineEntry> entries;
  int n = 1 + static_cast<int>(rng() % 8);
  for (int i = 0; i < n; ++i) {
    TimelineEntry e{day(static_cast<int>(rng() % 60)), {}};
    int s = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < s; ++j) {
      std::string text;
      int len = 2 + static_cast<int>(rng() % 8);
      for (int w = 0; w < len; ++w) text += (w ? " " : "") + words[rng() % words.size()];
      e.sentences.push_back(text + ".");
    }
    entries.push_back(std::move(e));
  }
  return Timeline(std::move(entries));
}

Outcome metric_identities() {
  Outcome o;
  std::mt19937_64 rng(3003);
  for (int i = 0; i < 100; ++i) {
    Timeline t = random_timeline(rng);
    o.require(evaluate::alignment_rouge(t, t, 1) == 1.0, "alignment_rouge(t, t, 1) != 1");
    o.require(evaluate::alignment_rouge(t, t, 2) == 1.0 || t.empty(), "alignment_rouge(t, t, 2) != 1");
    o.require(evaluate::date_f1(t, t).f1 == 1.0, "date_f1(t, t) != 1");
    Timeline u = random_timeline(rng);
    o.require(evaluate::date_f1(t, u).f1 == evaluate::date_f1(u, t).f1, "date_f1 not symmetric");
    // Adjacency against a direct count over the sorted dates.
    auto dates = t.dates();
    double expected = 0;
    if (dates.size() >= 2) {
      int adj = 0;
      for (size_t j = 1; j < dates.size(); ++j) adj += dates[j] - dates[j - 1] == 1;
      expected = static_cast<double>(adj) / static_cast<double>(dates.size() - 1);
    }
    o.require(evaluate::adjacent_date_ratio(t) == expected, "adjacent_date_ratio count");
  }
  auto a = timeline({{day(1), {"x"}}, {day(2), {"y"}}});
  auto b = timeline({{day(2), {"y"}}, {day(3), {"z"}}});
  auto half = evaluate::date_f1(a, b);
  o.require(half.precision == 0.5 && half.recall == 0.5 && half.f1 == 0.5, "date_f1 0.5 case");
  o.require(evaluate::date_f1(Timeline{}, b).f1 == 0.0, "empty system date_f1");
  auto mk = [](std::vector<int> ds) {
    std::vector<std::pair<Date, std::vector<std::string>>> e;
    for (int d : ds) e.push_back({day(d), {"x"}});
    return timeline(e);
  };
  o.require(evaluate::adjacent_date_ratio(mk({0, 1, 2})) == 1.0, "ratio {d, d+1, d+2}");
  o.require(evaluate::adjacent_date_ratio(mk({0, 10, 20})) == 0.0, "ratio {d, d+10, d+20}");
  o.require(evaluate::adjacent_date_ratio(mk({0, 1, 30})) == 0.5, "ratio {d, d+1, d+30}");
  // A week of daily entries then two monthly ones: 6 of 8 bigrams adjacent.
  o.require(evaluate::adjacent_date_ratio(mk({0, 1, 2, 3, 4, 5, 6, 36, 66})) == 0.75,
            "ratio on a ground-truth-shaped timeline");
  if (o.pass) o.detail = "100 random timelines plus hand-counted cases";
  return o;
}

Outcome randomization_calibration() {
  Outcome o;
  std::mt19937_64 rng(4004);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int t = 0; t < 40; ++t) {
    size_t n = 2 + static_cast<size_t>(t % 9);
    std::vector<double> a(n), b(n);
    double shift = 0.3 * (u(rng) - 0.5);
    for (size_t i = 0; i < n; ++i) {
      a[i] = u(rng);
      b[i] = a[i] + shift + 0.2 * (u(rng) - 0.5);
    }
    double obs = 0;
    for (size_t i = 0; i < n; ++i) obs += a[i] - b[i];
    obs = std::abs(obs) / static_cast<double>(n);
    size_t hits = 0;
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
      double s = 0;
      for (size_t i = 0; i < n; ++i) s += ((mask >> i) & 1) ? b[i] - a[i] : a[i] - b[i];
      if (std::abs(s) / static_cast<double>(n) >= obs - 1e-12) ++hits;
    }
    double exact = static_cast<double>(hits) / static_cast<double>(size_t{1} << n);
    double p = evaluate::approx_randomization(a, b, 10000, static_cast<uint64_t>(t));
    worst = std::max(worst, std::abs(p - exact));
  }
  o.require(worst <= 0.02, "Monte-Carlo p more than 0.02 from exact");
  o.detail = fmt("40 inputs with 2..10 tasks, max |p - exact| %.4f", worst);
  return o;
}

Outcome synthetic_recovery() {
  Outcome o;
  auto start = Clock::now();
  synthetic::SyntheticSpec spec;
  spec.n_events = 10;
  spec.articles_per_event = 5;
  spec.noise_articles = 50;
  spec.seed = 42;
  Task task = synthetic::generate(spec).to_task();
  pipeline::RunConfig dw;
  dw.method = pipeline::MethodKind::kDatewise;
  dw.date_selector = datewise::DateSelector::kMentionCount;
  dw.candidates = datewise::CandidateStrategy::kPMMean;
  dw.summarizer = summarize::Method::kCentroidOpt;
  auto d = evaluate::score_timeline(pipeline::run_task(task, dw, {}).timeline, task.ground_truth);
  pipeline::RunConfig cl;
  cl.method = pipeline::MethodKind::kClust;
  auto c = evaluate::score_timeline(pipeline::run_task(task, cl, {}).timeline, task.ground_truth);
  double secs = seconds_since(start);
  o.require(d.date_f1 >= 0.8, "datewise Date-F1 below 0.8");
  o.require(d.ar1_f >= 0.5, "datewise AR1-F below 0.5");
  o.require(c.date_f1 >= 0.6, "clust Date-F1 below 0.6");
  o.require(secs < 30.0, "runtime above 30 s");
  std::string nums = fmt("datewise Date-F1 %.3f AR1-F %.3f; clust Date-F1 %.3f; %.2f s", d.date_f1,
                         d.ar1_f, c.date_f1, secs);
  o.detail = o.pass ? nums : o.detail + " (" + nums + ")";
  return o;
}

Outcome solvers() {
  Outcome o;
  std::mt19937_64 rng(5005);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst_r = 0, worst_l = 0;
  for (int t = 0; t < 10; ++t) {
    Matrix x(20, std::vector<double>(4));
    std::vector<double> yr(20), yc(20);
    for (size_t i = 0; i < 20; ++i) {
      for (size_t j = 0; j < 4; ++j) x[i][j] = 2.0 * g(rng) + static_cast<double>(j);
      yr[i] = 0.8 * x[i][0] - 1.2 * x[i][3] + 0.3 * g(rng);
      yc[i] = x[i][1] + 0.5 * x[i][2] + g(rng) > 1.5 ? 1.0 : 0.0;
    }
    if (std::count(yc.begin(), yc.end(), 1.0) == 0) yc[0] = 1.0;
    if (std::count(yc.begin(), yc.end(), 0.0) == 0) yc[0] = 0.0;
    auto s = standardize(x);
    auto rr = ridge_oracle(s.z, yr, kL2Penalty);
    auto lr = logistic_oracle(s.z, yc, kL2Penalty);
    auto rm = train_ridge(x, yr);
    auto lm = train_logistic(x, yc);
    for (size_t j = 0; j < 4; ++j) {
      worst_r = std::max(worst_r, std::abs(rm.weights[j] - rr[j]));
      worst_l = std::max(worst_l, std::abs(lm.weights[j] - lr[j]));
    }
    worst_r = std::max(worst_r, std::abs(rm.bias - rr[4]));
    worst_l = std::max(worst_l, std::abs(lm.bias - lr[4]));
  }
  o.require(worst_r <= 1e-8, "ridge differs from the normal equations");
  o.require(worst_l <= 1e-8, "logistic differs from the convergence oracle");
  o.detail = fmt("10 sets of 20 points, max error ridge %.2e logistic %.2e", worst_r, worst_l);
  return o;
}

// Every file under `dir` except the manifest, keyed by relative path.
std::map<std::string, std::string> outputs(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().filename() == "manifest.json") continue;
    out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return out;
}

Outcome determinism() {
  Outcome o;
  TempDir dir;
  for (int i = 0; i < 3; ++i) {
    auto r = run_cli("synthesize --output-dir " + quoted(dir.path() / "ds") + " --topic t" +
                         std::to_string(i) + " --seed " + std::to_string(10 + i) + " --overlap 0.2",
                     dir.path());
    o.require(r.status == 0, "synthesize failed");
  }
  const std::vector<std::string> configs = {
      "--method datewise --date-selector supervised-clf",
      "--method datewise --date-selector supervised-reg --summarizer submodular",
      "--method clust --cluster-ranker regression-rouge",
      "--method pubcount",
  };
  size_t compared = 0;
  for (size_t c = 0; c < configs.size(); ++c) {
    std::map<std::string, std::string> first;
    for (int jobs : {1, 2, 4}) {
      fs::path out = dir.path() / ("o" + std::to_string(c) + "_" + std::to_string(jobs));
      auto r = run_cli("--jobs " + std::to_string(jobs) + " run --dataset-dir " +
                           quoted(dir.path() / "ds") + " " + configs[c] + " --output-dir " +
                           quoted(out),
                       dir.path());
      o.require(r.status == 0, "run failed: " + configs[c]);
      if (r.status != 0) continue;
      auto files = outputs(out);
      if (jobs == 1) {
        first = files;
        compared += files.size();
      } else {
        o.require(files == first, "outputs differ across --jobs for " + configs[c]);
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(configs.size()) + " configs x jobs {1,2,4}, " +
               std::to_string(compared) + " files identical";
  }
  return o;
}

Outcome performance() {
  Outcome o;
  synthetic::SyntheticSpec spec;
  spec.n_events = 50;
  spec.articles_per_event = 10;
  spec.noise_articles = 2000;
  spec.span_days = 400;
  spec.sentences_per_article = 8;
  spec.seed = 7;
  synthetic::SyntheticCorpus corpus = synthetic::generate(spec);
  Task task;
  task.name = "perf/timeline";
  task.topic = "perf";
  task.articles = corpus.articles;
  task.queries = corpus.queries;
  task.ground_truth = corpus.ground_truth;
  synthetic::SyntheticSpec train_spec;
  train_spec.seed = 8;
  std::vector<Task> training = {synthetic::generate(train_spec).to_task()};

  auto start = Clock::now();
  pipeline::RunConfig config;
  auto models = pipeline::train_models(config, training);
  auto run = pipeline::run_task(task, config, models);
  double secs = seconds_since(start);
  o.require(task.num_sentences() >= 20000, "task smaller than 20000 sentences");
  o.require(run.timeline.num_dates() > 0, "empty timeline");
  o.require(secs < 60.0, "runtime above 60 s");
  std::string nums = fmt("%.0f sentences, %.0f dates, %.2f s single-threaded",
                         static_cast<double>(task.num_sentences()),
                         static_cast<double>(run.timeline.num_dates()), secs);
  o.detail = o.pass ? nums : o.detail + " (" + nums + ")";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"date-vector-support-law", support_law},
      {"oracle-equivalence", oracle_equivalence},
      {"mcl-planted-structure", mcl_planted},
      {"metric-identities", metric_identities},
      {"randomization-calibration", randomization_calibration},
      {"synthetic-end-to-end", synthetic_recovery},
      {"solver-oracles", solvers},
      {"determinism-across-jobs", determinism},
      {"performance-20k-sentences", performance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }

  // Requires the published corpora; informational only.
  const char* published = std::getenv("TLSUM_PUBLISHED_DATASET");
  if (published == nullptr) {
    std::printf("SKIP published-dataset-statistics: set TLSUM_PUBLISHED_DATASET to a dataset "
                "directory\n");
  } else {
    try {
      auto tasks = corpus::load_dataset(published, {}, 1);
      auto s = corpus::dataset_stats(tasks);
      std::printf("INFO published-dataset-statistics: topics=%zu timelines=%zu "
                  "avg_duration_days=%.1f avg_l=%.2f avg_k=%.2f\n",
                  s.n_topics, s.n_timelines, s.avg_duration_days, s.avg_l, s.avg_k);
      if (tasks.size() >= 2) {
        auto r = experiment::loocv(tasks, pipeline::RunConfig{}, 1);
        std::printf("INFO published-dataset-datewise: tasks=%zu date_f1=%.3f ar1_f=%.3f\n",
                    tasks.size(), r.eval.date_f1, r.eval.ar1_f);
      }
    } catch (const std::exception& e) {
      std::printf("INFO published-dataset-statistics: not loaded (%s)\n", e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
