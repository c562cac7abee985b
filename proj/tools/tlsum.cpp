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

// tlsum command-line tool.
//
// Exit codes: 0 success, 1 configuration error, 2 data error, 3 runtime
// failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tlsum/corpus.h"
#include "tlsum/dateselect.h"
#include "tlsum/evaluate.h"
#include "tlsum/experiment.h"
#include "tlsum/guardian.h"
#include "tlsum/io.h"
#include "tlsum/parallel.h"
#include "tlsum/pipeline.h"
#include "tlsum/synthetic.h"

namespace fs = std::filesystem;
using namespace tlsum;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kConfig = 1, kData = 2, kRuntime = 3 };

struct RunFlags {
  std::string dataset_dir;
  std::vector<std::string> topics;
  std::string method = "datewise";
  std::string date_selector = "supervised-clf";
  std::string candidates = "pm-mean";
  std::string summarizer = "centroid-opt";
  std::string cluster_ranker = "datementioncount";
  bool titles_only = false;
  uint64_t seed = evaluate::kDefaultSeed;
  std::string output_dir;
  bool rouge_stem = false;
  bool rouge_stopwords = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool output_required) {
  cmd->add_option("--dataset-dir", f.dataset_dir, "Dataset directory")->required();
  cmd->add_option("--topics", f.topics, "Restrict to these topics");
  cmd->add_option("--method", f.method, "Timeline method")
      ->check(CLI::IsMember({"datewise", "clust", "pubcount"}));
  cmd->add_option("--date-selector", f.date_selector, "Date ranking for datewise")
      ->check(CLI::IsMember({"pubcount", "mentioncount", "supervised-clf", "supervised-reg"}));
  cmd->add_option("--candidates", f.candidates, "Candidate sentences for datewise")
      ->check(CLI::IsMember({"p", "m", "pm-mean"}));
  cmd->add_option("--summarizer", f.summarizer, "Date or cluster summarizer")
      ->check(CLI::IsMember({"textrank", "centroid-rank", "centroid-opt", "submodular"}));
  cmd->add_option("--cluster-ranker", f.cluster_ranker, "Cluster ranking for clust")
      ->check(CLI::IsMember({"size", "datementioncount", "regression-dates", "regression-rouge"}));
  cmd->add_flag("--titles-only", f.titles_only, "Summarize article titles only");
  cmd->add_option("--seed", f.seed, "Seed recorded in the manifest");
  auto* out = cmd->add_option("--output-dir", f.output_dir, "Output directory");
  if (output_required) out->required();
  cmd->add_flag("--rouge-stem", f.rouge_stem, "Stem tokens before ROUGE");
  cmd->add_flag("--rouge-stopwords", f.rouge_stopwords, "Drop stopwords before ROUGE");
}

pipeline::RunConfig to_config(const RunFlags& f) {
  pipeline::RunConfig c;
  c.dataset_dir = f.dataset_dir;
  c.topics = f.topics;
  c.method = pipeline::parse_method_kind(f.method);
  c.date_selector = datewise::parse_selector(f.date_selector);
  c.candidates = datewise::parse_strategy(f.candidates);
  c.summarizer = summarize::parse_method(f.summarizer);
  c.cluster_ranker = cluster::parse_ranker(f.cluster_ranker);
  c.titles_only = f.titles_only;
  c.seed = f.seed;
  c.output_dir = f.output_dir;
  c.validate();
  return c;
}

evaluate::RougeOptions rouge_options(const RunFlags& f) {
  return {f.rouge_stem, f.rouge_stopwords};
}

std::vector<Task> load_tasks(const std::string& dir, const std::vector<std::string>& topics,
                             int jobs) {
  auto tasks = corpus::load_dataset(dir, topics, jobs);
  if (tasks.empty()) throw DataError("no tasks found under " + dir);
  return tasks;
}

std::string date_counts_csv(const Task& task) {
  std::string out = "date,pub_count,mention_count\n";
  for (const auto& st : dateselect::collect_dates(task.articles, nullptr)) {
    out += st.date.iso() + "," + std::to_string(st.pub_count) + "," +
           std::to_string(st.mention_count) + "\n";
  }
  return out;
}

void write_timelines(const fs::path& out_dir, std::span<const Task> tasks,
                     const std::vector<pipeline::TaskRun>& runs) {
  for (size_t i = 0; i < tasks.size(); ++i) {
    io::write_file_atomic(out_dir / "timelines" / (tasks[i].name + ".json"),
                          corpus::serialize_timeline(runs[i].timeline, tasks[i].topic,
                                                     tasks[i].queries));
  }
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const std::string& config_json, int jobs,
                    const std::vector<pipeline::TaskRun>& runs, double total_seconds) {
  nlohmann::ordered_json m;
  m["tool"] = "tlsum";
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = nlohmann::ordered_json::parse(config_json);
  m["jobs"] = jobs;
  nlohmann::ordered_json tasks = nlohmann::ordered_json::array();
  for (const auto& r : runs) {
    nlohmann::ordered_json t;
    t["task"] = r.task;
    t["seconds"] = r.seconds;
    t["dates"] = r.timeline.num_dates();
    if (!r.warning.empty()) t["warning"] = r.warning;
    tasks.push_back(std::move(t));
  }
  m["tasks"] = std::move(tasks);
  m["total_seconds"] = total_seconds;
  io::write_file_atomic(out_dir / "manifest.json", m.dump(2) + "\n");
}

void print_summary(const evaluate::EvalResult& eval) {
  std::printf("tasks=%zu ar1_f=%.4f ar2_f=%.4f date_f1=%.4f\n", eval.per_task.size(),
              eval.ar1_f, eval.ar2_f, eval.date_f1);
}

int cmd_run(const RunFlags& flags, int jobs, bool write_all) {
  auto start = std::chrono::steady_clock::now();
  pipeline::RunConfig config = to_config(flags);
  auto tasks = load_tasks(flags.dataset_dir, flags.topics, jobs);
  auto result = experiment::loocv(tasks, config, jobs, rouge_options(flags));
  double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& r : result.runs) {
    if (!r.warning.empty()) std::fprintf(stderr, "warning: %s: %s\n", r.task.c_str(), r.warning.c_str());
  }
  if (!flags.output_dir.empty()) {
    const fs::path out = flags.output_dir;
    io::write_file_atomic(out / "eval.json", result.eval.to_json());
    io::write_file_atomic(out / "eval.csv", result.eval.to_csv());
    if (write_all) {
      write_timelines(out, tasks, result.runs);
      for (const auto& t : tasks) {
        io::write_file_atomic(out / "date_counts" / (t.name + ".csv"), date_counts_csv(t));
      }
    }
    write_manifest(out, write_all ? "run" : "cross-validate", config.to_json(), jobs, result.runs,
                   total);
  }
  print_summary(result.eval);
  return kOk;
}

struct EvalFlags {
  std::string dataset_dir;
  std::vector<std::string> topics;
  std::string timelines_dir;
  std::string output_dir;
  bool rouge_stem = false;
  bool rouge_stopwords = false;
};

int cmd_eval(const EvalFlags& f, int jobs) {
  auto tasks = load_tasks(f.dataset_dir, f.topics, jobs);
  evaluate::EvalResult eval;
  std::vector<evaluate::TaskScore> scores(tasks.size());
  parallel_for(tasks.size(), jobs, [&](size_t i) {
    fs::path p = fs::path(f.timelines_dir) / (tasks[i].name + ".json");
    if (!fs::exists(p)) throw DataError("missing system timeline " + p.string());
    Timeline sys = corpus::to_timeline(corpus::load_raw_timeline(p), p.string());
    scores[i] = evaluate::score_timeline(sys, tasks[i].ground_truth,
                                         {f.rouge_stem, f.rouge_stopwords});
  });
  for (size_t i = 0; i < tasks.size(); ++i) eval.per_task[tasks[i].name] = scores[i];
  eval.aggregate();
  if (!f.output_dir.empty()) {
    io::write_file_atomic(fs::path(f.output_dir) / "eval.json", eval.to_json());
    io::write_file_atomic(fs::path(f.output_dir) / "eval.csv", eval.to_csv());
  }
  print_summary(eval);
  return kOk;
}

struct OracleFlags {
  std::string dataset_dir;
  std::vector<std::string> topics;
  std::string mode = "full";
  std::string output_dir;
};

int cmd_oracle(const OracleFlags& f, int jobs) {
  auto tasks = load_tasks(f.dataset_dir, f.topics, jobs);
  auto mode = evaluate::parse_oracle(f.mode);
  if (mode == evaluate::OracleMode::kText && tasks.size() < 2) {
    throw pipeline::ConfigError("the text oracle trains on other tasks and needs at least 2");
  }
  std::vector<dateselect::Samples> samples(tasks.size());
  if (mode == evaluate::OracleMode::kText) {
    parallel_for(tasks.size(), jobs, [&](size_t i) { samples[i] = dateselect::date_samples(tasks[i]); });
  }
  std::vector<pipeline::TaskRun> runs(tasks.size());
  std::vector<evaluate::TaskScore> scores(tasks.size());
  parallel_for(tasks.size(), jobs, [&](size_t i) {
    auto start = std::chrono::steady_clock::now();
    std::optional<LinearModel> model;
    if (mode == evaluate::OracleMode::kText) {
      dateselect::Samples train;
      for (size_t j = 0; j < tasks.size(); ++j) {
        if (j != i) train.append(samples[j]);
      }
      model = dateselect::train_date_selector(train, LinearMode::kRegression);
    }
    runs[i].task = tasks[i].name;
    runs[i].timeline = evaluate::oracle_timeline(tasks[i], mode, model ? &*model : nullptr);
    runs[i].seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    scores[i] = evaluate::score_timeline(runs[i].timeline, tasks[i].ground_truth);
  });
  evaluate::EvalResult eval;
  for (size_t i = 0; i < tasks.size(); ++i) eval.per_task[tasks[i].name] = scores[i];
  eval.aggregate();
  if (!f.output_dir.empty()) {
    const fs::path out = f.output_dir;
    write_timelines(out, tasks, runs);
    io::write_file_atomic(out / "eval.json", eval.to_json());
    io::write_file_atomic(out / "eval.csv", eval.to_csv());
  }
  print_summary(eval);
  return kOk;
}

int cmd_stats(const std::string& dataset_dir, const std::vector<std::string>& topics,
              const std::string& output, int jobs) {
  auto tasks = load_tasks(dataset_dir, topics, jobs);
  auto s = corpus::dataset_stats(tasks);
  char row[512];
  std::snprintf(row, sizeof row,
                "%zu,%zu,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f\n", s.n_topics,
                s.n_timelines, s.avg_docs, s.avg_sents, s.avg_pubdates, s.avg_duration_days,
                s.avg_l, s.avg_k, s.avg_m, s.comp_ratio_sents, s.comp_ratio_dates,
                s.date_cov_published, s.date_cov_mentioned);
  std::string csv =
      "n_topics,n_timelines,avg_docs,avg_sents,avg_pubdates,avg_duration_days,avg_l,avg_k,"
      "avg_m,comp_ratio_sents,comp_ratio_dates,date_cov_published,date_cov_mentioned\n";
  csv += row;
  if (output.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    io::write_file_atomic(output, csv);
  }
  return kOk;
}

struct SignificanceFlags {
  std::string a;
  std::string b;
  std::string metric = "ar1_f";
  int resamples = evaluate::kDefaultResamples;
  uint64_t seed = evaluate::kDefaultSeed;
};

int cmd_significance(const SignificanceFlags& f) {
  auto load = [&](const std::string& path) {
    std::map<std::string, double> out;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path + ": " + e.what());
    }
    for (const auto& [name, s] : doc.at("per_task").items()) out[name] = s.at(f.metric).get<double>();
    return out;
  };
  auto a = load(f.a);
  auto b = load(f.b);
  std::vector<double> xa, xb;
  for (const auto& [name, v] : a) {
    auto it = b.find(name);
    if (it == b.end()) throw DataError("task " + name + " missing from " + f.b);
    xa.push_back(v);
    xb.push_back(it->second);
  }
  if (xa.size() != b.size()) throw DataError("the two results cover different tasks");
  double p = evaluate::approx_randomization(xa, xb, f.resamples, f.seed);
  std::printf("metric=%s tasks=%zu p=%.6f seed=%llu resamples=%d\n", f.metric.c_str(), xa.size(),
              p, static_cast<unsigned long long>(f.seed), f.resamples);
  return kOk;
}

struct FetchFlags {
  std::string query;
  std::string timeline;
  std::string from;
  std::string to;
  std::string cache_dir;
  std::string output;
};

Date parse_date_flag(const std::string& s, const char* flag) {
  auto d = Date::parse_iso(s);
  if (!d) throw pipeline::ConfigError(std::string(flag) + ": bad date '" + s + "'");
  return *d;
}

int cmd_fetch(const FetchFlags& f) {
  DateSpan span;
  if (!f.timeline.empty()) {
    span = guardian::search_span(corpus::to_timeline(corpus::load_raw_timeline(f.timeline)));
  } else if (!f.from.empty() && !f.to.empty()) {
    span = {parse_date_flag(f.from, "--from"), parse_date_flag(f.to, "--to")};
  } else {
    throw pipeline::ConfigError("give --timeline or both --from and --to");
  }
  const char* key = std::getenv("GUARDIAN_API_KEY");
  guardian::FetchOptions opt;
  opt.cache_dir = f.cache_dir;
  if (key != nullptr && *key != '\0') opt.transport = guardian::https_transport();
  if (!opt.transport && f.cache_dir.empty()) {
    throw pipeline::ConfigError("GUARDIAN_API_KEY is not set and no --cache-dir was given");
  }
  auto articles = guardian::fetch_guardian(f.query, span, key ? key : "", opt);
  corpus::write_articles(f.output, articles);
  std::printf("articles=%zu span=%s..%s\n", articles.size(), span.first.iso().c_str(),
              span.last.iso().c_str());
  return kOk;
}

struct FilterFlags {
  std::string articles;
  std::string timeline;
  std::string output_dir;
};

int cmd_filter(const FilterFlags& f) {
  auto articles = corpus::load_articles(f.articles);
  auto raw = corpus::load_raw_timeline(f.timeline);
  auto outcome = corpus::filter_dataset_task(articles, raw, raw.keywords);
  if (!outcome.task) {
    std::printf("rejected %s\n", reject_reason_code(*outcome.reason));
    return kOk;
  }
  const Task& t = *outcome.task;
  std::printf("accepted dates=%zu articles=%zu\n", t.ground_truth.num_dates(), t.articles.size());
  if (!f.output_dir.empty()) {
    const fs::path topic_dir = fs::path(f.output_dir) / (raw.topic.empty() ? "topic" : raw.topic);
    corpus::write_articles(topic_dir / "articles.jsonl", t.articles);
    io::write_file_atomic(topic_dir / "timelines" / fs::path(f.timeline).filename(),
                          corpus::serialize_timeline(t.ground_truth, raw.topic, raw.keywords));
  }
  return kOk;
}

int cmd_synthesize(const synthetic::SyntheticSpec& spec, const std::string& out) {
  auto corpus = synthetic::generate(spec);
  synthetic::write_dataset(corpus, out);
  std::printf("articles=%zu events=%zu\n", corpus.articles.size(),
              corpus.ground_truth.num_dates());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timeline summarization of news collections"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int jobs = default_jobs();
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Build, write and score timelines for a dataset");
  add_run_flags(run, run_flags, true);

  RunFlags cv_flags;
  auto* cv = app.add_subcommand("cross-validate", "Leave-one-out evaluation of a configuration");
  add_run_flags(cv, cv_flags, false);

  EvalFlags eval_flags;
  auto* ev = app.add_subcommand("eval", "Score existing timeline files");
  ev->add_option("--dataset-dir", eval_flags.dataset_dir)->required();
  ev->add_option("--topics", eval_flags.topics);
  ev->add_option("--timelines-dir", eval_flags.timelines_dir, "Directory of <task>.json files")
      ->required();
  ev->add_option("--output-dir", eval_flags.output_dir);
  ev->add_flag("--rouge-stem", eval_flags.rouge_stem);
  ev->add_flag("--rouge-stopwords", eval_flags.rouge_stopwords);

  OracleFlags oracle_flags;
  auto* oracle = app.add_subcommand("oracle", "Build oracle timelines");
  oracle->add_option("--dataset-dir", oracle_flags.dataset_dir)->required();
  oracle->add_option("--topics", oracle_flags.topics);
  oracle->add_option("--mode", oracle_flags.mode)->check(CLI::IsMember({"date", "text", "full"}));
  oracle->add_option("--output-dir", oracle_flags.output_dir);

  std::string stats_dir, stats_out;
  std::vector<std::string> stats_topics;
  auto* stats = app.add_subcommand("stats", "Dataset statistics as CSV");
  stats->add_option("--dataset-dir", stats_dir)->required();
  stats->add_option("--topics", stats_topics);
  stats->add_option("--output", stats_out, "CSV file (default: stdout)");

  SignificanceFlags sig_flags;
  auto* sig = app.add_subcommand("significance", "Paired randomization test of two eval.json files");
  sig->add_option("--a", sig_flags.a)->required();
  sig->add_option("--b", sig_flags.b)->required();
  sig->add_option("--metric", sig_flags.metric)
      ->check(CLI::IsMember({"ar1_f", "ar2_f", "date_f1"}));
  sig->add_option("--resamples", sig_flags.resamples)->check(CLI::PositiveNumber);
  sig->add_option("--seed", sig_flags.seed);

  FetchFlags fetch_flags;
  auto* fetch = app.add_subcommand("fetch-guardian", "Search the Guardian API for a query");
  fetch->add_option("--query", fetch_flags.query)->required();
  fetch->add_option("--timeline", fetch_flags.timeline, "Raw timeline defining the span");
  fetch->add_option("--from", fetch_flags.from);
  fetch->add_option("--to", fetch_flags.to);
  fetch->add_option("--cache-dir", fetch_flags.cache_dir);
  fetch->add_option("--output", fetch_flags.output, "articles JSONL")->required();

  FilterFlags filter_flags;
  auto* filter = app.add_subcommand("filter-dataset", "Clean and accept or reject one task");
  filter->add_option("--articles", filter_flags.articles)->required();
  filter->add_option("--timeline", filter_flags.timeline)->required();
  filter->add_option("--output-dir", filter_flags.output_dir);

  synthetic::SyntheticSpec spec;
  std::string synth_out;
  auto* synth = app.add_subcommand("synthesize", "Write a synthetic dataset");
  synth->add_option("--output-dir", synth_out)->required();
  synth->add_option("--events", spec.n_events);
  synth->add_option("--articles-per-event", spec.articles_per_event);
  synth->add_option("--noise", spec.noise_articles);
  synth->add_option("--span-days", spec.span_days);
  synth->add_option("--vocab", spec.vocab_size);
  synth->add_option("--sentences", spec.sentences_per_article);
  synth->add_option("--overlap", spec.overlap);
  synth->add_option("--seed", spec.seed);
  synth->add_option("--topic", spec.topic);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*run) return cmd_run(run_flags, jobs, true);
    if (*cv) return cmd_run(cv_flags, jobs, false);
    if (*ev) return cmd_eval(eval_flags, jobs);
    if (*oracle) return cmd_oracle(oracle_flags, jobs);
    if (*stats) return cmd_stats(stats_dir, stats_topics, stats_out, jobs);
    if (*sig) return cmd_significance(sig_flags);
    if (*fetch) return cmd_fetch(fetch_flags);
    if (*filter) return cmd_filter(filter_flags);
    if (*synth) return cmd_synthesize(spec, synth_out);
  } catch (const pipeline::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  } catch (const guardian::FetchError& e) {
    std::fprintf(stderr, "fetch failed: %s\n", e.what());
    return kRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntime;
  }
  return kOk;
}
