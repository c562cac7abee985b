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

#include "tlsum/pipeline.h"

#include <chrono>

#include "json.hpp"

namespace tlsum::pipeline {

const char* method_kind_name(MethodKind m) {
  switch (m) {
    case MethodKind::kDatewise:
      return "datewise";
    case MethodKind::kClust:
      return "clust";
    case MethodKind::kPubCount:
      return "pubcount";
  }
  return "unknown";
}

MethodKind parse_method_kind(std::string_view name) {
  if (name == "datewise") return MethodKind::kDatewise;
  if (name == "clust") return MethodKind::kClust;
  if (name == "pubcount") return MethodKind::kPubCount;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

bool RunConfig::supervised() const {
  switch (method) {
    case MethodKind::kDatewise:
      return datewise::is_supervised(date_selector);
    case MethodKind::kClust:
      return cluster_ranker.method == cluster::RankMethod::kRegression;
    case MethodKind::kPubCount:
      return false;
  }
  return false;
}

void RunConfig::validate() const {
  if (l_mode != "ground-truth-l") throw ConfigError("unsupported l mode '" + l_mode + "'");
  if (method == MethodKind::kDatewise &&
      candidates == datewise::CandidateStrategy::kPublishedOnDay) {
    throw ConfigError("candidate strategy 'pub-day' is reserved for the pubcount method");
  }
  if (method == MethodKind::kClust && titles_only) {
    throw ConfigError("titles-only mode applies to date-wise methods only");
  }
}

std::string RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["dataset_dir"] = dataset_dir.string();
  j["topics"] = topics;
  j["method"] = method_kind_name(method);
  j["date_selector"] = datewise::selector_name(date_selector);
  j["candidates"] = datewise::strategy_name(candidates);
  j["summarizer"] = summarize::method_name(summarizer);
  j["cluster_ranker"] = cluster::ranker_name(cluster_ranker);
  j["titles_only"] = titles_only;
  j["l_mode"] = l_mode;
  j["seed"] = seed;
  j["output_dir"] = output_dir.string();
  return j.dump(2);
}

dateselect::Samples training_samples(const RunConfig& config, const Task& task) {
  if (!config.supervised()) return {};
  if (config.method == MethodKind::kDatewise) return dateselect::date_samples(task);
  return cluster::cluster_samples(task, config.cluster_ranker.labels, config.summarizer);
}

TrainedModels fit_models(const RunConfig& config, const dateselect::Samples& samples) {
  TrainedModels m;
  if (!config.supervised()) return m;
  if (config.method == MethodKind::kDatewise) {
    auto mode = config.date_selector == datewise::DateSelector::kSupervisedClf
                    ? LinearMode::kClassification
                    : LinearMode::kRegression;
    m.date_model = dateselect::train_date_selector(samples, mode);
  } else {
    m.cluster_model = cluster::train_cluster_regressor(samples);
  }
  return m;
}

TrainedModels train_models(const RunConfig& config, std::span<const Task> training) {
  if (!config.supervised()) return {};
  if (training.empty()) throw ConfigError("supervised configuration needs training tasks");
  dateselect::Samples all;
  for (const auto& t : training) all.append(training_samples(config, t));
  return fit_models(config, all);
}

TaskRun run_task(const Task& task, const RunConfig& config, const TrainedModels& models) {
  auto start = std::chrono::steady_clock::now();
  TaskRun run;
  run.task = task.name;
  const int l = static_cast<int>(std::max<size_t>(1, task.ground_truth.num_dates()));
  const int k = task.target_k();
  switch (config.method) {
    case MethodKind::kDatewise:
    case MethodKind::kPubCount: {
      datewise::DatewiseConfig dc;
      dc.l = l;
      dc.k = k;
      dc.titles_only = config.titles_only;
      if (config.method == MethodKind::kPubCount) {
        dc.selector = datewise::DateSelector::kPubCount;
        dc.strategy = datewise::CandidateStrategy::kPublishedOnDay;
        dc.summarizer = summarize::Method::kCentroidOpt;
      } else {
        dc.selector = config.date_selector;
        dc.strategy = config.candidates;
        dc.summarizer = config.summarizer;
        if (datewise::is_supervised(dc.selector)) {
          if (!models.date_model) throw ConfigError("supervised date selection needs a model");
          dc.date_model = &*models.date_model;
        }
      }
      auto built = datewise::build_datewise_timeline(task, dc);
      run.timeline = std::move(built.timeline);
      run.warning = std::move(built.warning);
      break;
    }
    case MethodKind::kClust: {
      cluster::ClustConfig cc;
      cc.l = l;
      cc.k = k;
      cc.ranker = config.cluster_ranker.method;
      cc.summarizer = config.summarizer;
      if (cc.ranker == cluster::RankMethod::kRegression) {
        if (!models.cluster_model) throw ConfigError("regression ranking needs a model");
        cc.model = &*models.cluster_model;
      }
      auto built = cluster::build_clust_timeline(task, cc);
      run.timeline = std::move(built.timeline);
      run.warning = std::move(built.warning);
      break;
    }
  }
  run.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace tlsum::pipeline
