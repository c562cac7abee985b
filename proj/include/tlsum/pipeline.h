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

// Run configuration and single-task timeline generation.

#ifndef TLSUM_PIPELINE_H_
#define TLSUM_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlsum/cluster.h"
#include "tlsum/corpus.h"
#include "tlsum/dateselect.h"
#include "tlsum/datewise.h"
#include "tlsum/evaluate.h"
#include "tlsum/linear.h"
#include "tlsum/summarize.h"

namespace tlsum::pipeline {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class MethodKind { kDatewise, kClust, kPubCount };
const char* method_kind_name(MethodKind m);
MethodKind parse_method_kind(std::string_view name);

struct RunConfig {
  std::filesystem::path dataset_dir;
  std::vector<std::string> topics;
  MethodKind method = MethodKind::kDatewise;
  datewise::DateSelector date_selector = datewise::DateSelector::kSupervisedClf;
  datewise::CandidateStrategy candidates = datewise::CandidateStrategy::kPMMean;
  summarize::Method summarizer = summarize::Method::kCentroidOpt;
  cluster::ClusterRanker cluster_ranker;
  bool titles_only = false;
  std::string l_mode = "ground-truth-l";
  uint64_t seed = evaluate::kDefaultSeed;
  std::filesystem::path output_dir;

  // Whether any component is trained.
  bool supervised() const;
  // Throws ConfigError.
  void validate() const;
  // Stable JSON rendering used by manifests.
  std::string to_json() const;
};

struct TrainedModels {
  std::optional<LinearModel> date_model;
  std::optional<LinearModel> cluster_model;
};

// Fits whatever the config needs on the training tasks.
TrainedModels train_models(const RunConfig& config, std::span<const Task> training);

// Training rows of one task for the config's supervised component; empty for
// unsupervised configs.
dateselect::Samples training_samples(const RunConfig& config, const Task& task);
TrainedModels fit_models(const RunConfig& config, const dateselect::Samples& samples);

struct TaskRun {
  std::string task;
  Timeline timeline;
  std::string warning;
  double seconds = 0.0;
};

// l and k follow the task's ground truth.
TaskRun run_task(const Task& task, const RunConfig& config, const TrainedModels& models);

}  // namespace tlsum::pipeline

#endif  // TLSUM_PIPELINE_H_
