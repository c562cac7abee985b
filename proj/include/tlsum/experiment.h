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

// Leave-one-out evaluation over the tasks of a dataset.

#ifndef TLSUM_EXPERIMENT_H_
#define TLSUM_EXPERIMENT_H_

#include <span>
#include <vector>

#include "tlsum/evaluate.h"
#include "tlsum/pipeline.h"

namespace tlsum::experiment {

struct LoocvResult {
  evaluate::EvalResult eval;
  // One run per task, in input order.
  std::vector<pipeline::TaskRun> runs;
  // Models used for each round (empty for unsupervised configs).
  std::vector<pipeline::TrainedModels> models;
  int rounds = 0;
};

// For every task, trains the supervised parts on all other tasks, builds the
// timeline and scores it against the task's ground truth. Unsupervised
// configs skip training. Throws pipeline::ConfigError when a supervised
// config gets fewer than 2 tasks.
LoocvResult loocv(std::span<const Task> tasks, const pipeline::RunConfig& config, int jobs = 1,
                  const evaluate::RougeOptions& rouge = {});

}  // namespace tlsum::experiment

#endif  // TLSUM_EXPERIMENT_H_
