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

#include "tlsum/parallel.h"

namespace tlsum::experiment {

LoocvResult loocv(std::span<const Task> tasks, const pipeline::RunConfig& config, int jobs,
                  const evaluate::RougeOptions& rouge) {
  config.validate();
  const bool supervised = config.supervised();
  if (supervised && tasks.size() < 2) {
    throw pipeline::ConfigError("leave-one-out training needs at least 2 tasks");
  }
  LoocvResult out;
  out.runs.resize(tasks.size());
  out.models.resize(tasks.size());
  std::vector<evaluate::TaskScore> scores(tasks.size());
  std::vector<dateselect::Samples> samples(tasks.size());
  if (supervised) {
    parallel_for(tasks.size(), jobs,
                 [&](size_t i) { samples[i] = pipeline::training_samples(config, tasks[i]); });
  }
  parallel_for(tasks.size(), jobs, [&](size_t i) {
    if (supervised) {
      dateselect::Samples training;
      for (size_t j = 0; j < tasks.size(); ++j) {
        if (j != i) training.append(samples[j]);
      }
      out.models[i] = pipeline::fit_models(config, training);
    }
    out.runs[i] = pipeline::run_task(tasks[i], config, out.models[i]);
    scores[i] = evaluate::score_timeline(out.runs[i].timeline, tasks[i].ground_truth, rouge);
  });
  for (size_t i = 0; i < tasks.size(); ++i) out.eval.per_task[tasks[i].name] = scores[i];
  out.eval.aggregate();
  out.rounds = static_cast<int>(tasks.size());
  return out;
}

}  // namespace tlsum::experiment
