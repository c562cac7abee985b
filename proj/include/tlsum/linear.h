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

// Standardized linear models shared by date selection and cluster ranking.

#ifndef TLSUM_LINEAR_H_
#define TLSUM_LINEAR_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlsum {

class DegenerateLabels : public std::invalid_argument {
 public:
  DegenerateLabels() : std::invalid_argument("degenerate-labels") {}
};

enum class LinearMode { kClassification, kRegression };

struct LinearModel {
  LinearMode mode = LinearMode::kRegression;
  std::string feature_schema;
  // Scores are computed on standardized features z = (x - mean) / stddev;
  // features whose stddev is 0 contribute nothing.
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> mean;
  std::vector<double> stddev;

  size_t num_features() const { return weights.size(); }
  // Linear score (the logit in classification mode). Throws
  // std::invalid_argument on a feature-length mismatch.
  double score(std::span<const double> features) const;

  std::string to_json() const;
  static LinearModel from_json(std::string_view json);
};

inline constexpr double kL2Penalty = 1e-4;

// Ridge regression on standardized features with an unpenalized bias:
//   minimize 1/(2n) * sum (y - b - w.z)^2 + l2/2 * |w|^2
// solved in closed form. Throws DegenerateLabels if all labels are equal.
LinearModel train_ridge(const std::vector<std::vector<double>>& x,
                        std::span<const double> y, double l2 = kL2Penalty);

// L2-regularized logistic regression (labels 0/1) on standardized features:
//   minimize 1/n * sum [log(1 + e^s) - y s] + l2/2 * |w|^2,  s = b + w.z
// solved by damped Newton iterations from a zero start.
LinearModel train_logistic(const std::vector<std::vector<double>>& x,
                           std::span<const double> y, double l2 = kL2Penalty);

}  // namespace tlsum

#endif  // TLSUM_LINEAR_H_
