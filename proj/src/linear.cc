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

#include "tlsum/linear.h"

#include <Eigen/Dense>
#include <cmath>

#include "json.hpp"

namespace tlsum {

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kConstantFeature = 1e-12;

struct Standardized {
  Eigen::MatrixXd z;
  std::vector<double> mean;
  std::vector<double> stddev;
};

Standardized standardize(const std::vector<std::vector<double>>& x) {
  if (x.empty()) throw std::invalid_argument("train: no samples");
  const size_t n = x.size();
  const size_t d = x.front().size();
  for (const auto& row : x) {
    if (row.size() != d) throw std::invalid_argument("train: ragged feature rows");
  }
  Standardized s;
  s.mean.assign(d, 0.0);
  s.stddev.assign(d, 0.0);
  for (const auto& row : x) {
    for (size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  }
  for (size_t j = 0; j < d; ++j) s.mean[j] /= static_cast<double>(n);
  for (const auto& row : x) {
    for (size_t j = 0; j < d; ++j) {
      double c = row[j] - s.mean[j];
      s.stddev[j] += c * c;
    }
  }
  for (size_t j = 0; j < d; ++j) {
    s.stddev[j] = std::sqrt(s.stddev[j] / static_cast<double>(n));
    if (s.stddev[j] < kConstantFeature) s.stddev[j] = 0.0;
  }
  s.z.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < d; ++j) {
      s.z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          s.stddev[j] == 0.0 ? 0.0 : (x[i][j] - s.mean[j]) / s.stddev[j];
    }
  }
  return s;
}

void check_labels(std::span<const double> y, size_t n) {
  if (y.size() != n) throw std::invalid_argument("train: label count mismatch");
  for (double v : y) {
    if (v != y.front()) return;
  }
  throw DegenerateLabels();
}

// log(1 + e^s) without overflow.
double softplus(double s) {
  return s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
}

double sigmoid(double s) {
  if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
  double e = std::exp(s);
  return e / (1.0 + e);
}

const char* mode_name(LinearMode m) {
  return m == LinearMode::kClassification ? "classification" : "regression";
}

}  // namespace

double LinearModel::score(std::span<const double> features) const {
  if (features.size() != weights.size()) {
    throw std::invalid_argument("feature-length mismatch: model has " +
                                std::to_string(weights.size()) + ", got " +
                                std::to_string(features.size()));
  }
  double s = bias;
  for (size_t j = 0; j < weights.size(); ++j) {
    if (stddev[j] == 0.0) continue;
    s += weights[j] * (features[j] - mean[j]) / stddev[j];
  }
  return s;
}

std::string LinearModel::to_json() const {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["feature_schema"] = feature_schema;
  doc["mode"] = mode_name(mode);
  doc["weights"] = weights;
  doc["bias"] = bias;
  doc["standardization"] = {{"mean", mean}, {"stddev", stddev}};
  return doc.dump(2) + "\n";
}

LinearModel LinearModel::from_json(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  if (doc.value("schema_version", 0) != kSchemaVersion) {
    throw std::invalid_argument("unsupported model schema version");
  }
  LinearModel m;
  std::string mode = doc.at("mode").get<std::string>();
  if (mode == "classification") {
    m.mode = LinearMode::kClassification;
  } else if (mode == "regression") {
    m.mode = LinearMode::kRegression;
  } else {
    throw std::invalid_argument("unknown model mode '" + mode + "'");
  }
  m.feature_schema = doc.value("feature_schema", "");
  m.weights = doc.at("weights").get<std::vector<double>>();
  m.bias = doc.at("bias").get<double>();
  m.mean = doc.at("standardization").at("mean").get<std::vector<double>>();
  m.stddev = doc.at("standardization").at("stddev").get<std::vector<double>>();
  if (m.mean.size() != m.weights.size() || m.stddev.size() != m.weights.size()) {
    throw std::invalid_argument("model standardization length mismatch");
  }
  return m;
}

LinearModel train_ridge(const std::vector<std::vector<double>>& x,
                        std::span<const double> y, double l2) {
  Standardized s = standardize(x);
  check_labels(y, x.size());
  const auto n = s.z.rows();
  const auto d = s.z.cols();
  Eigen::VectorXd yv(n);
  for (Eigen::Index i = 0; i < n; ++i) yv(i) = y[static_cast<size_t>(i)];
  double y_mean = yv.mean();
  Eigen::VectorXd yc = yv.array() - y_mean;
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd a = s.z.transpose() * s.z * inv_n;
  a.diagonal().array() += l2;
  Eigen::VectorXd rhs = s.z.transpose() * yc * inv_n;
  Eigen::VectorXd w = a.ldlt().solve(rhs);

  LinearModel m;
  m.mode = LinearMode::kRegression;
  m.weights.assign(w.data(), w.data() + d);
  m.bias = y_mean;
  m.mean = std::move(s.mean);
  m.stddev = std::move(s.stddev);
  return m;
}

LinearModel train_logistic(const std::vector<std::vector<double>>& x,
                           std::span<const double> y, double l2) {
  Standardized s = standardize(x);
  check_labels(y, x.size());
  const auto n = s.z.rows();
  const auto d = s.z.cols();
  // Design matrix with a trailing bias column.
  Eigen::MatrixXd a(n, d + 1);
  a.leftCols(d) = s.z;
  a.col(d).setOnes();
  Eigen::VectorXd yv(n);
  for (Eigen::Index i = 0; i < n; ++i) yv(i) = y[static_cast<size_t>(i)];
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::VectorXd penalty = Eigen::VectorXd::Constant(d + 1, l2);
  penalty(d) = 0.0;

  auto objective = [&](const Eigen::VectorXd& theta) {
    Eigen::VectorXd sc = a * theta;
    double loss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) loss += softplus(sc(i)) - yv(i) * sc(i);
    return loss * inv_n +
           0.5 * (penalty.array() * theta.array().square()).sum();
  };

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
  double f = objective(theta);
  constexpr int kMaxIterations = 200;
  for (int it = 0; it < kMaxIterations; ++it) {
    Eigen::VectorXd sc = a * theta;
    Eigen::VectorXd p(n), wdiag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      p(i) = sigmoid(sc(i));
      wdiag(i) = p(i) * (1.0 - p(i));
    }
    Eigen::VectorXd grad = a.transpose() * (p - yv) * inv_n;
    grad.array() += penalty.array() * theta.array();
    if (grad.lpNorm<Eigen::Infinity>() < 1e-14) break;
    Eigen::MatrixXd h = a.transpose() * wdiag.asDiagonal() * a * inv_n;
    h.diagonal() += penalty;
    // Tiny ridge on the bias keeps the system solvable when every sample
    // saturates.
    h(d, d) += 1e-14;
    Eigen::VectorXd step = h.ldlt().solve(grad);
    double t = 1.0;
    Eigen::VectorXd candidate = theta - step;
    double fc = objective(candidate);
    while (fc > f + 1e-4 * t * grad.dot(-step) && t > 1e-10) {
      t *= 0.5;
      candidate = theta - t * step;
      fc = objective(candidate);
    }
    double moved = (candidate - theta).lpNorm<Eigen::Infinity>();
    theta = std::move(candidate);
    f = fc;
    if (moved < 1e-15) break;
  }

  LinearModel m;
  m.mode = LinearMode::kClassification;
  m.weights.assign(theta.data(), theta.data() + d);
  m.bias = theta(d);
  m.mean = std::move(s.mean);
  m.stddev = std::move(s.stddev);
  return m;
}

}  // namespace tlsum
