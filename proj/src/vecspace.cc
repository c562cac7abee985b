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

#include "tlsum/vecspace.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace tlsum::vecspace {

SparseVector SparseVector::from_pairs(std::vector<Feature> features) {
  std::sort(features.begin(), features.end(),
            [](const Feature& a, const Feature& b) { return a.index < b.index; });
  SparseVector v;
  for (const auto& f : features) {
    if (!v.features_.empty() && v.features_.back().index == f.index) {
      v.features_.back().weight += f.weight;
    } else {
      v.features_.push_back(f);
    }
  }
  std::erase_if(v.features_, [](const Feature& f) { return f.weight == 0.0; });
  return v;
}

double SparseVector::weight(int32_t index) const {
  auto it = std::lower_bound(
      features_.begin(), features_.end(), index,
      [](const Feature& f, int32_t i) { return f.index < i; });
  if (it == features_.end() || it->index != index) return 0.0;
  return it->weight;
}

double SparseVector::norm() const {
  double s = 0.0;
  for (const auto& f : features_) s += f.weight * f.weight;
  return std::sqrt(s);
}

double SparseVector::dot(const SparseVector& other) const {
  double s = 0.0;
  auto a = features_.begin();
  auto b = other.features_.begin();
  while (a != features_.end() && b != other.features_.end()) {
    if (a->index < b->index) {
      ++a;
    } else if (b->index < a->index) {
      ++b;
    } else {
      s += a->weight * b->weight;
      ++a;
      ++b;
    }
  }
  return s;
}

SparseVector SparseVector::normalized() const {
  double n = norm();
  if (n == 0.0) return {};
  return scaled(1.0 / n);
}

SparseVector SparseVector::scaled(double factor) const {
  if (factor == 0.0) return {};
  SparseVector v;
  v.features_.reserve(features_.size());
  for (const auto& f : features_) v.features_.push_back({f.index, f.weight * factor});
  return v;
}

SparseVector SparseVector::plus(const SparseVector& other) const {
  SparseVector v;
  v.features_.reserve(features_.size() + other.features_.size());
  auto a = features_.begin();
  auto b = other.features_.begin();
  while (a != features_.end() || b != other.features_.end()) {
    if (b == other.features_.end() || (a != features_.end() && a->index < b->index)) {
      v.features_.push_back(*a++);
    } else if (a == features_.end() || b->index < a->index) {
      v.features_.push_back(*b++);
    } else {
      double w = a->weight + b->weight;
      if (w != 0.0) v.features_.push_back({a->index, w});
      ++a;
      ++b;
    }
  }
  return v;
}

std::optional<int32_t> TfidfModel::index_of(const std::string& token) const {
  auto it = vocabulary_.find(token);
  if (it == vocabulary_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> TfidfModel::idf_of(const std::string& token) const {
  auto i = index_of(token);
  if (!i) return std::nullopt;
  return idf_[static_cast<size_t>(*i)];
}

TfidfModel fit(std::span<const std::vector<std::string>> units) {
  if (units.empty()) throw std::invalid_argument("fit: no units");
  std::map<std::string, size_t> df;
  std::vector<std::string> seen;
  for (const auto& unit : units) {
    seen.assign(unit.begin(), unit.end());
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto& t : seen) ++df[t];
  }
  if (df.empty()) throw std::invalid_argument("fit: all units are empty");
  TfidfModel model;
  model.n_docs_ = units.size();
  model.vocabulary_.reserve(df.size());
  model.idf_.reserve(df.size());
  const double n = static_cast<double>(units.size());
  int32_t next = 0;
  for (const auto& [token, count] : df) {
    model.vocabulary_.emplace(token, next++);
    model.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return model;
}

SparseVector vectorize(std::span<const std::string> tokens, const TfidfModel& model) {
  std::vector<Feature> raw;
  raw.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (auto i = model.index_of(t)) {
      raw.push_back({*i, model.idf()[static_cast<size_t>(*i)]});
    }
  }
  return SparseVector::from_pairs(std::move(raw)).normalized();
}

double cosine(const SparseVector& a, const SparseVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  double na = a.norm();
  double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  double c = a.dot(b) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

namespace {

template <typename Get>
SparseVector mean_impl(size_t n, Get get) {
  if (n == 0) throw std::invalid_argument("mean: empty list");
  std::vector<Feature> all;
  for (size_t i = 0; i < n; ++i) {
    const auto& f = get(i).features();
    all.insert(all.end(), f.begin(), f.end());
  }
  SparseVector sum = SparseVector::from_pairs(std::move(all));
  return sum.scaled(1.0 / static_cast<double>(n));
}

}  // namespace

SparseVector mean(std::span<const SparseVector> vectors) {
  return mean_impl(vectors.size(), [&](size_t i) -> const SparseVector& {
    return vectors[i];
  });
}

SparseVector mean(std::span<const SparseVector* const> vectors) {
  return mean_impl(vectors.size(), [&](size_t i) -> const SparseVector& {
    return *vectors[i];
  });
}

}  // namespace tlsum::vecspace
