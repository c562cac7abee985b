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

// Sparse unigram TF-IDF vector space.

#ifndef TLSUM_VECSPACE_H_
#define TLSUM_VECSPACE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace tlsum::vecspace {

struct Feature {
  int32_t index;
  double weight;

  bool operator==(const Feature&) const = default;
};

// Strictly increasing indices, no explicit zeros.
class SparseVector {
 public:
  SparseVector() = default;
  // Sorts, sums duplicate indices and drops zeros.
  static SparseVector from_pairs(std::vector<Feature> features);

  const std::vector<Feature>& features() const { return features_; }
  bool empty() const { return features_.empty(); }
  size_t size() const { return features_.size(); }

  double weight(int32_t index) const;
  double norm() const;
  double dot(const SparseVector& other) const;

  SparseVector normalized() const;
  SparseVector scaled(double factor) const;
  // this + other.
  SparseVector plus(const SparseVector& other) const;

  bool operator==(const SparseVector&) const = default;

 private:
  std::vector<Feature> features_;
};

class TfidfModel {
 public:
  const std::unordered_map<std::string, int32_t>& vocabulary() const {
    return vocabulary_;
  }
  const std::vector<double>& idf() const { return idf_; }
  size_t n_docs() const { return n_docs_; }
  size_t dimension() const { return idf_.size(); }

  std::optional<int32_t> index_of(const std::string& token) const;
  // idf of a token, or nullopt when out of vocabulary.
  std::optional<double> idf_of(const std::string& token) const;

 private:
  friend TfidfModel fit(std::span<const std::vector<std::string>> units);
  std::unordered_map<std::string, int32_t> vocabulary_;
  std::vector<double> idf_;
  size_t n_docs_ = 0;
};

// idf(t) = ln((1 + N) / (1 + df(t))) + 1. Vocabulary indices follow the
// lexicographic order of tokens. Throws std::invalid_argument when there are
// no units or every unit is empty.
TfidfModel fit(std::span<const std::vector<std::string>> units);

// Raw term counts times idf, L2-normalized. Unknown tokens are ignored.
SparseVector vectorize(std::span<const std::string> tokens, const TfidfModel& model);

// Cosine similarity; 0 when either side is empty. Clamped to [-1, 1].
double cosine(const SparseVector& a, const SparseVector& b);

// Elementwise arithmetic mean, not renormalized. Throws on an empty list.
SparseVector mean(std::span<const SparseVector> vectors);
SparseVector mean(std::span<const SparseVector* const> vectors);

}  // namespace tlsum::vecspace

#endif  // TLSUM_VECSPACE_H_
