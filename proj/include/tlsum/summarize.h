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

// Extractive multi-document summarizers.
//
// Every summarizer sees all candidates when building graphs and centroids,
// but only returns sentences containing one of the query keyphrases. An
// empty result means nothing eligible could be picked; the caller skips the
// date or cluster. Ties are broken by (article_id, index).

#ifndef TLSUM_SUMMARIZE_H_
#define TLSUM_SUMMARIZE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tlsum/corpus.h"
#include "tlsum/vecspace.h"

namespace tlsum::summarize {

struct SummaryRequest {
  SentenceRefs candidates;
  int k = 1;
  std::vector<std::string> queries;
  const vecspace::TfidfModel* model = nullptr;
};

enum class Method { kTextRank, kCentroidRank, kCentroidOpt, kSubmodular };

const char* method_name(Method m);
// Accepts "textrank", "centroid-rank", "centroid-opt", "submodular".
Method parse_method(std::string_view name);

// Greedily grows the summary whose mean vector is most similar to the
// candidate centroid; stops at k or when no addition improves similarity.
SentenceRefs summarize_centroid_opt(const SummaryRequest& req);

// Top-k eligible sentences by similarity to the centroid.
SentenceRefs summarize_centroid_rank(const SummaryRequest& req);

// PageRank (damping 0.85) over the cosine similarity graph.
SentenceRefs summarize_textrank(const SummaryRequest& req);

// Greedy maximization of coverage plus diversity reward:
//   F(S) = sum_i min(C_i(S), alpha * C_i(V) / |V|)
//        + lambda * sum_g sqrt(sum_{s in S, s in g} sim(s, centroid))
// with alpha = 6, lambda = 0.3 and ceil(|V| / 5) diversity groups.
SentenceRefs summarize_submodular(const SummaryRequest& req);

SentenceRefs summarize(Method method, const SummaryRequest& req);

namespace detail {

inline constexpr double kSubmodularAlpha = 6.0;
inline constexpr double kSubmodularLambda = 0.3;
inline constexpr int kGroupSize = 5;

// Deterministic k-means-style grouping by cosine similarity with
// farthest-first seeding starting at item 0. Returns a group id per item.
std::vector<int> diversity_groups(std::span<const vecspace::SparseVector> vectors,
                                  size_t n_groups);

// PageRank scores, exposed for testing. Edges with zero weight are absent;
// mass of nodes without out-edges is not redistributed.
std::vector<double> pagerank(const std::vector<std::vector<double>>& weights,
                             double damping = 0.85, double tolerance = 1e-8,
                             int max_iterations = 200);

}  // namespace detail
}  // namespace tlsum::summarize

#endif  // TLSUM_SUMMARIZE_H_
