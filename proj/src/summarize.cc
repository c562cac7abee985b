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

#include "tlsum/summarize.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tlsum/text.h"

namespace tlsum::summarize {

using vecspace::SparseVector;

namespace {

// Improvements below this are treated as ties.
constexpr double kEps = 1e-12;

// Candidates deduplicated and ordered by sentence key, with vectors and
// eligibility flags.
struct Prepared {
  SentenceRefs sents;
  std::vector<SparseVector> vecs;
  std::vector<bool> eligible;
  SparseVector centroid;
};

Prepared prepare(const SummaryRequest& req) {
  if (req.model == nullptr) throw std::invalid_argument("summarize: no model");
  if (req.k < 1) throw std::invalid_argument("summarize: k must be >= 1");
  Prepared p;
  p.sents = req.candidates;
  std::sort(p.sents.begin(), p.sents.end(),
            [](const Sentence* a, const Sentence* b) { return sentence_key_less(*a, *b); });
  p.sents.erase(std::unique(p.sents.begin(), p.sents.end(),
                            [](const Sentence* a, const Sentence* b) {
                              return a->article_id == b->article_id &&
                                     a->index == b->index;
                            }),
                p.sents.end());
  p.vecs.reserve(p.sents.size());
  p.eligible.reserve(p.sents.size());
  for (const Sentence* s : p.sents) {
    p.vecs.push_back(vecspace::vectorize(s->tokens, *req.model));
    p.eligible.push_back(text::contains_any(s->text, req.queries));
  }
  if (!p.vecs.empty()) p.centroid = vecspace::mean(std::span<const SparseVector>(p.vecs));
  return p;
}

bool any_eligible(const Prepared& p) {
  return std::find(p.eligible.begin(), p.eligible.end(), true) != p.eligible.end();
}

// Top-k eligible items by score; items are already in key order so a stable
// sort keeps the tie rule.
SentenceRefs top_k(const Prepared& p, const std::vector<double>& scores, int k) {
  std::vector<size_t> order;
  for (size_t i = 0; i < p.sents.size(); ++i) {
    if (p.eligible[i]) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  SentenceRefs out;
  for (size_t i = 0; i < order.size() && out.size() < static_cast<size_t>(k); ++i) {
    out.push_back(p.sents[order[i]]);
  }
  return out;
}

std::vector<std::vector<double>> similarity_matrix(const std::vector<SparseVector>& vecs,
                                                   bool self) {
  const size_t n = vecs.size();
  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    if (self && !vecs[i].empty()) sim[i][i] = 1.0;
    for (size_t j = i + 1; j < n; ++j) {
      double c = vecspace::cosine(vecs[i], vecs[j]);
      sim[i][j] = c;
      sim[j][i] = c;
    }
  }
  return sim;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::kTextRank:
      return "textrank";
    case Method::kCentroidRank:
      return "centroid-rank";
    case Method::kCentroidOpt:
      return "centroid-opt";
    case Method::kSubmodular:
      return "submodular";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "textrank") return Method::kTextRank;
  if (name == "centroid-rank") return Method::kCentroidRank;
  if (name == "centroid-opt") return Method::kCentroidOpt;
  if (name == "submodular") return Method::kSubmodular;
  throw std::invalid_argument("unknown summarizer '" + std::string(name) + "'");
}

SentenceRefs summarize_centroid_opt(const SummaryRequest& req) {
  Prepared p = prepare(req);
  SentenceRefs out;
  if (!any_eligible(p)) return out;
  std::vector<bool> used(p.sents.size(), false);
  SparseVector sum;
  double current = 0.0;
  while (out.size() < static_cast<size_t>(req.k)) {
    double best = -1.0;
    size_t best_i = p.sents.size();
    SparseVector best_sum;
    for (size_t i = 0; i < p.sents.size(); ++i) {
      if (!p.eligible[i] || used[i]) continue;
      SparseVector trial = sum.plus(p.vecs[i]);
      double v = vecspace::cosine(trial, p.centroid);
      if (best_i == p.sents.size() || v > best + kEps) {
        best = v;
        best_i = i;
        best_sum = std::move(trial);
      }
    }
    if (best_i == p.sents.size()) break;
    // The first pick is unconditional.
    if (!out.empty() && best <= current + kEps) break;
    used[best_i] = true;
    out.push_back(p.sents[best_i]);
    sum = std::move(best_sum);
    current = best;
  }
  return out;
}

SentenceRefs summarize_centroid_rank(const SummaryRequest& req) {
  Prepared p = prepare(req);
  if (!any_eligible(p)) return {};
  std::vector<double> scores(p.sents.size());
  for (size_t i = 0; i < p.sents.size(); ++i) {
    scores[i] = vecspace::cosine(p.vecs[i], p.centroid);
  }
  return top_k(p, scores, req.k);
}

namespace detail {

std::vector<double> pagerank(const std::vector<std::vector<double>>& weights,
                             double damping, double tolerance, int max_iterations) {
  const size_t n = weights.size();
  if (n == 0) return {};
  std::vector<double> out_weight(n, 0.0);
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < n; ++i) {
      if (i != j) out_weight[j] += weights[j][i];
    }
  }
  const double teleport = (1.0 - damping) / static_cast<double>(n);
  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (int it = 0; it < max_iterations; ++it) {
    for (size_t i = 0; i < n; ++i) {
      double in = 0.0;
      for (size_t j = 0; j < n; ++j) {
        if (j == i || weights[j][i] <= 0.0 || out_weight[j] <= 0.0) continue;
        in += weights[j][i] / out_weight[j] * rank[j];
      }
      next[i] = teleport + damping * in;
    }
    double change = 0.0;
    for (size_t i = 0; i < n; ++i) change += std::abs(next[i] - rank[i]);
    rank.swap(next);
    if (change < tolerance) break;
  }
  return rank;
}

std::vector<int> diversity_groups(std::span<const SparseVector> vectors,
                                  size_t n_groups) {
  const size_t n = vectors.size();
  std::vector<int> group(n, 0);
  if (n == 0 || n_groups <= 1) return group;
  n_groups = std::min(n_groups, n);

  // Farthest-first seeds: each new seed minimizes its highest similarity to
  // the seeds chosen so far.
  std::vector<size_t> seeds = {0};
  std::vector<double> closest(n, 0.0);
  for (size_t i = 0; i < n; ++i) closest[i] = vecspace::cosine(vectors[i], vectors[0]);
  std::vector<bool> is_seed(n, false);
  is_seed[0] = true;
  while (seeds.size() < n_groups) {
    size_t pick = n;
    for (size_t i = 0; i < n; ++i) {
      if (is_seed[i]) continue;
      if (pick == n || closest[i] < closest[pick] - kEps) pick = i;
    }
    seeds.push_back(pick);
    is_seed[pick] = true;
    for (size_t i = 0; i < n; ++i) {
      closest[i] = std::max(closest[i], vecspace::cosine(vectors[i], vectors[pick]));
    }
  }

  std::vector<SparseVector> centers;
  for (size_t s : seeds) centers.push_back(vectors[s]);
  auto assign = [&](std::vector<int>& g) {
    bool changed = false;
    for (size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_sim = -2.0;
      for (size_t c = 0; c < centers.size(); ++c) {
        double s = vecspace::cosine(vectors[i], centers[c]);
        if (s > best_sim + kEps) {
          best_sim = s;
          best = static_cast<int>(c);
        }
      }
      if (g[i] != best) {
        g[i] = best;
        changed = true;
      }
    }
    return changed;
  };
  std::fill(group.begin(), group.end(), -1);
  assign(group);
  constexpr int kMaxRounds = 10;
  for (int round = 0; round < kMaxRounds; ++round) {
    for (size_t c = 0; c < centers.size(); ++c) {
      std::vector<const SparseVector*> members;
      for (size_t i = 0; i < n; ++i) {
        if (group[i] == static_cast<int>(c)) members.push_back(&vectors[i]);
      }
      if (!members.empty()) {
        centers[c] = vecspace::mean(std::span<const SparseVector* const>(members));
      }
    }
    if (!assign(group)) break;
  }
  return group;
}

}  // namespace detail

SentenceRefs summarize_textrank(const SummaryRequest& req) {
  Prepared p = prepare(req);
  if (!any_eligible(p)) return {};
  auto sim = similarity_matrix(p.vecs, /*self=*/false);
  std::vector<double> scores = detail::pagerank(sim);
  return top_k(p, scores, req.k);
}

SentenceRefs summarize_submodular(const SummaryRequest& req) {
  Prepared p = prepare(req);
  SentenceRefs out;
  if (!any_eligible(p)) return out;
  const size_t n = p.sents.size();
  auto sim = similarity_matrix(p.vecs, /*self=*/true);
  std::vector<double> cap(n);
  for (size_t i = 0; i < n; ++i) {
    double total = std::accumulate(sim[i].begin(), sim[i].end(), 0.0);
    cap[i] = detail::kSubmodularAlpha * total / static_cast<double>(n);
  }
  std::vector<double> reward(n);
  for (size_t j = 0; j < n; ++j) reward[j] = vecspace::cosine(p.vecs[j], p.centroid);
  size_t n_groups = (n + detail::kGroupSize - 1) / detail::kGroupSize;
  std::vector<int> group = detail::diversity_groups(p.vecs, n_groups);
  std::vector<double> group_sum(n_groups == 0 ? 1 : n_groups, 0.0);
  std::vector<double> cover(n, 0.0);
  std::vector<bool> used(n, false);

  while (out.size() < static_cast<size_t>(req.k)) {
    double best = 0.0;
    size_t best_j = n;
    for (size_t j = 0; j < n; ++j) {
      if (!p.eligible[j] || used[j]) continue;
      double gain = 0.0;
      for (size_t i = 0; i < n; ++i) {
        gain += std::min(cover[i] + sim[i][j], cap[i]) - std::min(cover[i], cap[i]);
      }
      double g = group_sum[static_cast<size_t>(group[j])];
      gain += detail::kSubmodularLambda * (std::sqrt(g + reward[j]) - std::sqrt(g));
      if (best_j == n || gain > best + kEps) {
        best = gain;
        best_j = j;
      }
    }
    if (best_j == n || (!out.empty() && best <= kEps)) break;
    used[best_j] = true;
    out.push_back(p.sents[best_j]);
    for (size_t i = 0; i < n; ++i) cover[i] += sim[i][best_j];
    group_sum[static_cast<size_t>(group[best_j])] += reward[best_j];
  }
  return out;
}

SentenceRefs summarize(Method method, const SummaryRequest& req) {
  switch (method) {
    case Method::kTextRank:
      return summarize_textrank(req);
    case Method::kCentroidRank:
      return summarize_centroid_rank(req);
    case Method::kCentroidOpt:
      return summarize_centroid_opt(req);
    case Method::kSubmodular:
      return summarize_submodular(req);
  }
  throw std::invalid_argument("unknown summarizer");
}

}  // namespace tlsum::summarize
