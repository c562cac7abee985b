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

// Event detection by Markov clustering of a temporally constrained article
// graph, and clustering-based timelines.

#ifndef TLSUM_CLUSTER_H_
#define TLSUM_CLUSTER_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tlsum/corpus.h"
#include "tlsum/dateselect.h"
#include "tlsum/linear.h"
#include "tlsum/summarize.h"
#include "tlsum/vecspace.h"

namespace tlsum::cluster {

// Articles more than this many days apart are never connected.
inline constexpr int kMaxEdgeDays = 1;
inline constexpr size_t kNumClusterFeatures = 5;
inline constexpr std::string_view kClusterFeatureSchema = "cluster-features-v1";

struct Edge {
  size_t a;  // a < b
  size_t b;
  double weight;

  bool operator==(const Edge&) const = default;
};

// Nodes are positions in the article list handed to build_temporal_graph.
struct ArticleGraph {
  std::vector<std::string> ids;
  std::vector<Date> dates;
  std::vector<Edge> edges;

  size_t num_nodes() const { return ids.size(); }
};

// Article-level TF-IDF over the content tokens of title and body.
vecspace::TfidfModel fit_article_model(std::span<const Article> articles);

// Edges between articles published at most kMaxEdgeDays apart with positive
// cosine similarity. Edges are ordered by (a, b).
ArticleGraph build_temporal_graph(std::span<const Article> articles,
                                  const vecspace::TfidfModel& model);

struct MclOptions {
  double inflation = 2.0;
  int expansion = 2;
  double prune = 1e-5;
  double tolerance = 1e-8;
  int max_iterations = 100;
};

struct ArticleCluster {
  // Node positions, ascending.
  std::vector<size_t> members;
  std::vector<std::string> article_ids;
  Date cluster_date;
  std::array<double, kNumClusterFeatures> features{};
  double score = 0.0;
};

// Clusters are the connected components of the converged flow matrix,
// ordered by their smallest member. Every node lands in exactly one cluster.
std::vector<ArticleCluster> mcl(const ArticleGraph& graph, const MclOptions& options = {});

// Most-mentioned date across the cluster's sentences (each sentence counts a
// date once), ties to the earlier date. Without mentions, the most common
// publication date. A span restricts which mentions count.
Date assign_cluster_date(const ArticleCluster& cluster, std::span<const Article> articles,
                         const DateSpan* span = nullptr);

// (article count, days between first and last publication, most articles on
// one publication date, highest mention count of a date, total mentions).
std::array<double, kNumClusterFeatures> cluster_features(const ArticleCluster& cluster,
                                                         std::span<const Article> articles,
                                                         const DateSpan* span = nullptr);

// Graph, clusters, dates and features for a task. Mentions are restricted to
// the ground-truth span when there is one.
std::vector<ArticleCluster> detect_events(const Task& task, const MclOptions& options = {});

enum class LabelMode { kDateAccuracy, kRouge };

// Ridge regression from cluster features to Date-Accuracy or ROUGE-1 F1
// labels. ROUGE labels compare the cluster summary (first 5 sentences of the
// members, k sentences) with the ground-truth summary of the cluster date.
LinearModel train_cluster_regressor(std::span<const Task> training_tasks, LabelMode mode,
                                    summarize::Method summarizer = summarize::Method::kCentroidOpt,
                                    const MclOptions& options = {});
// Feature rows and labels of one task's clusters.
dateselect::Samples cluster_samples(const Task& task, LabelMode mode,
                                    summarize::Method summarizer = summarize::Method::kCentroidOpt,
                                    const MclOptions& options = {});
LinearModel train_cluster_regressor(const dateselect::Samples& samples);

enum class RankMethod { kSize, kDateMentionCount, kRegression };

// Fills ArticleCluster::score and orders by descending score, then earlier
// cluster date, then smaller smallest article id. DateMentionCount counts
// mentions of the cluster date over the whole collection.
std::vector<ArticleCluster> rank_clusters(std::vector<ArticleCluster> clusters,
                                          RankMethod method,
                                          std::span<const Article> collection,
                                          const LinearModel* model = nullptr);

// CLI names: size, datementioncount, regression-dates, regression-rouge.
struct ClusterRanker {
  RankMethod method = RankMethod::kDateMentionCount;
  LabelMode labels = LabelMode::kDateAccuracy;
};
ClusterRanker parse_ranker(std::string_view name);
const char* ranker_name(const ClusterRanker& r);

struct ClustConfig {
  RankMethod ranker = RankMethod::kDateMentionCount;
  const LinearModel* model = nullptr;
  summarize::Method summarizer = summarize::Method::kCentroidOpt;
  int l = 10;
  int k = 1;
  MclOptions mcl;
};

inline constexpr std::string_view kNoSummarizableClusters = "no-summarizable-clusters";

struct ClustResult {
  Timeline timeline;
  std::string warning;
  // Ranked clusters, for debugging.
  std::vector<ArticleCluster> clusters;
};

ClustResult build_clust_timeline(const Task& task, const ClustConfig& config);

std::string clusters_to_json(std::span<const ArticleCluster> clusters);

}  // namespace tlsum::cluster

#endif  // TLSUM_CLUSTER_H_
