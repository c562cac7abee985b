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

#include "tlsum/cluster.h"

#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "json.hpp"
#include "tlsum/datewise.h"
#include "tlsum/evaluate.h"
#include "tlsum/text.h"

namespace tlsum::cluster {

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor>;

void normalize_columns(SpMat& m) {
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    double sum = 0.0;
    for (SpMat::InnerIterator it(m, c); it; ++it) sum += it.value();
    if (sum <= 0.0) continue;
    for (SpMat::InnerIterator it(m, c); it; ++it) it.valueRef() /= sum;
  }
}

double max_abs_difference(const SpMat& a, const SpMat& b) {
  SpMat d = a - b;
  double out = 0.0;
  for (Eigen::Index c = 0; c < d.outerSize(); ++c) {
    for (SpMat::InnerIterator it(d, c); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

// Distinct dates mentioned per sentence, counted over a cluster.
std::map<Date, int> mention_counts(const ArticleCluster& cluster,
                                   std::span<const Article> articles, const DateSpan* span) {
  std::map<Date, int> counts;
  for (size_t m : cluster.members) {
    for (const auto& s : articles[m].sentences) {
      std::vector<Date> dates;
      for (const auto& dm : s.mentions) {
        if (span == nullptr || span->contains(dm.resolved)) dates.push_back(dm.resolved);
      }
      std::sort(dates.begin(), dates.end());
      dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
      for (Date d : dates) ++counts[d];
    }
  }
  return counts;
}

std::map<Date, int> pub_counts(const ArticleCluster& cluster, std::span<const Article> articles) {
  std::map<Date, int> counts;
  for (size_t m : cluster.members) ++counts[articles[m].pub_date];
  return counts;
}

// Highest count, ties to the earlier date. The map must be non-empty.
std::pair<Date, int> argmax(const std::map<Date, int>& counts) {
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return {best->first, best->second};
}

const DateSpan* task_span(const Task& task, DateSpan& storage) {
  if (task.ground_truth.empty()) return nullptr;
  storage = {task.ground_truth.first_date(), task.ground_truth.last_date()};
  return &storage;
}

SentenceRefs cluster_candidates(const ArticleCluster& cluster, std::span<const Article> articles) {
  SentenceRefs out;
  for (size_t m : cluster.members) {
    const auto& sents = articles[m].sentences;
    size_t n = std::min<size_t>(sents.size(), datewise::kLeadSentences);
    for (size_t i = 0; i < n; ++i) out.push_back(&sents[i]);
  }
  return out;
}

std::string smallest_id(const ArticleCluster& c) {
  return c.article_ids.empty() ? std::string()
                               : *std::min_element(c.article_ids.begin(), c.article_ids.end());
}

}  // namespace

vecspace::TfidfModel fit_article_model(std::span<const Article> articles) {
  std::vector<std::vector<std::string>> units;
  units.reserve(articles.size());
  for (const auto& a : articles) {
    std::vector<std::string> toks = text::content_tokens(a.headline.tokens);
    for (const auto& s : a.sentences) {
      auto c = text::content_tokens(s.tokens);
      toks.insert(toks.end(), c.begin(), c.end());
    }
    units.push_back(std::move(toks));
  }
  return vecspace::fit(units);
}

ArticleGraph build_temporal_graph(std::span<const Article> articles,
                                  const vecspace::TfidfModel& model) {
  ArticleGraph g;
  const size_t n = articles.size();
  std::vector<vecspace::SparseVector> vecs;
  vecs.reserve(n);
  for (const auto& a : articles) {
    g.ids.push_back(a.id);
    g.dates.push_back(a.pub_date);
    std::vector<std::string> toks = a.headline.tokens;
    for (const auto& s : a.sentences) toks.insert(toks.end(), s.tokens.begin(), s.tokens.end());
    vecs.push_back(vecspace::vectorize(toks, model));
  }
  // Visit pairs in date order so only the 1-day band is compared.
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t x, size_t y) { return g.dates[x] < g.dates[y]; });
  for (size_t oi = 0; oi < n; ++oi) {
    size_t i = order[oi];
    for (size_t oj = oi + 1; oj < n; ++oj) {
      size_t j = order[oj];
      if (g.dates[j] - g.dates[i] > kMaxEdgeDays) break;
      double w = vecspace::cosine(vecs[i], vecs[j]);
      if (w <= 0.0) continue;
      g.edges.push_back({std::min(i, j), std::max(i, j), std::min(w, 1.0)});
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const Edge& x, const Edge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return g;
}

std::vector<ArticleCluster> mcl(const ArticleGraph& graph, const MclOptions& options) {
  if (options.inflation <= 1.0) throw std::invalid_argument("mcl: inflation must be > 1");
  if (options.expansion < 2) throw std::invalid_argument("mcl: expansion must be >= 2");
  const auto n = static_cast<Eigen::Index>(graph.num_nodes());
  std::vector<ArticleCluster> out;
  if (n == 0) return out;

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(graph.edges.size() * 2 + static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
  for (const auto& e : graph.edges) {
    auto a = static_cast<Eigen::Index>(e.a);
    auto b = static_cast<Eigen::Index>(e.b);
    trips.emplace_back(a, b, e.weight);
    trips.emplace_back(b, a, e.weight);
  }
  SpMat m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  normalize_columns(m);

  for (int it = 0; it < options.max_iterations; ++it) {
    SpMat next = m;
    for (int e = 1; e < options.expansion; ++e) next = SpMat(next * m);
    for (Eigen::Index c = 0; c < next.outerSize(); ++c) {
      for (SpMat::InnerIterator iter(next, c); iter; ++iter) {
        iter.valueRef() = std::pow(iter.value(), options.inflation);
      }
    }
    normalize_columns(next);
    next.prune([&](Eigen::Index, Eigen::Index, double v) { return v >= options.prune; });
    double change = max_abs_difference(next, m);
    m = std::move(next);
    if (change < options.tolerance) break;
  }

  UnionFind uf(static_cast<size_t>(n));
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    for (SpMat::InnerIterator it(m, c); it; ++it) {
      uf.unite(static_cast<size_t>(it.row()), static_cast<size_t>(c));
    }
  }
  std::map<size_t, size_t> slot;
  for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
    size_t root = uf.find(i);
    auto [pos, inserted] = slot.try_emplace(root, out.size());
    if (inserted) out.emplace_back();
    out[pos->second].members.push_back(i);
    out[pos->second].article_ids.push_back(graph.ids[i]);
  }
  return out;
}

Date assign_cluster_date(const ArticleCluster& cluster, std::span<const Article> articles,
                         const DateSpan* span) {
  if (cluster.members.empty()) throw std::invalid_argument("assign_cluster_date: empty cluster");
  auto mentions = mention_counts(cluster, articles, span);
  if (!mentions.empty()) return argmax(mentions).first;
  return argmax(pub_counts(cluster, articles)).first;
}

std::array<double, kNumClusterFeatures> cluster_features(const ArticleCluster& cluster,
                                                         std::span<const Article> articles,
                                                         const DateSpan* span) {
  std::array<double, kNumClusterFeatures> f{};
  if (cluster.members.empty()) return f;
  auto pubs = pub_counts(cluster, articles);
  auto mentions = mention_counts(cluster, articles, span);
  f[0] = static_cast<double>(cluster.members.size());
  f[1] = static_cast<double>(pubs.rbegin()->first - pubs.begin()->first);
  f[2] = argmax(pubs).second;
  f[3] = mentions.empty() ? 0.0 : argmax(mentions).second;
  double sum = 0.0;
  for (const auto& [d, c] : mentions) sum += c;
  f[4] = sum;
  return f;
}

std::vector<ArticleCluster> detect_events(const Task& task, const MclOptions& options) {
  if (task.articles.empty()) return {};
  vecspace::TfidfModel model;
  try {
    model = fit_article_model(task.articles);
  } catch (const std::invalid_argument&) {
    return {};
  }
  auto clusters = mcl(build_temporal_graph(task.articles, model), options);
  DateSpan storage;
  const DateSpan* span = task_span(task, storage);
  for (auto& c : clusters) {
    c.cluster_date = assign_cluster_date(c, task.articles, span);
    c.features = cluster_features(c, task.articles, span);
  }
  return clusters;
}

dateselect::Samples cluster_samples(const Task& task, LabelMode mode,
                                    summarize::Method summarizer, const MclOptions& options) {
  dateselect::Samples out;
  auto clusters = detect_events(task, options);
  vecspace::TfidfModel sentence_model;
  if (mode == LabelMode::kRouge && !clusters.empty()) {
    sentence_model = datewise::fit_sentence_model(task.articles);
  }
  for (const auto& c : clusters) {
    out.x.emplace_back(c.features.begin(), c.features.end());
    const TimelineEntry* ref = task.ground_truth.find(c.cluster_date);
    double label = 0.0;
    if (ref != nullptr && mode == LabelMode::kDateAccuracy) {
      label = 1.0;
    } else if (ref != nullptr) {
      summarize::SummaryRequest req{cluster_candidates(c, task.articles), task.target_k(),
                                    task.queries, &sentence_model};
      std::string summary, reference;
      for (const Sentence* s : summarize::summarize(summarizer, req)) summary += s->text + " ";
      for (const auto& s : ref->sentences) reference += s + " ";
      label = evaluate::rouge_n(evaluate::rouge_tokens(summary),
                                evaluate::rouge_tokens(reference), 1)
                  .f1;
    }
    out.y.push_back(label);
  }
  return out;
}

LinearModel train_cluster_regressor(const dateselect::Samples& samples) {
  if (samples.x.empty()) throw DegenerateLabels();
  LinearModel m = train_ridge(samples.x, samples.y);
  m.feature_schema = std::string(kClusterFeatureSchema);
  return m;
}

LinearModel train_cluster_regressor(std::span<const Task> training_tasks, LabelMode mode,
                                    summarize::Method summarizer, const MclOptions& options) {
  if (training_tasks.empty()) {
    throw std::invalid_argument("train_cluster_regressor: no training tasks");
  }
  dateselect::Samples all;
  for (const auto& task : training_tasks) {
    all.append(cluster_samples(task, mode, summarizer, options));
  }
  return train_cluster_regressor(all);
}

std::vector<ArticleCluster> rank_clusters(std::vector<ArticleCluster> clusters, RankMethod method,
                                          std::span<const Article> collection,
                                          const LinearModel* model) {
  if (method == RankMethod::kRegression) {
    if (model == nullptr) throw std::invalid_argument("regression ranking requires a model");
    if (model->num_features() != kNumClusterFeatures) {
      throw std::invalid_argument("feature-length mismatch: cluster model expects " +
                                  std::to_string(kNumClusterFeatures) + " features, has " +
                                  std::to_string(model->num_features()));
    }
  }
  std::map<Date, int> collection_mentions;
  if (method == RankMethod::kDateMentionCount) {
    for (const auto& a : collection) {
      for (const auto& s : a.sentences) {
        std::vector<Date> dates;
        for (const auto& m : s.mentions) dates.push_back(m.resolved);
        std::sort(dates.begin(), dates.end());
        dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
        for (Date d : dates) ++collection_mentions[d];
      }
    }
  }
  for (auto& c : clusters) {
    switch (method) {
      case RankMethod::kSize:
        c.score = static_cast<double>(c.members.size());
        break;
      case RankMethod::kDateMentionCount: {
        auto it = collection_mentions.find(c.cluster_date);
        c.score = it == collection_mentions.end() ? 0.0 : it->second;
        break;
      }
      case RankMethod::kRegression:
        c.score = model->score(c.features);
        break;
    }
  }
  std::vector<std::string> smallest;
  std::vector<size_t> order(clusters.size());
  std::iota(order.begin(), order.end(), 0);
  for (const auto& c : clusters) smallest.push_back(smallest_id(c));
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& x = clusters[a];
    const auto& y = clusters[b];
    if (x.score != y.score) return x.score > y.score;
    if (x.cluster_date != y.cluster_date) return x.cluster_date < y.cluster_date;
    return smallest[a] < smallest[b];
  });
  std::vector<ArticleCluster> out;
  out.reserve(clusters.size());
  for (size_t i : order) out.push_back(std::move(clusters[i]));
  return out;
}

ClusterRanker parse_ranker(std::string_view name) {
  if (name == "size") return {RankMethod::kSize, LabelMode::kDateAccuracy};
  if (name == "datementioncount") return {RankMethod::kDateMentionCount, LabelMode::kDateAccuracy};
  if (name == "regression-dates") return {RankMethod::kRegression, LabelMode::kDateAccuracy};
  if (name == "regression-rouge") return {RankMethod::kRegression, LabelMode::kRouge};
  throw std::invalid_argument("unknown cluster ranker '" + std::string(name) + "'");
}

const char* ranker_name(const ClusterRanker& r) {
  switch (r.method) {
    case RankMethod::kSize:
      return "size";
    case RankMethod::kDateMentionCount:
      return "datementioncount";
    case RankMethod::kRegression:
      return r.labels == LabelMode::kRouge ? "regression-rouge" : "regression-dates";
  }
  return "unknown";
}

ClustResult build_clust_timeline(const Task& task, const ClustConfig& config) {
  if (config.l < 1 || config.k < 1) throw std::invalid_argument("clust: l and k must be >= 1");
  ClustResult result;
  auto clusters = detect_events(task, config.mcl);
  result.clusters = rank_clusters(std::move(clusters), config.ranker, task.articles, config.model);
  vecspace::TfidfModel model;
  bool have_model = false;
  try {
    model = datewise::fit_sentence_model(task.articles);
    have_model = true;
  } catch (const std::invalid_argument&) {
  }

  std::vector<TimelineEntry> entries;
  std::vector<Date> used;
  for (const auto& c : result.clusters) {
    if (!have_model || entries.size() >= static_cast<size_t>(config.l)) break;
    if (std::find(used.begin(), used.end(), c.cluster_date) != used.end()) continue;
    SentenceRefs candidates = cluster_candidates(c, task.articles);
    if (candidates.empty()) continue;
    summarize::SummaryRequest req{candidates, config.k, task.queries, &model};
    SentenceRefs summary = summarize::summarize(config.summarizer, req);
    if (summary.empty()) continue;
    TimelineEntry e{c.cluster_date, {}};
    for (const Sentence* s : summary) e.sentences.push_back(s->text);
    entries.push_back(std::move(e));
    used.push_back(c.cluster_date);
  }
  result.timeline = Timeline(std::move(entries));
  if (result.timeline.empty()) result.warning = std::string(kNoSummarizableClusters);
  return result;
}

std::string clusters_to_json(std::span<const ArticleCluster> clusters) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : clusters) {
    nlohmann::ordered_json j;
    j["article_ids"] = c.article_ids;
    j["date"] = c.cluster_date.iso();
    j["features"] = c.features;
    j["score"] = c.score;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace tlsum::cluster
