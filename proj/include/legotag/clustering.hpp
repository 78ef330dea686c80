#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "legotag/error.hpp"
#include "legotag/model.hpp"

namespace legotag {

// Tag-prediction profile of one memory value m: Pr(T_i = t | T_{i-1} = a,
// M_{i-1} = m) flattened over (a, t). Built from raw counts, so contexts that
// were never observed stay zero instead of picking up smoothing mass.
struct MemoryVector {
  int owner = -1;  // memory value (= tag id in a full-memory model)
  std::vector<double> coords;
};

struct ClusterMap {
  int num_clusters = 0;
  std::vector<int> assignment;  // tag id -> cluster id in 0..K-1
};

struct MergeStep {
  int first = -1;   // surviving cluster id (smallest member index)
  int second = -1;
  double distance = 0.0;
};

// One vector per non-Start memory value of a full-memory model.
inline std::vector<MemoryVector> memory_vectors(const LegoModel& model) {
  if (!model.memory.is_identity())
    throw ArgumentError("memory vectors require a full-memory model");
  const int kt = model.num_tags();
  std::vector<MemoryVector> vectors;
  vectors.reserve(static_cast<std::size_t>(kt));
  for (int m = 0; m < kt; ++m) {
    MemoryVector v;
    v.owner = m;
    v.coords.assign(static_cast<std::size_t>(kt) * static_cast<std::size_t>(kt), 0.0);
    for (int a = 0; a < kt; ++a) {
      const std::size_t row = model.transition_row(a, m);
      const auto total = static_cast<double>(model.tag_transition.row_total(row));
      if (total == 0.0) continue;
      for (int t = 0; t < kt; ++t)
        v.coords[static_cast<std::size_t>(a) * static_cast<std::size_t>(kt) +
                 static_cast<std::size_t>(t)] =
            static_cast<double>(model.tag_transition.count(row, static_cast<std::size_t>(t))) /
            total;
    }
    vectors.push_back(std::move(v));
  }
  return vectors;
}

namespace detail {

inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace detail

// Complete-linkage agglomerative clustering: starting from singletons, merge
// the pair of clusters whose farthest members are closest, until K remain.
// During merging a cluster is identified by the smallest input index among
// its members; distance ties break on the smallest such (i, j) pair. Final
// cluster ids are renumbered by smallest member owner, so the result does not
// depend on input order. The merge trace, when requested, carries the
// non-decreasing merge distances.
inline ClusterMap agglomerative_cluster(const std::vector<MemoryVector>& vectors, int K,
                                        std::vector<MergeStep>* merges = nullptr) {
  const int n = static_cast<int>(vectors.size());
  if (K < 1 || K > n) throw ArgumentError("cluster count K must be in 1.." + std::to_string(n));

  std::vector<std::vector<double>> dist(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
              detail::euclidean(vectors[static_cast<std::size_t>(i)].coords,
                                vectors[static_cast<std::size_t>(j)].coords);

  std::vector<bool> active(static_cast<std::size_t>(n), true);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) members[static_cast<std::size_t>(i)] = {i};

  for (int remaining = n; remaining > K; --remaining) {
    double best = std::numeric_limits<double>::infinity();
    int bi = -1, bj = -1;
    for (int i = 0; i < n; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!active[static_cast<std::size_t>(j)]) continue;
        const double d = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (merges) merges->push_back(MergeStep{bi, bj, best});
    // Complete linkage update: d(i∪j, k) = max(d(i,k), d(j,k)).
    for (int k = 0; k < n; ++k) {
      if (!active[static_cast<std::size_t>(k)] || k == bi || k == bj) continue;
      const double d = std::max(dist[static_cast<std::size_t>(bi)][static_cast<std::size_t>(k)],
                                dist[static_cast<std::size_t>(bj)][static_cast<std::size_t>(k)]);
      dist[static_cast<std::size_t>(bi)][static_cast<std::size_t>(k)] = d;
      dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(bi)] = d;
    }
    auto& dst = members[static_cast<std::size_t>(bi)];
    auto& src = members[static_cast<std::size_t>(bj)];
    dst.insert(dst.end(), src.begin(), src.end());
    src.clear();
    active[static_cast<std::size_t>(bj)] = false;
  }

  // Canonical ids: clusters ordered by their smallest member owner.
  std::vector<std::pair<int, int>> order;  // (min owner, cluster index)
  int max_owner = -1;
  for (int i = 0; i < n; ++i) {
    if (!active[static_cast<std::size_t>(i)]) continue;
    int mo = std::numeric_limits<int>::max();
    for (int v : members[static_cast<std::size_t>(i)]) {
      mo = std::min(mo, vectors[static_cast<std::size_t>(v)].owner);
      max_owner = std::max(max_owner, vectors[static_cast<std::size_t>(v)].owner);
    }
    order.emplace_back(mo, i);
  }
  std::sort(order.begin(), order.end());

  ClusterMap map;
  map.num_clusters = K;
  map.assignment.assign(static_cast<std::size_t>(max_owner) + 1, -1);
  for (int c = 0; c < static_cast<int>(order.size()); ++c)
    for (int v : members[static_cast<std::size_t>(order[static_cast<std::size_t>(c)].second)])
      map.assignment[static_cast<std::size_t>(vectors[static_cast<std::size_t>(v)].owner)] = c;
  return map;
}

// tag<TAB>cluster_id, sorted by tag id.
inline void dump_cluster_map(const ClusterMap& map, const TagSet& tagset, std::ostream& out) {
  for (int t = 0; t < tagset.size(); ++t)
    out << tagset.name(t) << '\t' << map.assignment[static_cast<std::size_t>(t)] << '\n';
}

// Trains a full-memory model, clusters its memory values down to K, and
// retrains with the clustered projection and the requested smoothing. With
// K equal to the tag count the projection is a bijection and the result
// decodes exactly like the full model.
inline LegoModel recluster_pipeline(const Corpus& corpus, const VocabularySet& vocabs,
                                    const FeatureConfig& config, int K, double lambda,
                                    int jobs = 1) {
  const TagSet tagset = TagSet::from_corpus(corpus);
  const MemoryDomain full = MemoryDomain::full(tagset);
  // Vector extraction reads unsmoothed relative frequencies, so the full
  // model is trained with lambda = 0.
  const LegoModel full_model = train(corpus, tagset, full, vocabs, config, 0.0, jobs);
  const ClusterMap map = agglomerative_cluster(memory_vectors(full_model), K);
  const MemoryDomain clustered = MemoryDomain::clustered(tagset, map.assignment, K);
  return train(corpus, tagset, clustered, vocabs, config, lambda, jobs);
}

}  // namespace legotag
