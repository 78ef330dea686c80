#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "legotag/clustering.hpp"
#include "legotag/inference.hpp"
#include "oracle.hpp"

using namespace legotag;

namespace {

std::vector<MemoryVector> points_1d(const std::vector<double>& xs) {
  std::vector<MemoryVector> vs;
  for (std::size_t i = 0; i < xs.size(); ++i)
    vs.push_back(MemoryVector{static_cast<int>(i), {xs[i]}});
  return vs;
}

}  // namespace

TEST_CASE("complete linkage reproduces the hand-derived 1-D partition") {
  // points 0,1,9,10: merge(0,1) at d=1, merge(9,10) at d=1, stop at K=2;
  // the cross-cluster complete-linkage distance is 10
  std::vector<MergeStep> trace;
  const ClusterMap map = agglomerative_cluster(points_1d({0, 1, 9, 10}), 2, &trace);
  CHECK(map.assignment == std::vector<int>{0, 0, 1, 1});
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].distance == 1.0);
  CHECK(trace[1].distance == 1.0);

  std::vector<MergeStep> full;
  agglomerative_cluster(points_1d({0, 1, 9, 10}), 1, &full);
  REQUIRE(full.size() == 3);
  CHECK(full[2].distance == 10.0);
}

TEST_CASE("K equal to the point count is the identity clustering") {
  const ClusterMap map = agglomerative_cluster(points_1d({5, 3, 8}), 3);
  CHECK(map.assignment == std::vector<int>{0, 1, 2});
}

TEST_CASE("identical vectors merge first") {
  std::vector<MergeStep> trace;
  const ClusterMap map = agglomerative_cluster(points_1d({4, 0, 4, 9}), 3, &trace);
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].distance == 0.0);
  CHECK(map.assignment[0] == map.assignment[2]);
  CHECK(map.assignment[0] != map.assignment[1]);
}

TEST_CASE("K out of range is rejected") {
  CHECK_THROWS_AS(agglomerative_cluster(points_1d({1, 2}), 0), ArgumentError);
  CHECK_THROWS_AS(agglomerative_cluster(points_1d({1, 2}), 3), ArgumentError);
}

TEST_CASE("merge distances are monotone non-decreasing") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_int_distribution<int> n_pts(3, 24), dims(1, 6);
  for (int iter = 0; iter < 40; ++iter) {
    const int n = n_pts(rng);
    const int d = dims(rng);
    std::vector<MemoryVector> vs;
    for (int i = 0; i < n; ++i) {
      MemoryVector v;
      v.owner = i;
      for (int k = 0; k < d; ++k) v.coords.push_back(coord(rng));
      vs.push_back(std::move(v));
    }
    std::vector<MergeStep> trace;
    agglomerative_cluster(vs, 1, &trace);
    REQUIRE(trace.size() == static_cast<std::size_t>(n - 1));
    for (std::size_t i = 1; i < trace.size(); ++i)
      CHECK(trace[i].distance >= trace[i - 1].distance);
  }
}

TEST_CASE("clustering is a partition, stable under input permutation") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  for (int iter = 0; iter < 25; ++iter) {
    const int n = 9;
    std::vector<MemoryVector> vs;
    for (int i = 0; i < n; ++i)
      vs.push_back(MemoryVector{i, {coord(rng), coord(rng)}});
    const int K = 1 + static_cast<int>(rng() % 8);
    const ClusterMap a = agglomerative_cluster(vs, K);

    // every owner assigned, exactly K non-empty clusters
    std::vector<int> sizes(static_cast<std::size_t>(K), 0);
    for (int owner = 0; owner < n; ++owner) {
      REQUIRE(a.assignment[static_cast<std::size_t>(owner)] >= 0);
      REQUIRE(a.assignment[static_cast<std::size_t>(owner)] < K);
      ++sizes[static_cast<std::size_t>(a.assignment[static_cast<std::size_t>(owner)])];
    }
    for (int k = 0; k < K; ++k) CHECK(sizes[static_cast<std::size_t>(k)] > 0);

    std::vector<MemoryVector> shuffled = vs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const ClusterMap b = agglomerative_cluster(shuffled, K);
    CHECK(a.assignment == b.assignment);
  }
}

TEST_CASE("memory vectors read the transition rows of a full model") {
  // two tags; counts hand-set so the relative frequencies are known
  const Corpus c = oracle::corpus_from_slash(
      "x/A y/B x/A x/A\n"
      "y/B y/B x/A\n");
  const TagSet tagset = TagSet::from_corpus(c);
  FeatureConfig cfg;
  cfg.word_min_count = 1;
  cfg.affix_min_count = 1;
  const LegoModel m =
      train(c, tagset, MemoryDomain::full(tagset), build_vocabularies(c, cfg), cfg, 0.0);

  const auto vectors = memory_vectors(m);
  REQUIRE(vectors.size() == 2);
  for (const auto& v : vectors) {
    REQUIRE(v.coords.size() == 4);  // K_T^2
    for (int a = 0; a < 2; ++a) {
      const std::size_t row = m.transition_row(a, v.owner);
      const double total = static_cast<double>(m.tag_transition.row_total(row));
      for (int t = 0; t < 2; ++t) {
        const double want =
            total == 0.0 ? 0.0
                         : static_cast<double>(m.tag_transition.count(
                               row, static_cast<std::size_t>(t))) / total;
        CHECK(v.coords[static_cast<std::size_t>(a) * 2 + static_cast<std::size_t>(t)] == want);
      }
    }
  }

  // identical transition behavior gives identical vectors
  const Corpus c2 = oracle::corpus_from_slash("p/A q/B\nq/B p/A\n");
  const TagSet ts2 = TagSet::from_corpus(c2);
  const LegoModel m2 =
      train(c2, ts2, MemoryDomain::full(ts2), build_vocabularies(c2, cfg), cfg, 0.0);
  const auto v2 = memory_vectors(m2);
  // neither tag was ever a memory value two steps back: both vectors zero
  CHECK(v2[0].coords == v2[1].coords);
}

TEST_CASE("memory_vectors rejects clustered models") {
  const Corpus c = oracle::corpus_from_slash("a/A b/B c/C\nb/B c/C a/A\n");
  FeatureConfig cfg;
  cfg.word_min_count = 1;
  cfg.affix_min_count = 1;
  const LegoModel m = recluster_pipeline(c, build_vocabularies(c, cfg), cfg, 2, 0.1);
  CHECK_THROWS_AS(memory_vectors(m), ArgumentError);
}

TEST_CASE("reclustering with K = K_T decodes identically to the full model") {
  const Corpus c = oracle::corpus_from_slash(
      "The/DT dog/NN runs/VBZ ./.\n"
      "A/DT cat/NN sleeps/VBZ ./.\n"
      "The/DT cat/NN saw/VBD a/DT dog/NN ./.\n"
      "Dogs/NNS run/VBP ./.\n");
  const TagSet tagset = TagSet::from_corpus(c);
  FeatureConfig cfg;
  cfg.word_min_count = 1;
  cfg.affix_min_count = 1;
  const VocabularySet vs = build_vocabularies(c, cfg);
  const LegoModel full = train(c, tagset, MemoryDomain::full(tagset), vs, cfg, 0.1);
  const LegoModel re = recluster_pipeline(c, vs, cfg, tagset.size(), 0.1);

  REQUIRE(re.memory.size() == full.memory.size());
  CHECK(re.memory.projection == full.memory.projection);
  for (const Sentence& sent : c.sentences) {
    const auto feats = full.extract_sentence(sent);
    const ViterbiResult a = viterbi(full, feats);
    const ViterbiResult b = viterbi(re, feats);
    CHECK(a.tags == b.tags);
    CHECK(a.log_prob == b.log_prob);
  }
}

TEST_CASE("reclustering to K shrinks the memory domain to K+1") {
  const Corpus c = oracle::corpus_from_slash(
      "a/A b/B c/C d/D e/E\n"
      "b/B c/C d/D e/E a/A\n"
      "c/C d/D e/E a/A b/B\n");
  FeatureConfig cfg;
  cfg.word_min_count = 1;
  cfg.affix_min_count = 1;
  const LegoModel m = recluster_pipeline(c, build_vocabularies(c, cfg), cfg, 2, 0.1);
  CHECK(m.memory.num_clusters == 2);
  CHECK(m.memory.size() == 3);
  CHECK(m.tag_transition.rows() == static_cast<std::size_t>(5 * 3));
  CHECK(m.memory_transition.cols() == 3);
}
