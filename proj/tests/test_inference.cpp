#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <random>

#include "legotag/inference.hpp"
#include "oracle.hpp"

using namespace legotag;

TEST_CASE("single token reduces to argmax of initial times emission") {
  std::mt19937 rng(1);
  const LegoModel m = oracle::random_model(rng, 3, 2, 4, 3, 3);
  const auto feats = oracle::random_features(rng, m, 1);

  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < m.num_tags(); ++t) {
    const double sc = m.initial_tag.lp(0, static_cast<std::size_t>(t)) +
                      feature_log_likelihood(m, feats[0], t);
    if (sc > best_score) {
      best_score = sc;
      best = t;
    }
  }
  const ViterbiResult r = viterbi(m, feats);
  CHECK(r.tags == std::vector<int>{best});
  CHECK(r.log_prob == Catch::Approx(best_score));

  const Posterior p = forward_backward(m, feats);
  double z = 0.0;
  for (int t = 0; t < m.num_tags(); ++t)
    z += m.initial_tag.p(0, static_cast<std::size_t>(t)) * feature_likelihood(m, feats[0], t);
  for (int t = 0; t < m.num_tags(); ++t)
    CHECK(p.tag_marginals[0][static_cast<std::size_t>(t)] ==
          Catch::Approx(m.initial_tag.p(0, static_cast<std::size_t>(t)) *
                        feature_likelihood(m, feats[0], t) / z)
              .margin(1e-12));
}

TEST_CASE("viterbi and forward-backward match exhaustive enumeration") {
  std::mt19937 rng(20250801);
  std::uniform_int_distribution<int> kt_d(1, 4), mem_d(1, 2), len_d(1, 6), vocab_d(2, 5);
  for (int iter = 0; iter < 60; ++iter) {
    const LegoModel m =
        oracle::random_model(rng, kt_d(rng), mem_d(rng), vocab_d(rng), vocab_d(rng), vocab_d(rng));
    const auto feats = oracle::random_features(rng, m, static_cast<std::size_t>(len_d(rng)));
    const oracle::BruteForce bf = oracle::enumerate_paths(m, feats);

    const ViterbiResult vr = viterbi(m, feats);
    CHECK(vr.tags == bf.best_tags);
    CHECK(vr.log_prob == Catch::Approx(bf.best_score).margin(1e-9));

    const Posterior post = forward_backward(m, feats);
    for (std::size_t i = 0; i < feats.size(); ++i)
      for (int t = 0; t < m.num_tags(); ++t)
        CHECK(post.tag_marginals[i][static_cast<std::size_t>(t)] ==
              Catch::Approx(bf.marginals[i][static_cast<std::size_t>(t)]).margin(1e-9));
    CHECK(post.log_likelihood == Catch::Approx(bf.log_total).margin(1e-9));
  }
}

TEST_CASE("posteriors are normalized at every position") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 20; ++iter) {
    const LegoModel m = oracle::random_model(rng, 4, 2, 5, 4, 4);
    const auto feats = oracle::random_features(rng, m, 8);
    const Posterior post = forward_backward(m, feats);
    for (const auto& row : post.tag_marginals) {
      double s = 0.0;
      for (double v : row) s += v;
      CHECK(s == Catch::Approx(1.0).margin(1e-6));
    }
  }
}

TEST_CASE("exact ties resolve to the lexicographically smallest tag sequence") {
  // fully uniform model: every path has an identical score, so the winner
  // must be all-zeros
  std::mt19937 rng(5);
  LegoModel m = oracle::random_model(rng, 3, 2, 3, 3, 3);
  auto uniform = [](std::size_t rows, std::size_t cols) {
    return Cpt::from_probs(rows, cols,
                           std::vector<double>(rows * cols, 1.0 / static_cast<double>(cols)));
  };
  const auto kt = static_cast<std::size_t>(m.num_tags());
  const auto km = static_cast<std::size_t>(m.num_memory());
  m.initial_tag = uniform(1, kt);
  m.word_cpt = uniform(kt, static_cast<std::size_t>(m.vocabs.word.size()));
  m.prefix_cpt = uniform(kt, static_cast<std::size_t>(m.vocabs.prefix.size()));
  m.suffix_cpt = uniform(kt, static_cast<std::size_t>(m.vocabs.suffix.size()));
  m.cap_cpt = uniform(kt, 2);
  m.hyphen_cpt = uniform(kt, 2);
  m.number_cpt = uniform(kt, 2);
  m.tag_transition = uniform(kt * km, kt);
  m.memory_transition = uniform(kt * km, km);

  const auto feats = oracle::random_features(rng, m, 5);
  const ViterbiResult r = viterbi(m, feats);
  CHECK(r.tags == std::vector<int>(5, 0));

  // posterior ties also fall to the smallest tag id
  const Posterior p = forward_backward(m, feats);
  CHECK(posterior_decode(p) == std::vector<int>(5, 0));
}

TEST_CASE("partial ties keep the lexicographic rule over later positions") {
  // Two tags; both paths from either initial tag cost the same except the
  // first transition prefers staying, so ties appear only among suffixes.
  std::mt19937 rng(6);
  LegoModel m = oracle::random_model(rng, 2, 1, 2, 2, 2);
  const auto km = static_cast<std::size_t>(m.num_memory());
  // initial strongly prefers tag 1; transitions and emissions are uniform
  m.initial_tag = Cpt::from_probs(1, 2, {0.125, 0.875});
  auto uniform = [](std::size_t rows, std::size_t cols) {
    return Cpt::from_probs(rows, cols,
                           std::vector<double>(rows * cols, 1.0 / static_cast<double>(cols)));
  };
  m.word_cpt = uniform(2, static_cast<std::size_t>(m.vocabs.word.size()));
  m.prefix_cpt = uniform(2, static_cast<std::size_t>(m.vocabs.prefix.size()));
  m.suffix_cpt = uniform(2, static_cast<std::size_t>(m.vocabs.suffix.size()));
  m.cap_cpt = uniform(2, 2);
  m.hyphen_cpt = uniform(2, 2);
  m.number_cpt = uniform(2, 2);
  m.tag_transition = uniform(2 * km, 2);
  m.memory_transition = uniform(2 * km, km);

  const auto feats = oracle::random_features(rng, m, 4);
  const ViterbiResult r = viterbi(m, feats);
  CHECK(r.tags == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("posterior_decode argmax and tie rules") {
  Posterior p;
  p.tag_marginals = {{0.2, 0.5, 0.3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.0, 0.0, 1.0}};
  CHECK(posterior_decode(p) == std::vector<int>{1, 0, 2});
}

TEST_CASE("sequence_log_prob matches hand arithmetic and bounds viterbi") {
  const Corpus c = oracle::corpus_from_slash("a/DT b/NN\n");
  const TagSet tagset = TagSet::from_corpus(c);
  FeatureConfig cfg;
  cfg.word_min_count = 1;
  cfg.affix_min_count = 1;
  const LegoModel m =
      train(c, tagset, MemoryDomain::full(tagset), build_vocabularies(c, cfg), cfg, 0.0);
  const auto feats = m.extract_sentence(c.sentences[0]);

  // every trained factor on the gold path is 1, so the joint is certain
  const double lp = sequence_log_prob(m, {0, 1}, feats);
  CHECK(lp == 0.0);

  // a zero-probability factor drives the score to -inf
  CHECK(sequence_log_prob(m, {1, 0}, feats) == -std::numeric_limits<double>::infinity());

  CHECK_THROWS_AS(sequence_log_prob(m, {0}, feats), ArgumentError);
  CHECK_THROWS_AS(sequence_log_prob(m, {}, {}), ArgumentError);
}

TEST_CASE("viterbi dominates the score of any projected-memory sequence") {
  std::mt19937 rng(123);
  std::uniform_int_distribution<int> len_d(1, 7);
  for (int iter = 0; iter < 10; ++iter) {
    const LegoModel m = oracle::random_model(rng, 4, 2, 4, 3, 3);
    const auto feats = oracle::random_features(rng, m, static_cast<std::size_t>(len_d(rng)));
    const ViterbiResult vr = viterbi(m, feats);
    std::uniform_int_distribution<int> tag_d(0, m.num_tags() - 1);
    for (int k = 0; k < 100; ++k) {
      std::vector<int> tags(feats.size());
      for (auto& t : tags) t = tag_d(rng);
      CHECK(sequence_log_prob(m, tags, feats) <= vr.log_prob + 1e-9);
    }
    // the viterbi path itself scores at most its own joint log-probability
    // when memory is forced through the projection
    CHECK(sequence_log_prob(m, vr.tags, feats) <= vr.log_prob + 1e-9);
  }
}

TEST_CASE("decode errors carry the failing position") {
  // lambda = 0 and an unseen word: every tag has a zero emission column
  const Corpus c = oracle::corpus_from_slash("aa/DT bb/NN\n");
  const TagSet tagset = TagSet::from_corpus(c);
  FeatureConfig cfg;
  cfg.word_min_count = 1;
  cfg.affix_min_count = 10;
  const LegoModel m =
      train(c, tagset, MemoryDomain::full(tagset), build_vocabularies(c, cfg), cfg, 0.0);

  FeatureVector unseen;
  unseen.word = Vocabulary::kUnk;
  unseen.prefix = Vocabulary::kUnk;
  unseen.suffix = Vocabulary::kUnk;
  unseen.cap = true;  // never observed
  unseen.hyphen = false;
  unseen.number = false;
  const auto good = m.extract_sentence(c.sentences[0]);

  try {
    viterbi(m, {good[0], unseen});
    FAIL("expected DecodeError");
  } catch (const DecodeError& e) {
    CHECK(e.position == 2);
  }
  try {
    forward_backward(m, {unseen});
    FAIL("expected DecodeError");
  } catch (const DecodeError& e) {
    CHECK(e.position == 1);
  }

  CHECK_THROWS_AS(viterbi(m, {}), ArgumentError);
  CHECK_THROWS_AS(forward_backward(m, {}), ArgumentError);
}

TEST_CASE("a 23-token sentence with K_T=45 K_M=6 decodes within budget") {
  std::mt19937 rng(2024);
  const LegoModel m = oracle::random_model(rng, 45, 5, 50, 20, 20);
  const auto feats = oracle::random_features(rng, m, 23);

  const auto t0 = std::chrono::steady_clock::now();
  const ViterbiResult r = viterbi(m, feats);
  const auto t1 = std::chrono::steady_clock::now();
  REQUIRE(r.tags.size() == 23);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  CHECK(ms < 50);
}
