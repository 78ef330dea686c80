#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "legotag/model.hpp"
#include "oracle.hpp"

using namespace legotag;

namespace {

FeatureConfig tiny_config() {
  FeatureConfig cfg;
  cfg.word_min_count = 1;
  cfg.affix_min_count = 1;
  return cfg;
}

LegoModel train_slash(const std::string& text, double lambda, int jobs = 1) {
  const Corpus c = oracle::corpus_from_slash(text);
  const TagSet tagset = TagSet::from_corpus(c);
  const FeatureConfig cfg = tiny_config();
  return train(c, tagset, MemoryDomain::full(tagset), build_vocabularies(c, cfg), cfg, lambda,
               jobs);
}

}  // namespace

TEST_CASE("one-sentence corpus trains to the hand-counted tables") {
  const LegoModel m = train_slash("a/DT b/NN\n", 0.0);
  const int dt = m.tagset.id("DT");
  const int nn = m.tagset.id("NN");
  REQUIRE(dt == 0);
  REQUIRE(nn == 1);
  CHECK(m.initial_tag.p(0, static_cast<std::size_t>(dt)) == 1.0);
  CHECK(m.initial_tag.p(0, static_cast<std::size_t>(nn)) == 0.0);

  const std::size_t row = m.transition_row(dt, m.memory.start_id());
  CHECK(m.tag_transition.p(row, static_cast<std::size_t>(nn)) == 1.0);
  // M2 = projection(T1) = DT's memory value
  CHECK(m.memory_transition.p(row, static_cast<std::size_t>(m.memory.projection[0])) == 1.0);
}

TEST_CASE("every row of every table is a distribution for lambda in {0, 0.1, 1}") {
  const std::string text =
      "The/DT dog/NN runs/VBZ ./.\n"
      "A/DT cat/NN sleeps/VBZ ./.\n"
      "Dogs/NNS run/VBP ./.\n";
  for (const double lambda : {0.0, 0.1, 1.0}) {
    const LegoModel m = train_slash(text, lambda);
    for (const Cpt* t : m.tables())
      for (std::size_t r = 0; r < t->rows(); ++r)
        CHECK(t->prob_row_sum(r) == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("unsmoothed transitions equal independent trigram frequencies") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> n_tok(1, 12), pick(0, 3);
  const char* toks[] = {"a/DT", "b/NN", "c/VB", "d/NN"};
  std::string text;
  for (int s = 0; s < 60; ++s) {
    const int n = n_tok(rng);
    for (int i = 0; i < n; ++i) text += std::string(toks[pick(rng)]) + " ";
    text += "\n";
  }
  const Corpus c = oracle::corpus_from_slash(text);
  REQUIRE(c.num_tokens() <= 1000);
  const TagSet tagset = TagSet::from_corpus(c);
  const FeatureConfig cfg = tiny_config();
  const LegoModel m =
      train(c, tagset, MemoryDomain::full(tagset), build_vocabularies(c, cfg), cfg, 0.0);

  const auto tc = oracle::TrigramCounter::fit(c, tagset);
  REQUIRE(!tc.contexts.empty());
  for (const auto& [ctx, counts] : tc.contexts) {
    const int mem = ctx.first < 0 ? m.memory.start_id() : ctx.first;
    const std::size_t row = m.transition_row(ctx.second, mem);
    std::uint64_t total = 0;
    for (auto v : counts) total += v;
    for (int t = 0; t < tagset.size(); ++t) {
      const double expected = static_cast<double>(counts[static_cast<std::size_t>(t)]) /
                              static_cast<double>(total);
      CHECK(m.tag_transition.p(row, static_cast<std::size_t>(t)) == expected);
    }
  }
}

TEST_CASE("unobserved rows become uniform") {
  const LegoModel m0 = train_slash("a/DT b/NN\n", 0.0);
  // context (NN, <start>) never occurs
  const std::size_t row = m0.transition_row(m0.tagset.id("NN"), m0.memory.start_id());
  CHECK(m0.tag_transition.p(row, 0) == 0.5);
  CHECK(m0.tag_transition.p(row, 1) == 0.5);

  const LegoModel m1 = train_slash("a/DT b/NN\n", 0.5);
  CHECK(m1.tag_transition.p(row, 0) == 0.5);
}

TEST_CASE("memory transition is deterministic under the identity projection") {
  const LegoModel m = train_slash(
      "a/DT b/NN c/VB\n"
      "b/NN c/VB a/DT\n"
      "c/VB a/DT b/NN\n",
      0.0);
  for (int prev = 0; prev < m.num_tags(); ++prev) {
    for (int mem = 0; mem < m.num_memory(); ++mem) {
      const std::size_t row = m.transition_row(prev, mem);
      if (m.memory_transition.row_total(row) == 0) continue;  // unobserved context
      for (int child = 0; child < m.num_memory(); ++child)
        CHECK(m.memory_transition.p(row, static_cast<std::size_t>(child)) ==
              (child == prev ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("training is sentence-order invariant and shards merge additively") {
  const std::string a = "The/DT dog/NN runs/VBZ ./.\n";
  const std::string b = "A/DT cat/NN sleeps/VBZ ./.\n";
  const std::string c = "Dogs/NNS run/VBP ./.\n";
  const LegoModel m1 = train_slash(a + b + c, 0.1);
  const LegoModel m2 = train_slash(c + a + b, 0.1);
  const LegoModel m4 = train_slash(a + b + c, 0.1, 4);

  const auto t1 = m1.tables();
  const auto t2 = m2.tables();
  const auto t4 = m4.tables();
  for (std::size_t i = 0; i < t1.size(); ++i) {
    CHECK(t1[i]->counts() == t2[i]->counts());
    CHECK(t1[i]->counts() == t4[i]->counts());
  }
}

TEST_CASE("training errors") {
  const Corpus c = oracle::corpus_from_slash("a/DT\n");
  const TagSet wrong = TagSet::from_tags({"NN"});
  const FeatureConfig cfg = tiny_config();
  const VocabularySet vs = build_vocabularies(c, cfg);
  CHECK_THROWS_MATCHES(
      train(c, wrong, MemoryDomain::full(wrong), vs, cfg, 0.1), TrainError,
      Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("DT")));

  const TagSet right = TagSet::from_corpus(c);
  CHECK_THROWS_AS(train(Corpus{}, right, MemoryDomain::full(right), vs, cfg, 0.1),
                  ArgumentError);
  CHECK_THROWS_AS(train(c, right, MemoryDomain::full(right), vs, cfg, -1.0), ArgumentError);
}

TEST_CASE("feature likelihood is the product of six factors") {
  LegoModel m;
  m.tagset = TagSet::from_tags({"A", "B"});
  m.memory = MemoryDomain::full(m.tagset);
  m.vocabs.word = Vocabulary::from_entries({"w"});
  m.vocabs.prefix = Vocabulary::from_entries({"p"});
  m.vocabs.suffix = Vocabulary::from_entries({"s"});
  // hand-set rows for tag A: word .5, prefix .25, suffix .8, cap .9/.1,
  // hyphen 1/eps, number .1/.9
  m.word_cpt = Cpt::from_probs(2, 3, {0.3, 0.2, 0.5, 1. / 3, 1. / 3, 1. / 3});
  m.prefix_cpt = Cpt::from_probs(2, 3, {0.5, 0.25, 0.25, 1. / 3, 1. / 3, 1. / 3});
  m.suffix_cpt = Cpt::from_probs(2, 3, {0.1, 0.1, 0.8, 1. / 3, 1. / 3, 1. / 3});
  m.cap_cpt = Cpt::from_probs(2, 2, {0.9, 0.1, 0.5, 0.5});
  m.hyphen_cpt = Cpt::from_probs(2, 2, {1.0, 0.0, 0.5, 0.5});
  m.number_cpt = Cpt::from_probs(2, 2, {0.1, 0.9, 0.5, 0.5});

  FeatureVector f;
  f.word = 2;    // first entry -> p = .5
  f.prefix = 1;  // UNK column -> .25
  f.suffix = 2;  // -> .8
  f.cap = false;   // .9
  f.hyphen = false;  // 1.0
  f.number = true;   // .9
  const double expected = 0.8 * 0.25 * 0.5 * 0.9 * 1.0 * 0.9;
  CHECK(feature_likelihood(m, f, 0) == Catch::Approx(expected).epsilon(1e-12));
  CHECK(std::exp(feature_log_likelihood(m, f, 0)) ==
        Catch::Approx(expected).epsilon(1e-9));

  // a zero factor annihilates the product
  f.hyphen = true;
  CHECK(feature_likelihood(m, f, 0) == 0.0);
  CHECK(feature_log_likelihood(m, f, 0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("OOV tokens train the UNK columns") {
  // 'zq' is out of the one-word lexicon, so its occurrences land on UNK
  const Corpus c = oracle::corpus_from_slash("aa/DT zq/NN\naa/DT zq/NN\n");
  const TagSet tagset = TagSet::from_corpus(c);
  FeatureConfig cfg = tiny_config();
  cfg.word_min_count = 2;
  VocabularySet vs;
  vs.word = Vocabulary::from_entries({"aa"});
  const LegoModel m = train(c, tagset, MemoryDomain::full(tagset), vs, cfg, 0.0);
  const auto nn = static_cast<std::size_t>(m.tagset.id("NN"));
  CHECK(m.word_cpt.p(nn, Vocabulary::kUnk) == 1.0);
  CHECK(m.word_cpt.count(nn, Vocabulary::kUnk) == 2);
}
