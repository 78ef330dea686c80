#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "legotag/corpus.hpp"
#include "legotag/cpt.hpp"
#include "legotag/error.hpp"
#include "legotag/features.hpp"
#include "legotag/vocab.hpp"

namespace legotag {

class TagSet {
 public:
  TagSet() = default;

  // Tags are sorted and deduplicated, so ids are a stable bijection onto
  // 0..K-1 for a given tag inventory.
  static TagSet from_tags(std::vector<std::string> tags) {
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    TagSet t;
    t.tags_ = std::move(tags);
    for (std::size_t i = 0; i < t.tags_.size(); ++i)
      t.index_.emplace(t.tags_[i], static_cast<int>(i));
    return t;
  }

  static TagSet from_corpus(const Corpus& corpus) {
    return from_tags(corpus.tagset);
  }

  int id(std::string_view tag) const {
    auto it = index_.find(tag);
    return it == index_.end() ? -1 : it->second;
  }

  const std::string& name(int id) const { return tags_.at(static_cast<std::size_t>(id)); }
  int size() const { return static_cast<int>(tags_.size()); }
  const std::vector<std::string>& tags() const { return tags_; }

 private:
  std::vector<std::string> tags_;
  StringMap<int> index_;
};

// Domain of the memory variable: cluster values 0..K-1 plus the distinguished
// Start value, which always takes the last id and is never the image of a
// tag. The projection says which memory value the previous tag feeds forward.
struct MemoryDomain {
  int num_clusters = 0;
  std::vector<int> projection;      // tag id -> memory value in [0, num_clusters)
  std::vector<std::string> labels;  // num_clusters + 1 entries, last is Start

  int size() const { return num_clusters + 1; }  // K_M
  int start_id() const { return num_clusters; }

  bool is_identity() const {
    for (std::size_t t = 0; t < projection.size(); ++t)
      if (projection[t] != static_cast<int>(t)) return false;
    return num_clusters == static_cast<int>(projection.size());
  }

  // Full memory: one value per tag (the projection is the identity).
  static MemoryDomain full(const TagSet& tagset) {
    MemoryDomain m;
    m.num_clusters = tagset.size();
    m.projection.resize(static_cast<std::size_t>(tagset.size()));
    for (int t = 0; t < tagset.size(); ++t) {
      m.projection[static_cast<std::size_t>(t)] = t;
      m.labels.push_back(tagset.name(t));
    }
    m.labels.push_back("<start>");
    return m;
  }

  // Clustered memory from a tag -> cluster assignment over 0..K-1.
  static MemoryDomain clustered(const TagSet& tagset, const std::vector<int>& assignment,
                                int num_clusters) {
    if (static_cast<int>(assignment.size()) != tagset.size())
      throw ArgumentError("cluster assignment does not cover the tag set");
    MemoryDomain m;
    m.num_clusters = num_clusters;
    m.projection = assignment;
    for (int k = 0; k < num_clusters; ++k) m.labels.push_back("M" + std::to_string(k));
    m.labels.push_back("<start>");
    for (int v : m.projection)
      if (v < 0 || v >= num_clusters) throw ArgumentError("cluster id out of range");
    return m;
  }
};

// All conditional probability tables of the tagging network, the domains they
// are indexed by, and the configuration needed to reproduce feature
// extraction at decode time.
struct LegoModel {
  TagSet tagset;
  MemoryDomain memory;
  VocabularySet vocabs;
  FeatureConfig config;
  double lambda = 0.1;

  Cpt initial_tag;         // 1 x K_T
  Cpt word_cpt;            // K_T x |word ids|
  Cpt prefix_cpt;          // K_T x |prefix ids|
  Cpt suffix_cpt;          // K_T x |suffix ids|
  Cpt cap_cpt;             // K_T x 2
  Cpt hyphen_cpt;          // K_T x 2
  Cpt number_cpt;          // K_T x 2
  Cpt tag_transition;      // (K_T * K_M) x K_T, row = prev_tag * K_M + prev_mem
  Cpt memory_transition;   // (K_T * K_M) x K_M

  int num_tags() const { return tagset.size(); }
  int num_memory() const { return memory.size(); }

  std::size_t transition_row(int prev_tag, int prev_mem) const {
    return static_cast<std::size_t>(prev_tag) * static_cast<std::size_t>(memory.size()) +
           static_cast<std::size_t>(prev_mem);
  }

  void init_tables() {
    const auto kt = static_cast<std::size_t>(tagset.size());
    const auto km = static_cast<std::size_t>(memory.size());
    initial_tag.init(1, kt);
    word_cpt.init(kt, static_cast<std::size_t>(vocabs.word.size()));
    prefix_cpt.init(kt, static_cast<std::size_t>(vocabs.prefix.size()));
    suffix_cpt.init(kt, static_cast<std::size_t>(vocabs.suffix.size()));
    cap_cpt.init(kt, 2);
    hyphen_cpt.init(kt, 2);
    number_cpt.init(kt, 2);
    tag_transition.init(kt * km, kt);
    memory_transition.init(kt * km, km);
  }

  void finalize_tables() {
    for (Cpt* t : tables()) t->finalize(lambda);
  }

  std::vector<Cpt*> tables() {
    return {&initial_tag, &word_cpt, &prefix_cpt, &suffix_cpt, &cap_cpt,
            &hyphen_cpt, &number_cpt, &tag_transition, &memory_transition};
  }
  std::vector<const Cpt*> tables() const {
    return {&initial_tag, &word_cpt, &prefix_cpt, &suffix_cpt, &cap_cpt,
            &hyphen_cpt, &number_cpt, &tag_transition, &memory_transition};
  }

  std::vector<FeatureVector> extract_sentence(const Sentence& sent) const {
    std::vector<FeatureVector> out;
    out.reserve(sent.size());
    for (const Token& tok : sent.tokens)
      out.push_back(extract_features(tok.surface, vocabs, config));
    return out;
  }
};

// Pr(F|T) as the product of the six per-feature conditionals. A NONE-valued
// feature reads the learned NONE column; it is not skipped.
inline double feature_log_likelihood(const LegoModel& m, const FeatureVector& f, int t) {
  const auto row = static_cast<std::size_t>(t);
  return m.suffix_cpt.lp(row, static_cast<std::size_t>(f.suffix)) +
         m.prefix_cpt.lp(row, static_cast<std::size_t>(f.prefix)) +
         m.word_cpt.lp(row, static_cast<std::size_t>(f.word)) +
         m.cap_cpt.lp(row, f.cap ? 1 : 0) +
         m.hyphen_cpt.lp(row, f.hyphen ? 1 : 0) +
         m.number_cpt.lp(row, f.number ? 1 : 0);
}

inline double feature_likelihood(const LegoModel& m, const FeatureVector& f, int t) {
  const auto row = static_cast<std::size_t>(t);
  return m.suffix_cpt.p(row, static_cast<std::size_t>(f.suffix)) *
         m.prefix_cpt.p(row, static_cast<std::size_t>(f.prefix)) *
         m.word_cpt.p(row, static_cast<std::size_t>(f.word)) *
         m.cap_cpt.p(row, f.cap ? 1 : 0) *
         m.hyphen_cpt.p(row, f.hyphen ? 1 : 0) *
         m.number_cpt.p(row, f.number ? 1 : 0);
}

namespace detail {

inline void count_sentence(LegoModel& m, const Sentence& sent) {
  int prev_tag = -1;
  int prev_mem = -1;
  for (std::size_t i = 0; i < sent.size(); ++i) {
    const Token& tok = sent.tokens[i];
    if (!tok.has_tag()) throw TrainError("untagged token '" + tok.surface + "'");
    const int t = m.tagset.id(tok.gold_tag);
    if (t < 0) throw TrainError("unknown tag '" + tok.gold_tag + "'");
    const FeatureVector f = extract_features(tok.surface, m.vocabs, m.config);
    const auto row = static_cast<std::size_t>(t);
    m.word_cpt.add(row, static_cast<std::size_t>(f.word));
    m.prefix_cpt.add(row, static_cast<std::size_t>(f.prefix));
    m.suffix_cpt.add(row, static_cast<std::size_t>(f.suffix));
    m.cap_cpt.add(row, f.cap ? 1 : 0);
    m.hyphen_cpt.add(row, f.hyphen ? 1 : 0);
    m.number_cpt.add(row, f.number ? 1 : 0);
    // Supervised memory chain: Start at position 1, then the projection of
    // the previous tag.
    const int mem = i == 0 ? m.memory.start_id()
                          : m.memory.projection[static_cast<std::size_t>(prev_tag)];
    if (i == 0) {
      m.initial_tag.add(0, row);
    } else {
      const std::size_t trow = m.transition_row(prev_tag, prev_mem);
      m.tag_transition.add(trow, row);
      m.memory_transition.add(trow, static_cast<std::size_t>(mem));
    }
    prev_tag = t;
    prev_mem = mem;
  }
}

}  // namespace detail

// Count co-occurrences over the supervised (tag, memory) chain, then smooth
// every table with add-lambda. Counting is associative, so shards merge into
// the same totals regardless of jobs.
inline LegoModel train(const Corpus& corpus, const TagSet& tagset, const MemoryDomain& memory,
                       const VocabularySet& vocabs, const FeatureConfig& config, double lambda,
                       int jobs = 1) {
  if (corpus.empty()) throw ArgumentError("empty corpus");
  if (lambda < 0.0) throw ArgumentError("lambda must be nonnegative");
  if (static_cast<int>(memory.projection.size()) != tagset.size())
    throw ArgumentError("memory projection does not cover the tag set");

  LegoModel model;
  model.tagset = tagset;
  model.memory = memory;
  model.vocabs = vocabs;
  model.config = config;
  model.lambda = lambda;
  model.init_tables();

  const std::size_t n = corpus.sentences.size();
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    for (const Sentence& sent : corpus.sentences) detail::count_sentence(model, sent);
  } else {
    std::vector<LegoModel> shards(static_cast<std::size_t>(workers));
    for (auto& s : shards) {
      s.tagset = tagset;
      s.memory = memory;
      s.vocabs = vocabs;
      s.config = config;
      s.init_tables();
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t i = static_cast<std::size_t>(w); i < n;
               i += static_cast<std::size_t>(workers))
            detail::count_sentence(shards[static_cast<std::size_t>(w)], corpus.sentences[i]);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    auto dst = model.tables();
    for (const auto& shard : shards) {
      auto src = shard.tables();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i]->merge(*src[i]);
    }
  }
  model.finalize_tables();
  return model;
}

// Named table access for inspection tools.
inline const Cpt* table_by_name(const LegoModel& m, std::string_view name) {
  if (name == "INITIAL") return &m.initial_tag;
  if (name == "WORD") return &m.word_cpt;
  if (name == "PREFIX") return &m.prefix_cpt;
  if (name == "SUFFIX") return &m.suffix_cpt;
  if (name == "CAP") return &m.cap_cpt;
  if (name == "HYPHEN") return &m.hyphen_cpt;
  if (name == "NUMBER") return &m.number_cpt;
  if (name == "TRANS") return &m.tag_transition;
  if (name == "MEMTRANS") return &m.memory_transition;
  return nullptr;
}

}  // namespace legotag
