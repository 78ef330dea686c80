#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "legotag/corpus.hpp"
#include "legotag/error.hpp"
#include "legotag/text.hpp"
#include "legotag/vocab.hpp"

namespace legotag {

enum class VocabMode { full, file, none };

struct FeatureConfig {
  int max_affix_len = 4;
  int word_min_count = 5;
  int affix_min_count = 10;
  bool factored = true;
  VocabMode lexicon_mode = VocabMode::full;
  VocabMode affix_mode = VocabMode::full;
  std::string word_file;    // lexicon_mode == file
  std::string prefix_file;  // affix_mode == file
  std::string suffix_file;
};

// Observed values for one token. In factored mode an in-lexicon token
// suppresses the affix and hyphen features (prefix/suffix = NONE, hyphen
// false); everything else is emitted unconditionally.
struct FeatureVector {
  int word = Vocabulary::kUnk;
  int prefix = Vocabulary::kUnk;
  int suffix = Vocabulary::kUnk;
  bool cap = false;
  bool hyphen = false;
  bool number = false;

  bool operator==(const FeatureVector&) const = default;
};

struct VocabularySet {
  Vocabulary word;
  Vocabulary prefix;
  Vocabulary suffix;
};

namespace detail {

inline std::string encode_range(const std::vector<char32_t>& cps, std::size_t begin,
                                std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) append_utf8(cps[i], out);
  return out;
}

}  // namespace detail

// Counts lowercased surfaces and affixes over the training corpus and keeps
// the forms meeting the frequency thresholds. Affixes run over lengths
// 1..max_affix_len but never cover the whole token, so a word is not its own
// affix; each token occurrence contributes one affix per length. In factored
// mode, forms containing a digit or hyphen are dropped from the word
// vocabulary.
inline VocabularySet build_vocabularies(const Corpus& train, const FeatureConfig& config) {
  if (train.empty()) throw ArgumentError("empty corpus");
  StringMap<long> word_counts, prefix_counts, suffix_counts;
  for (const Sentence& sent : train.sentences) {
    for (const Token& tok : sent.tokens) {
      const std::string lower = lowercase(tok.surface);
      ++word_counts[lower];
      const auto cps = code_points(lower);
      const auto max_k = std::min<std::size_t>(
          static_cast<std::size_t>(config.max_affix_len),
          cps.empty() ? 0 : cps.size() - 1);
      for (std::size_t k = 1; k <= max_k; ++k) {
        ++prefix_counts[detail::encode_range(cps, 0, k)];
        ++suffix_counts[detail::encode_range(cps, cps.size() - k, cps.size())];
      }
    }
  }

  std::vector<std::string> words;
  for (const auto& [form, count] : word_counts) {
    if (count < config.word_min_count) continue;
    if (config.factored && (contains_digit(form) || contains_hyphen(form))) continue;
    words.push_back(form);
  }
  auto keep = [&](const StringMap<long>& counts) {
    std::vector<std::string> out;
    for (const auto& [form, count] : counts)
      if (count >= config.affix_min_count) out.push_back(form);
    return out;
  };
  return VocabularySet{Vocabulary::from_entries(std::move(words)),
                       Vocabulary::from_entries(keep(prefix_counts)),
                       Vocabulary::from_entries(keep(suffix_counts))};
}

// Maps a surface to its observed feature values. Affix lookup is longest
// match first, over lengths 1..min(max_affix_len, len-1) of the lowercased
// form; UNK when nothing matches.
inline FeatureVector extract_features(std::string_view surface, const VocabularySet& vocabs,
                                      const FeatureConfig& config) {
  if (surface.empty()) throw ArgumentError("empty token surface");
  FeatureVector f;
  f.cap = contains_upper(surface);
  f.number = contains_digit(surface);
  const bool raw_hyphen = contains_hyphen(surface);
  const std::string lower = lowercase(surface);
  f.word = vocabs.word.lookup(lower);
  if (config.factored && f.word != Vocabulary::kUnk) {
    f.prefix = Vocabulary::kNone;
    f.suffix = Vocabulary::kNone;
    f.hyphen = false;
    return f;
  }
  f.hyphen = raw_hyphen;
  const auto cps = code_points(lower);
  const auto max_k = std::min<std::size_t>(static_cast<std::size_t>(config.max_affix_len),
                                           cps.empty() ? 0 : cps.size() - 1);
  f.prefix = Vocabulary::kUnk;
  for (std::size_t k = max_k; k >= 1; --k) {
    const int id = vocabs.prefix.lookup(detail::encode_range(cps, 0, k));
    if (id != Vocabulary::kUnk) {
      f.prefix = id;
      break;
    }
  }
  f.suffix = Vocabulary::kUnk;
  for (std::size_t k = max_k; k >= 1; --k) {
    const int id = vocabs.suffix.lookup(detail::encode_range(cps, cps.size() - k, cps.size()));
    if (id != Vocabulary::kUnk) {
      f.suffix = id;
      break;
    }
  }
  return f;
}

}  // namespace legotag
