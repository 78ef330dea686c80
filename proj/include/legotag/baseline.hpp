#pragma once

#include <vector>

#include "legotag/corpus.hpp"
#include "legotag/model.hpp"
#include "legotag/text.hpp"
#include "legotag/vocab.hpp"

namespace legotag {

// Unigram most-frequent-tag baseline: each lowercased surface gets its most
// frequent training tag; unseen surfaces get the globally most frequent tag.
// Ties go to the smallest tag id.
class UnigramBaseline {
 public:
  static UnigramBaseline fit(const Corpus& corpus, const TagSet& tagset) {
    UnigramBaseline b;
    StringMap<std::vector<long>> counts;
    std::vector<long> global(static_cast<std::size_t>(tagset.size()), 0);
    for (const Sentence& sent : corpus.sentences) {
      for (const Token& tok : sent.tokens) {
        const int t = tagset.id(tok.gold_tag);
        if (t < 0) throw TrainError("unknown tag '" + tok.gold_tag + "'");
        auto& row = counts[lowercase(tok.surface)];
        if (row.empty()) row.assign(static_cast<std::size_t>(tagset.size()), 0);
        ++row[static_cast<std::size_t>(t)];
        ++global[static_cast<std::size_t>(t)];
      }
    }
    auto argmax = [](const std::vector<long>& row) {
      int best = 0;
      for (std::size_t t = 1; t < row.size(); ++t)
        if (row[t] > row[static_cast<std::size_t>(best)]) best = static_cast<int>(t);
      return best;
    };
    for (const auto& [surface, row] : counts) b.best_.emplace(surface, argmax(row));
    b.fallback_ = argmax(global);
    return b;
  }

  std::vector<int> tag(const Sentence& sent) const {
    std::vector<int> out;
    out.reserve(sent.size());
    for (const Token& tok : sent.tokens) {
      auto it = best_.find(lowercase(tok.surface));
      out.push_back(it == best_.end() ? fallback_ : it->second);
    }
    return out;
  }

 private:
  StringMap<int> best_;
  int fallback_ = 0;
};

}  // namespace legotag
