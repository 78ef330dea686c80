#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "legotag/corpus.hpp"
#include "legotag/error.hpp"
#include "legotag/model.hpp"
#include "legotag/text.hpp"
#include "legotag/vocab.hpp"

namespace legotag {

// Token, OOV, and sentence error counts plus the gold-by-predicted confusion
// matrix. Rates are fractions; rendering converts to percentages. OOV means
// the lowercased surface is missing from the word vocabulary in force.
struct EvalReport {
  int num_tags = 0;
  std::size_t tokens = 0;
  std::size_t token_errors = 0;
  std::size_t oov_tokens = 0;
  std::size_t oov_errors = 0;
  std::size_t sentences = 0;
  std::size_t sentence_errors = 0;
  std::vector<std::size_t> confusion;  // gold * num_tags + predicted

  double overall_error() const {
    return tokens ? static_cast<double>(token_errors) / static_cast<double>(tokens) : 0.0;
  }
  bool oov_defined() const { return oov_tokens > 0; }
  double oov_error() const {
    return oov_defined() ? static_cast<double>(oov_errors) / static_cast<double>(oov_tokens)
                         : 0.0;
  }
  double sentence_error() const {
    return sentences ? static_cast<double>(sentence_errors) / static_cast<double>(sentences)
                     : 0.0;
  }
  double unknown_pct() const {
    return tokens ? static_cast<double>(oov_tokens) / static_cast<double>(tokens) : 0.0;
  }
  std::size_t confusion_at(int gold, int predicted) const {
    return confusion[static_cast<std::size_t>(gold) * static_cast<std::size_t>(num_tags) +
                     static_cast<std::size_t>(predicted)];
  }

  // Partial reports merge by summing counts.
  void merge(const EvalReport& other) {
    tokens += other.tokens;
    token_errors += other.token_errors;
    oov_tokens += other.oov_tokens;
    oov_errors += other.oov_errors;
    sentences += other.sentences;
    sentence_errors += other.sentence_errors;
    for (std::size_t i = 0; i < confusion.size(); ++i) confusion[i] += other.confusion[i];
  }
};

inline EvalReport evaluate(const Corpus& gold, const std::vector<std::vector<int>>& predicted,
                           const TagSet& tagset, const Vocabulary& word_vocab) {
  if (predicted.size() != gold.sentences.size())
    throw ArgumentError("prediction count does not match sentence count");
  EvalReport r;
  r.num_tags = tagset.size();
  r.confusion.assign(
      static_cast<std::size_t>(tagset.size()) * static_cast<std::size_t>(tagset.size()), 0);
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const Sentence& sent = gold.sentences[s];
    const auto& pred = predicted[s];
    if (pred.size() != sent.size())
      throw ArgumentError("prediction length mismatch at sentence " + std::to_string(s));
    ++r.sentences;
    bool any_error = false;
    for (std::size_t i = 0; i < sent.size(); ++i) {
      const Token& tok = sent.tokens[i];
      const int g = tagset.id(tok.gold_tag);
      if (g < 0) throw ArgumentError("gold tag '" + tok.gold_tag + "' not in tag set");
      const int p = pred[i];
      ++r.tokens;
      const bool oov = !word_vocab.contains(lowercase(tok.surface));
      if (oov) ++r.oov_tokens;
      const bool wrong = g != p;
      if (wrong) {
        ++r.token_errors;
        any_error = true;
        if (oov) ++r.oov_errors;
      }
      ++r.confusion[static_cast<std::size_t>(g) * static_cast<std::size_t>(r.num_tags) +
                    static_cast<std::size_t>(p)];
    }
    if (any_error) ++r.sentence_errors;
  }
  return r;
}

struct ConfusionCell {
  int gold = -1;
  int predicted = -1;
  std::size_t count = 0;
  double share = 0.0;  // of total errors
};

// Largest off-diagonal confusion cells, by count descending; ties break on
// (gold, predicted).
inline std::vector<ConfusionCell> top_confusions(const EvalReport& report, int n) {
  if (n < 1) throw ArgumentError("top_confusions requires n >= 1");
  std::vector<ConfusionCell> cells;
  for (int g = 0; g < report.num_tags; ++g)
    for (int p = 0; p < report.num_tags; ++p) {
      if (g == p) continue;
      const std::size_t c = report.confusion_at(g, p);
      if (c == 0) continue;
      cells.push_back(ConfusionCell{
          g, p, c,
          report.token_errors
              ? static_cast<double>(c) / static_cast<double>(report.token_errors)
              : 0.0});
    }
  std::sort(cells.begin(), cells.end(), [](const ConfusionCell& a, const ConfusionCell& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.gold != b.gold) return a.gold < b.gold;
    return a.predicted < b.predicted;
  });
  if (static_cast<int>(cells.size()) > n) cells.resize(static_cast<std::size_t>(n));
  return cells;
}

namespace detail {

inline std::string pct(double fraction, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, fraction * 100.0);
  return buf;
}

}  // namespace detail

// Human-readable table (percent, one decimal) followed by machine-readable
// metric=value lines (percent, four decimals; "n/a" when no OOV token
// appears).
inline void render_report(const EvalReport& r, std::ostream& out) {
  const std::string oov = r.oov_defined() ? detail::pct(r.oov_error(), 1) : "n/a";
  out << "tokens: " << r.tokens << "  sentences: " << r.sentences << '\n';
  out << "  Ave    OoV    Sen    Unkn%\n";
  out << "  " << detail::pct(r.overall_error(), 1) << "    " << oov << "    "
      << detail::pct(r.sentence_error(), 1) << "    " << detail::pct(r.unknown_pct(), 1)
      << '\n';
  out << "overall_error=" << detail::pct(r.overall_error(), 4) << '\n';
  out << "oov_error=" << (r.oov_defined() ? detail::pct(r.oov_error(), 4) : "n/a") << '\n';
  out << "sentence_error=" << detail::pct(r.sentence_error(), 4) << '\n';
  out << "unknown_pct=" << detail::pct(r.unknown_pct(), 4) << '\n';
}

}  // namespace legotag
