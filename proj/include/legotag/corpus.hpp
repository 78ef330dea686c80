#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "legotag/error.hpp"
#include "legotag/text.hpp"

namespace legotag {

enum class CorpusFormat { slash, tsv };
enum class CorpusMode { tagged, raw };
enum class SplitPolicy { prefix, interleave };

struct Token {
  std::string surface;
  std::string gold_tag;  // empty when absent (raw corpora)

  bool has_tag() const { return !gold_tag.empty(); }
};

struct Sentence {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
};

struct Corpus {
  std::vector<Sentence> sentences;
  std::vector<std::string> tagset;  // sorted, unique

  std::size_t num_tokens() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
  }
  bool empty() const { return sentences.empty(); }
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> items;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) items.push_back(line.substr(i, j - i));
    i = j;
  }
  return items;
}

inline Token parse_slash_item(std::string_view item, std::size_t line_no) {
  const std::size_t slash = item.rfind('/');
  if (slash == std::string_view::npos)
    throw ParseError("missing '/' tag separator in '" + std::string(item) + "'", line_no);
  if (slash == 0)
    throw ParseError("empty token surface in '" + std::string(item) + "'", line_no);
  if (slash + 1 == item.size())
    throw ParseError("empty tag in '" + std::string(item) + "'", line_no);
  return Token{std::string(item.substr(0, slash)), std::string(item.substr(slash + 1))};
}

}  // namespace detail

// Slash format: whitespace-separated token/TAG items, one sentence per line;
// the tag follows the LAST slash, so surfaces may contain '/'. TSV format:
// one token<TAB>TAG per line, blank line between sentences. Raw mode reads
// surfaces only (slash items are taken verbatim; a tab in raw TSV input is an
// error). Blank lines never produce empty sentences.
inline Corpus read_corpus(std::istream& in, CorpusFormat format,
                          CorpusMode mode = CorpusMode::tagged) {
  Corpus corpus;
  std::set<std::string> tags;
  const bool tagged = mode == CorpusMode::tagged;
  std::string line;
  std::size_t line_no = 0;
  Sentence pending;

  auto flush = [&] {
    if (!pending.tokens.empty()) {
      corpus.sentences.push_back(std::move(pending));
      pending = Sentence{};
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (format == CorpusFormat::slash) {
      Sentence sent;
      for (std::string_view item : detail::split_ws(line)) {
        if (tagged) {
          Token tok = detail::parse_slash_item(item, line_no);
          tags.insert(tok.gold_tag);
          sent.tokens.push_back(std::move(tok));
        } else {
          sent.tokens.push_back(Token{std::string(item), ""});
        }
      }
      if (!sent.tokens.empty()) corpus.sentences.push_back(std::move(sent));
    } else {
      std::string_view sv = line;
      if (trim(sv).empty()) {
        flush();
        continue;
      }
      const std::size_t tab = sv.find('\t');
      if (tagged) {
        if (tab == std::string_view::npos)
          throw ParseError("expected token<TAB>TAG", line_no);
        std::string_view surface = sv.substr(0, tab);
        std::string_view tag = sv.substr(tab + 1);
        if (surface.empty()) throw ParseError("empty token surface", line_no);
        if (tag.empty()) throw ParseError("empty tag", line_no);
        if (tag.find('\t') != std::string_view::npos)
          throw ParseError("extra tab after tag", line_no);
        pending.tokens.push_back(Token{std::string(surface), std::string(tag)});
        tags.insert(std::string(tag));
      } else {
        if (tab != std::string_view::npos)
          throw ParseError("unexpected tab in raw input", line_no);
        pending.tokens.push_back(Token{std::string(sv), ""});
      }
    }
  }
  flush();
  corpus.tagset.assign(tags.begin(), tags.end());
  return corpus;
}

namespace detail {

// Nearest integer when x sits within eps of one, to keep fractions like 0.9
// from drifting across an integer boundary in floating point.
inline double snap(double x, double eps = 1e-9) {
  const double r = std::nearbyint(x);
  return std::abs(x - r) < eps ? r : x;
}

}  // namespace detail

// Prefix policy: the first ceil(N*f) sentences train. Interleave policy:
// sentence i tests iff i mod round(1/(1-f)) == 0. Both halves share the
// parent tagset.
inline std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, double train_fraction,
                                              SplitPolicy policy) {
  if (corpus.empty()) throw ArgumentError("cannot split an empty corpus");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ArgumentError("train fraction must be in (0,1)");
  Corpus train, test;
  train.tagset = corpus.tagset;
  test.tagset = corpus.tagset;
  const std::size_t n = corpus.sentences.size();
  if (policy == SplitPolicy::prefix) {
    const auto cut = static_cast<std::size_t>(
        std::ceil(detail::snap(static_cast<double>(n) * train_fraction)));
    for (std::size_t i = 0; i < n; ++i)
      (i < cut ? train : test).sentences.push_back(corpus.sentences[i]);
  } else {
    const auto stride = static_cast<std::size_t>(
        std::nearbyint(1.0 / (1.0 - train_fraction)));
    for (std::size_t i = 0; i < n; ++i)
      (stride > 0 && i % stride == 0 ? test : train).sentences.push_back(corpus.sentences[i]);
  }
  return {std::move(train), std::move(test)};
}

// Writes sentences with their tag sequences; the output re-reads to the same
// token/tag structure.
inline void write_tagged(const std::vector<Sentence>& sentences,
                         const std::vector<std::vector<std::string>>& tag_seqs,
                         std::ostream& out, CorpusFormat format) {
  if (sentences.size() != tag_seqs.size())
    throw ArgumentError("sentence/tag-sequence count mismatch");
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const Sentence& sent = sentences[s];
    const auto& tags = tag_seqs[s];
    if (sent.size() != tags.size())
      throw ArgumentError("tag sequence length mismatch at sentence " + std::to_string(s));
    if (format == CorpusFormat::slash) {
      for (std::size_t i = 0; i < sent.size(); ++i) {
        if (i) out << ' ';
        out << sent.tokens[i].surface << '/' << tags[i];
      }
      out << '\n';
    } else {
      for (std::size_t i = 0; i < sent.size(); ++i)
        out << sent.tokens[i].surface << '\t' << tags[i] << '\n';
      out << '\n';
    }
  }
}

}  // namespace legotag
