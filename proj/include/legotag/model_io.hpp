#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "legotag/error.hpp"
#include "legotag/model.hpp"

namespace legotag {

// Versioned UTF-8 text format. Only raw counts, domains and the
// configuration are stored; probabilities are recomputed from counts and
// lambda on load, so a round trip decodes bit-identically on any platform.
inline constexpr const char* kModelVersion = "v1";

namespace detail {

inline const char* vocab_mode_name(VocabMode m) {
  switch (m) {
    case VocabMode::full: return "full";
    case VocabMode::file: return "file";
    default: return "none";
  }
}

inline VocabMode vocab_mode_from(const std::string& s) {
  if (s == "full") return VocabMode::full;
  if (s == "file") return VocabMode::file;
  if (s == "none") return VocabMode::none;
  throw IntegrityError("bad vocabulary mode '" + s + "'");
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_counts(std::ostream& out, const char* name, const Cpt& t) {
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < t.counts().size(); ++i)
    if (t.counts()[i]) ++nnz;
  out << "COUNTS:" << name << ' ' << t.rows() << ' ' << t.cols() << ' ' << nnz << '\n';
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c)
      if (t.count(r, c)) out << r << ' ' << c << ' ' << t.count(r, c) << '\n';
}

struct LineReader {
  std::istream& in;
  std::size_t line_no = 0;

  std::string next() {
    std::string line;
    if (!std::getline(in, line))
      throw IntegrityError("model file truncated at line " + std::to_string(line_no + 1));
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  // "<head> <args...>" with exact head match.
  std::istringstream section(const std::string& head) {
    std::string line = next();
    if (line.compare(0, head.size(), head) != 0 ||
        (line.size() > head.size() && line[head.size()] != ' '))
      throw IntegrityError("expected section '" + head + "', found '" + line + "'");
    return std::istringstream(line.size() > head.size() ? line.substr(head.size() + 1) : "");
  }
};

inline void read_counts(LineReader& lr, const char* name, Cpt& t) {
  auto args = lr.section(std::string("COUNTS:") + name);
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(args >> rows >> cols >> nnz))
    throw IntegrityError(std::string("bad COUNTS:") + name + " header");
  if (rows != t.rows() || cols != t.cols())
    throw IntegrityError(std::string("dimension mismatch in COUNTS:") + name + ": file says " +
                         std::to_string(rows) + "x" + std::to_string(cols) + ", model needs " +
                         std::to_string(t.rows()) + "x" + std::to_string(t.cols()));
  for (std::size_t i = 0; i < nnz; ++i) {
    std::istringstream ls(lr.next());
    std::size_t r = 0, c = 0;
    std::uint64_t v = 0;
    if (!(ls >> r >> c >> v) || r >= rows || c >= cols)
      throw IntegrityError(std::string("bad count entry in COUNTS:") + name);
    t.add(r, c, v);
  }
}

inline void check_sorted_unique(const std::vector<std::string>& items, const char* what) {
  for (std::size_t i = 1; i < items.size(); ++i)
    if (!(items[i - 1] < items[i]))
      throw IntegrityError(std::string(what) + " not sorted and unique");
}

}  // namespace detail

inline void save_model(const LegoModel& m, std::ostream& out) {
  out << "legotag-model " << kModelVersion << '\n';
  out << "CONFIG 10\n";
  out << "factored " << (m.config.factored ? 1 : 0) << '\n';
  out << "max_affix_len " << m.config.max_affix_len << '\n';
  out << "word_min_count " << m.config.word_min_count << '\n';
  out << "affix_min_count " << m.config.affix_min_count << '\n';
  out << "lexicon_mode " << detail::vocab_mode_name(m.config.lexicon_mode) << '\n';
  out << "affix_mode " << detail::vocab_mode_name(m.config.affix_mode) << '\n';
  out << "word_file " << m.config.word_file << '\n';
  out << "prefix_file " << m.config.prefix_file << '\n';
  out << "suffix_file " << m.config.suffix_file << '\n';
  out << "lambda " << detail::format_double(m.lambda) << '\n';

  out << "TAGSET " << m.tagset.size() << '\n';
  for (const auto& tag : m.tagset.tags()) out << tag << '\n';

  const bool full = m.memory.is_identity();
  out << "MEMORY " << (full ? "full" : "clustered") << ' ' << m.memory.size() << '\n';
  if (!full)
    for (int t = 0; t < m.tagset.size(); ++t)
      out << m.tagset.name(t) << '\t' << m.memory.projection[static_cast<std::size_t>(t)]
          << '\n';

  auto write_vocab = [&](const char* name, const Vocabulary& v) {
    out << "VOCAB:" << name << ' ' << v.num_entries() << '\n';
    for (const auto& e : v.entries()) out << e << '\n';
  };
  write_vocab("WORD", m.vocabs.word);
  write_vocab("PREFIX", m.vocabs.prefix);
  write_vocab("SUFFIX", m.vocabs.suffix);

  detail::write_counts(out, "INITIAL", m.initial_tag);
  detail::write_counts(out, "WORD", m.word_cpt);
  detail::write_counts(out, "PREFIX", m.prefix_cpt);
  detail::write_counts(out, "SUFFIX", m.suffix_cpt);
  detail::write_counts(out, "CAP", m.cap_cpt);
  detail::write_counts(out, "HYPHEN", m.hyphen_cpt);
  detail::write_counts(out, "NUMBER", m.number_cpt);
  detail::write_counts(out, "TRANS", m.tag_transition);
  detail::write_counts(out, "MEMTRANS", m.memory_transition);
  out << "END\n";
}

inline LegoModel load_model(std::istream& in) {
  detail::LineReader lr{in};

  {
    std::string header = lr.next();
    const std::string prefix = "legotag-model ";
    if (header.compare(0, prefix.size(), prefix) != 0)
      throw IntegrityError("not a legotag model file");
    const std::string version = header.substr(prefix.size());
    if (version != kModelVersion)
      throw VersionError("unsupported model version '" + version + "' (this build reads '" +
                         std::string(kModelVersion) + "')");
  }

  LegoModel m;
  {
    auto args = lr.section("CONFIG");
    std::size_t n = 0;
    if (!(args >> n)) throw IntegrityError("bad CONFIG header");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string line = lr.next();
      const std::size_t sp = line.find(' ');
      const std::string key = line.substr(0, sp);
      const std::string value = sp == std::string::npos ? "" : line.substr(sp + 1);
      if (key == "factored") m.config.factored = value == "1";
      else if (key == "max_affix_len") m.config.max_affix_len = std::stoi(value);
      else if (key == "word_min_count") m.config.word_min_count = std::stoi(value);
      else if (key == "affix_min_count") m.config.affix_min_count = std::stoi(value);
      else if (key == "lexicon_mode") m.config.lexicon_mode = detail::vocab_mode_from(value);
      else if (key == "affix_mode") m.config.affix_mode = detail::vocab_mode_from(value);
      else if (key == "word_file") m.config.word_file = value;
      else if (key == "prefix_file") m.config.prefix_file = value;
      else if (key == "suffix_file") m.config.suffix_file = value;
      else if (key == "lambda") m.lambda = std::stod(value);
      else throw IntegrityError("unknown CONFIG key '" + key + "'");
    }
  }

  {
    auto args = lr.section("TAGSET");
    int kt = 0;
    if (!(args >> kt) || kt < 1) throw IntegrityError("bad TAGSET header");
    std::vector<std::string> tags;
    tags.reserve(static_cast<std::size_t>(kt));
    for (int i = 0; i < kt; ++i) tags.push_back(lr.next());
    detail::check_sorted_unique(tags, "TAGSET");
    m.tagset = TagSet::from_tags(std::move(tags));
    if (m.tagset.size() != kt) throw IntegrityError("TAGSET size mismatch");
  }

  {
    auto args = lr.section("MEMORY");
    std::string kind;
    int km = 0;
    if (!(args >> kind >> km) || km < 2) throw IntegrityError("bad MEMORY header");
    if (kind == "full") {
      if (km != m.tagset.size() + 1)
        throw IntegrityError("full MEMORY size does not match the tag set");
      m.memory = MemoryDomain::full(m.tagset);
    } else if (kind == "clustered") {
      std::vector<int> assignment(static_cast<std::size_t>(m.tagset.size()), -1);
      for (int i = 0; i < m.tagset.size(); ++i) {
        const std::string line = lr.next();
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) throw IntegrityError("bad MEMORY projection line");
        const int t = m.tagset.id(line.substr(0, tab));
        if (t < 0) throw IntegrityError("MEMORY projection names unknown tag");
        assignment[static_cast<std::size_t>(t)] = std::stoi(line.substr(tab + 1));
      }
      m.memory = MemoryDomain::clustered(m.tagset, assignment, km - 1);
    } else {
      throw IntegrityError("unknown MEMORY kind '" + kind + "'");
    }
  }

  auto read_vocab = [&](const char* name) {
    auto args = lr.section(std::string("VOCAB:") + name);
    long n = -1;
    if (!(args >> n) || n < 0)
      throw IntegrityError(std::string("bad VOCAB:") + name + " header");
    std::vector<std::string> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) entries.push_back(lr.next());
    detail::check_sorted_unique(entries, (std::string("VOCAB:") + name).c_str());
    return Vocabulary::from_entries(std::move(entries));
  };
  m.vocabs.word = read_vocab("WORD");
  m.vocabs.prefix = read_vocab("PREFIX");
  m.vocabs.suffix = read_vocab("SUFFIX");

  m.init_tables();
  detail::read_counts(lr, "INITIAL", m.initial_tag);
  detail::read_counts(lr, "WORD", m.word_cpt);
  detail::read_counts(lr, "PREFIX", m.prefix_cpt);
  detail::read_counts(lr, "SUFFIX", m.suffix_cpt);
  detail::read_counts(lr, "CAP", m.cap_cpt);
  detail::read_counts(lr, "HYPHEN", m.hyphen_cpt);
  detail::read_counts(lr, "NUMBER", m.number_cpt);
  detail::read_counts(lr, "TRANS", m.tag_transition);
  detail::read_counts(lr, "MEMTRANS", m.memory_transition);

  if (lr.next() != "END") throw IntegrityError("missing END marker");
  if (m.lambda < 0.0) throw IntegrityError("negative lambda");
  m.finalize_tables();
  return m;
}

}  // namespace legotag
