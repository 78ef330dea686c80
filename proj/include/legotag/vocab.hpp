#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "legotag/error.hpp"
#include "legotag/text.hpp"

namespace legotag {

struct StringHash : std::hash<std::string_view> {
  using is_transparent = void;
};

template <typename Value>
using StringMap = std::unordered_map<std::string, Value, StringHash, std::equal_to<>>;

// String-to-id mapping with two reserved ids: NONE (feature suppressed) and
// UNK (out of vocabulary). Entry ids are dense and follow sorted entry order,
// so the same entry set always yields the same ids.
class Vocabulary {
 public:
  static constexpr int kNone = 0;
  static constexpr int kUnk = 1;
  static constexpr int kFirstEntry = 2;

  Vocabulary() = default;

  // Entries must already be lowercased; duplicates are dropped.
  static Vocabulary from_entries(std::vector<std::string> entries) {
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    Vocabulary v;
    v.entries_ = std::move(entries);
    v.index_.reserve(v.entries_.size());
    for (std::size_t i = 0; i < v.entries_.size(); ++i)
      v.index_.emplace(v.entries_[i], static_cast<int>(i) + kFirstEntry);
    return v;
  }

  // Id of a lowercased form, or UNK when absent.
  int lookup(std::string_view lowercased) const {
    auto it = index_.find(lowercased);
    return it == index_.end() ? kUnk : it->second;
  }

  bool contains(std::string_view lowercased) const {
    return index_.find(lowercased) != index_.end();
  }

  // Width of the id space: entries plus the two reserved ids.
  int size() const { return static_cast<int>(entries_.size()) + kFirstEntry; }

  int num_entries() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  const std::vector<std::string>& entries() const { return entries_; }

  // Display name for any id, including the reserved ones.
  std::string name(int id) const {
    if (id == kNone) return "<none>";
    if (id == kUnk) return "<unk>";
    return entries_.at(static_cast<std::size_t>(id - kFirstEntry));
  }

 private:
  std::vector<std::string> entries_;
  StringMap<int> index_;
};

// One entry per line, UTF-8; '#'-prefixed lines are comments. Entries are
// lowercased, deduplicated and sorted before ids are assigned. An empty file
// yields a vocabulary where every lookup is UNK.
inline Vocabulary load_vocabulary(std::istream& in) {
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    entries.push_back(lowercase(t));
  }
  return Vocabulary::from_entries(std::move(entries));
}

// entry<TAB>id, in sorted entry order.
inline void dump_vocabulary(const Vocabulary& v, std::ostream& out) {
  for (int i = 0; i < v.num_entries(); ++i)
    out << v.entries()[static_cast<std::size_t>(i)] << '\t'
        << (i + Vocabulary::kFirstEntry) << '\n';
}

}  // namespace legotag
