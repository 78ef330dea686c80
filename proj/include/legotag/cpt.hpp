#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "legotag/error.hpp"

namespace legotag {

// Dense conditional probability table: one row per flattened parent tuple,
// one column per child value. Raw counts are kept next to the probabilities
// so models can be merged, serialized and re-smoothed losslessly.
class Cpt {
 public:
  Cpt() = default;
  Cpt(std::size_t rows, std::size_t cols) { init(rows, cols); }

  void init(std::size_t rows, std::size_t cols) {
    rows_ = rows;
    cols_ = cols;
    counts_.assign(rows * cols, 0);
    prob_.clear();
    logp_.clear();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void add(std::size_t row, std::size_t col, std::uint64_t n = 1) {
    assert(row < rows_ && col < cols_);
    counts_[row * cols_ + col] += n;
  }

  std::uint64_t count(std::size_t row, std::size_t col) const {
    assert(row < rows_ && col < cols_);
    return counts_[row * cols_ + col];
  }

  std::uint64_t row_total(std::size_t row) const {
    std::uint64_t t = 0;
    for (std::size_t c = 0; c < cols_; ++c) t += counts_[row * cols_ + c];
    return t;
  }

  // Additive smoothing: p = (count + lambda) / (total + lambda * cols). A row
  // with no observations and lambda = 0 falls back to uniform so every row
  // stays a distribution.
  void finalize(double lambda) {
    prob_.assign(counts_.size(), 0.0);
    logp_.assign(counts_.size(), 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const double denom =
          static_cast<double>(row_total(r)) + lambda * static_cast<double>(cols_);
      for (std::size_t c = 0; c < cols_; ++c) {
        const std::size_t i = r * cols_ + c;
        prob_[i] = denom > 0.0
                       ? (static_cast<double>(counts_[i]) + lambda) / denom
                       : 1.0 / static_cast<double>(cols_);
        logp_[i] = std::log(prob_[i]);
      }
    }
  }

  bool finalized() const { return !prob_.empty(); }

  double p(std::size_t row, std::size_t col) const {
    assert(row < rows_ && col < cols_);
    return prob_[row * cols_ + col];
  }

  double lp(std::size_t row, std::size_t col) const {
    assert(row < rows_ && col < cols_);
    return logp_[row * cols_ + col];
  }

  const double* prob_row(std::size_t row) const { return prob_.data() + row * cols_; }
  const double* logp_row(std::size_t row) const { return logp_.data() + row * cols_; }

  double prob_row_sum(std::size_t row) const {
    double s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += prob_[row * cols_ + c];
    return s;
  }

  const std::vector<std::uint64_t>& counts() const { return counts_; }

  // Shard merge; dimensions must agree.
  void merge(const Cpt& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_)
      throw ArgumentError("cannot merge tables of different dimensions");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  }

  // Direct table construction for hand-built models; counts stay empty.
  static Cpt from_probs(std::size_t rows, std::size_t cols, std::vector<double> probs) {
    if (probs.size() != rows * cols) throw ArgumentError("probability table size mismatch");
    Cpt t;
    t.rows_ = rows;
    t.cols_ = cols;
    t.counts_.assign(rows * cols, 0);
    t.prob_ = std::move(probs);
    t.logp_.resize(t.prob_.size());
    for (std::size_t i = 0; i < t.prob_.size(); ++i) t.logp_[i] = std::log(t.prob_[i]);
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> counts_;
  std::vector<double> prob_;
  std::vector<double> logp_;
};

}  // namespace legotag
