#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "legotag/error.hpp"
#include "legotag/model.hpp"

namespace legotag {

struct ViterbiResult {
  std::vector<int> tags;
  double log_prob = 0.0;
};

// Per-position marginals over tags, memory summed out. The scaling factors
// of the forward pass are folded into log_likelihood.
struct Posterior {
  std::vector<std::vector<double>> tag_marginals;
  double log_likelihood = 0.0;
};

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// One transition step in log space. Both the forward pass and the optimal-
// path marking recompute candidates through this helper, so score equality
// is exact.
inline double step_score(double prev, double lt, double lm, double lf) {
  return ((prev + lt) + lm) + lf;
}

}  // namespace detail

// Most probable joint (tag, memory) path; the returned tags are its tag
// projection and log_prob its joint log probability. The lattice runs over
// all K_T * K_M states (tag-major: state = tag * K_M + mem); position 1 is
// pinned to memory = Start. Among exactly tied optima the lexicographically
// smallest tag-id sequence wins.
inline ViterbiResult viterbi(const LegoModel& model, const std::vector<FeatureVector>& feats) {
  using detail::kNegInf;
  if (feats.empty()) throw ArgumentError("cannot decode an empty sentence");
  const int kt = model.num_tags();
  const int km = model.num_memory();
  const int S = kt * km;
  const std::size_t n = feats.size();

  // Emission scores, shared by every memory value of a tag.
  std::vector<double> emit(n * static_cast<std::size_t>(kt));
  for (std::size_t i = 0; i < n; ++i)
    for (int t = 0; t < kt; ++t)
      emit[i * static_cast<std::size_t>(kt) + static_cast<std::size_t>(t)] =
          feature_log_likelihood(model, feats[i], t);

  std::vector<double> delta(n * static_cast<std::size_t>(S), kNegInf);
  std::vector<int> backptr(n * static_cast<std::size_t>(S), -1);
  std::vector<unsigned char> tied(n * static_cast<std::size_t>(S), 0);

  auto cell = [S](std::size_t i, int s) { return i * static_cast<std::size_t>(S) + static_cast<std::size_t>(s); };

  const int start = model.memory.start_id();
  bool any = false;
  for (int t = 0; t < kt; ++t) {
    const double v = model.initial_tag.lp(0, static_cast<std::size_t>(t)) +
                     emit[static_cast<std::size_t>(t)];
    delta[cell(0, t * km + start)] = v;
    any = any || v > kNegInf;
  }
  if (!any) throw DecodeError("no admissible tag", 1);

  for (std::size_t i = 1; i < n; ++i) {
    for (int sp = 0; sp < S; ++sp) {
      const double prev = delta[cell(i - 1, sp)];
      if (prev == kNegInf) continue;
      const std::size_t row = model.transition_row(sp / km, sp % km);
      const double* lt = model.tag_transition.logp_row(row);
      const double* lm = model.memory_transition.logp_row(row);
      for (int t = 0; t < kt; ++t) {
        const double lf = emit[i * static_cast<std::size_t>(kt) + static_cast<std::size_t>(t)];
        const double partial = prev + lt[t];
        for (int m = 0; m < km; ++m) {
          const double cand = (partial + lm[m]) + lf;
          if (cand == kNegInf) continue;
          const std::size_t c = cell(i, t * km + m);
          if (cand > delta[c]) {
            delta[c] = cand;
            backptr[c] = sp;
            tied[c] = 0;
          } else if (cand == delta[c]) {
            tied[c] = 1;
          }
        }
      }
    }
    bool col = false;
    for (int s = 0; s < S; ++s) col = col || delta[cell(i, s)] > kNegInf;
    if (!col) throw DecodeError("no admissible state", i + 1);
  }

  double opt = kNegInf;
  int best_final = -1;
  int final_ties = 0;
  for (int s = 0; s < S; ++s) {
    const double v = delta[cell(n - 1, s)];
    if (v > opt) {
      opt = v;
      best_final = s;
      final_ties = 1;
    } else if (v == opt && v > kNegInf) {
      ++final_ties;
    }
  }
  if (best_final < 0) throw DecodeError("no admissible state", n);

  ViterbiResult result;
  result.log_prob = opt;
  result.tags.assign(n, 0);

  // Fast path: a unique optimum needs no tie resolution.
  bool unique = final_ties == 1;
  if (unique) {
    int s = best_final;
    for (std::size_t i = n; i-- > 0;) {
      if (tied[cell(i, s)]) {
        unique = false;
        break;
      }
      result.tags[i] = s / km;
      s = backptr[cell(i, s)];
    }
    if (unique) return result;
  }

  // Tie resolution: mark every state lying on some optimal path, then walk
  // forward choosing the smallest tag admitted at each position.
  std::vector<unsigned char> marked(n * static_cast<std::size_t>(S), 0);
  for (int s = 0; s < S; ++s)
    if (delta[cell(n - 1, s)] == opt) marked[cell(n - 1, s)] = 1;
  for (std::size_t i = n - 1; i >= 1; --i) {
    for (int sp = 0; sp < S; ++sp) {
      const double prev = delta[cell(i - 1, sp)];
      if (prev == kNegInf) continue;
      const std::size_t row = model.transition_row(sp / km, sp % km);
      const double* lt = model.tag_transition.logp_row(row);
      const double* lm = model.memory_transition.logp_row(row);
      for (int s = 0; s < S; ++s) {
        if (!marked[cell(i, s)]) continue;
        const int t = s / km;
        const double lf = emit[i * static_cast<std::size_t>(kt) + static_cast<std::size_t>(t)];
        if (((prev + lt[t]) + lm[s % km]) + lf == delta[cell(i, s)])
          marked[cell(i - 1, sp)] = 1;
      }
    }
  }

  std::vector<unsigned char> frontier(static_cast<std::size_t>(S), 0);
  int chosen = kt;
  for (int s = 0; s < S; ++s)
    if (marked[cell(0, s)]) chosen = std::min(chosen, s / km);
  result.tags[0] = chosen;
  for (int s = 0; s < S; ++s)
    frontier[static_cast<std::size_t>(s)] =
        marked[cell(0, s)] && s / km == chosen ? 1 : 0;

  for (std::size_t i = 1; i < n; ++i) {
    std::vector<unsigned char> next(static_cast<std::size_t>(S), 0);
    for (int sp = 0; sp < S; ++sp) {
      if (!frontier[static_cast<std::size_t>(sp)]) continue;
      const double prev = delta[cell(i - 1, sp)];
      const std::size_t row = model.transition_row(sp / km, sp % km);
      const double* lt = model.tag_transition.logp_row(row);
      const double* lm = model.memory_transition.logp_row(row);
      for (int s = 0; s < S; ++s) {
        if (!marked[cell(i, s)] || next[static_cast<std::size_t>(s)]) continue;
        const int t = s / km;
        const double lf = emit[i * static_cast<std::size_t>(kt) + static_cast<std::size_t>(t)];
        if (((prev + lt[t]) + lm[s % km]) + lf == delta[cell(i, s)])
          next[static_cast<std::size_t>(s)] = 1;
      }
    }
    chosen = kt;
    for (int s = 0; s < S; ++s)
      if (next[static_cast<std::size_t>(s)]) chosen = std::min(chosen, s / km);
    result.tags[i] = chosen;
    for (int s = 0; s < S; ++s)
      if (s / km != chosen) next[static_cast<std::size_t>(s)] = 0;
    frontier.swap(next);
  }
  return result;
}

// Exact per-position posteriors Pr(T_i | F_1..F_n) over the joint lattice,
// with per-position rescaling; log-likelihood is the sum of the log scale
// factors.
inline Posterior forward_backward(const LegoModel& model,
                                  const std::vector<FeatureVector>& feats) {
  if (feats.empty()) throw ArgumentError("cannot decode an empty sentence");
  const int kt = model.num_tags();
  const int km = model.num_memory();
  const int S = kt * km;
  const std::size_t n = feats.size();

  std::vector<double> emit(n * static_cast<std::size_t>(kt));
  for (std::size_t i = 0; i < n; ++i)
    for (int t = 0; t < kt; ++t)
      emit[i * static_cast<std::size_t>(kt) + static_cast<std::size_t>(t)] =
          feature_likelihood(model, feats[i], t);

  std::vector<double> alpha(n * static_cast<std::size_t>(S), 0.0);
  std::vector<double> scale(n, 0.0);
  auto cell = [S](std::size_t i, int s) { return i * static_cast<std::size_t>(S) + static_cast<std::size_t>(s); };

  const int start = model.memory.start_id();
  for (int t = 0; t < kt; ++t)
    alpha[cell(0, t * km + start)] =
        model.initial_tag.p(0, static_cast<std::size_t>(t)) *
        emit[static_cast<std::size_t>(t)];
  double c0 = 0.0;
  for (int s = 0; s < S; ++s) c0 += alpha[cell(0, s)];
  if (c0 <= 0.0) throw DecodeError("no admissible tag", 1);
  for (int s = 0; s < S; ++s) alpha[cell(0, s)] /= c0;
  scale[0] = c0;

  for (std::size_t i = 1; i < n; ++i) {
    for (int sp = 0; sp < S; ++sp) {
      const double ap = alpha[cell(i - 1, sp)];
      if (ap == 0.0) continue;
      const std::size_t row = model.transition_row(sp / km, sp % km);
      const double* pt = model.tag_transition.prob_row(row);
      const double* pm = model.memory_transition.prob_row(row);
      for (int t = 0; t < kt; ++t) {
        const double x = ap * pt[t];
        if (x == 0.0) continue;
        for (int m = 0; m < km; ++m) alpha[cell(i, t * km + m)] += x * pm[m];
      }
    }
    double ci = 0.0;
    for (int t = 0; t < kt; ++t) {
      const double lf = emit[i * static_cast<std::size_t>(kt) + static_cast<std::size_t>(t)];
      for (int m = 0; m < km; ++m) {
        const std::size_t c = cell(i, t * km + m);
        alpha[c] *= lf;
        ci += alpha[c];
      }
    }
    if (ci <= 0.0) throw DecodeError("no admissible state", i + 1);
    for (int s = 0; s < S; ++s) alpha[cell(i, s)] /= ci;
    scale[i] = ci;
  }

  std::vector<double> beta(n * static_cast<std::size_t>(S), 0.0);
  for (int s = 0; s < S; ++s) beta[cell(n - 1, s)] = 1.0;
  for (std::size_t i = n - 1; i >= 1; --i) {
    for (int sp = 0; sp < S; ++sp) {
      const std::size_t row = model.transition_row(sp / km, sp % km);
      const double* pt = model.tag_transition.prob_row(row);
      const double* pm = model.memory_transition.prob_row(row);
      double acc = 0.0;
      for (int t = 0; t < kt; ++t) {
        const double lf = emit[i * static_cast<std::size_t>(kt) + static_cast<std::size_t>(t)];
        if (pt[t] == 0.0 || lf == 0.0) continue;
        double inner = 0.0;
        for (int m = 0; m < km; ++m) inner += pm[m] * beta[cell(i, t * km + m)];
        acc += pt[t] * lf * inner;
      }
      beta[cell(i - 1, sp)] = acc / scale[i];
    }
  }

  Posterior post;
  post.tag_marginals.assign(n, std::vector<double>(static_cast<std::size_t>(kt), 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (int t = 0; t < kt; ++t) {
      double g = 0.0;
      for (int m = 0; m < km; ++m) g += alpha[cell(i, t * km + m)] * beta[cell(i, t * km + m)];
      post.tag_marginals[i][static_cast<std::size_t>(t)] = g;
      total += g;
    }
    // Scaled alpha*beta sums to 1 up to rounding; renormalize anyway.
    if (total > 0.0)
      for (int t = 0; t < kt; ++t) post.tag_marginals[i][static_cast<std::size_t>(t)] /= total;
  }
  post.log_likelihood = 0.0;
  for (std::size_t i = 0; i < n; ++i) post.log_likelihood += std::log(scale[i]);
  return post;
}

// Per-position argmax; ties go to the smallest tag id.
inline std::vector<int> posterior_decode(const Posterior& post) {
  std::vector<int> tags;
  tags.reserve(post.tag_marginals.size());
  for (const auto& row : post.tag_marginals) {
    int best = 0;
    for (std::size_t t = 1; t < row.size(); ++t)
      if (row[t] > row[static_cast<std::size_t>(best)]) best = static_cast<int>(t);
    tags.push_back(best);
  }
  return tags;
}

// Joint log probability of a given tag sequence with the memory chain forced
// through the projection, exactly as in training. Zero-probability factors
// produce -inf.
inline double sequence_log_prob(const LegoModel& model, const std::vector<int>& tags,
                                const std::vector<FeatureVector>& feats) {
  if (tags.size() != feats.size())
    throw ArgumentError("tag/feature sequence length mismatch");
  if (tags.empty()) throw ArgumentError("cannot score an empty sentence");
  double score = model.initial_tag.lp(0, static_cast<std::size_t>(tags[0])) +
                 feature_log_likelihood(model, feats[0], tags[0]);
  int prev_tag = tags[0];
  int prev_mem = model.memory.start_id();
  for (std::size_t i = 1; i < tags.size(); ++i) {
    const int mem = model.memory.projection[static_cast<std::size_t>(prev_tag)];
    const std::size_t row = model.transition_row(prev_tag, prev_mem);
    score = detail::step_score(
        score, model.tag_transition.lp(row, static_cast<std::size_t>(tags[i])),
        model.memory_transition.lp(row, static_cast<std::size_t>(mem)),
        feature_log_likelihood(model, feats[i], tags[i]));
    prev_tag = tags[i];
    prev_mem = mem;
  }
  return score;
}

}  // namespace legotag
