#pragma once

// Brute-force reference implementations for tests. They work on raw rankings and share no
// code with the library.

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Rankings = std::vector<std::vector<int>>;

inline int position(const std::vector<int>& ballot, int c) {
  for (std::size_t j = 0; j < ballot.size(); ++j) {
    if (ballot[j] == c) return static_cast<int>(j);
  }
  return -1;
}

inline std::vector<long long> positional_tally(const Rankings& ballots, const std::vector<int>& vec) {
  const int m = static_cast<int>(vec.size());
  std::vector<long long> score(m, 0);
  for (int c = 0; c < m; ++c) {
    for (const auto& b : ballots) score[c] += vec[position(b, c)];
  }
  return score;
}

inline int pairwise_count(const Rankings& ballots, int x, int y) {
  int count = 0;
  for (const auto& b : ballots) {
    if (position(b, x) < position(b, y)) ++count;
  }
  return count;
}

inline std::vector<long long> copeland(const Rankings& ballots, int m) {
  const int n = static_cast<int>(ballots.size());
  std::vector<long long> s(m, 0);
  for (int c = 0; c < m; ++c) {
    for (int a = 0; a < m; ++a) {
      if (a == c) continue;
      const int cw = pairwise_count(ballots, c, a);
      if (2 * cw > n) s[c] += 1;
      if (2 * (n - cw) > n) s[c] -= 1;
    }
  }
  return s;
}

inline std::vector<long long> maximin(const Rankings& ballots, int m) {
  std::vector<long long> s(m, 1LL << 40);
  for (int c = 0; c < m; ++c) {
    for (int a = 0; a < m; ++a) {
      if (a != c) s[c] = std::min<long long>(s[c], pairwise_count(ballots, c, a));
    }
  }
  return s;
}

inline std::optional<int> condorcet(const Rankings& ballots, int m) {
  const int n = static_cast<int>(ballots.size());
  std::optional<int> found;
  for (int c = 0; c < m; ++c) {
    bool all = true;
    for (int a = 0; a < m; ++a) {
      if (a != c && !(2 * pairwise_count(ballots, c, a) > n)) all = false;
    }
    if (all) found = c;
  }
  return found;
}

// Highest score; among equals the one listed first in tb.
inline int argmax_tb(const std::vector<long long>& score, const std::vector<int>& tb) {
  int best = tb[0];
  for (int c : tb) {
    if (score[c] > score[best]) best = c;
  }
  return best;
}

// Literal round-by-round STV: each round recount first preferences over the remaining set.
inline int stv(const Rankings& ballots, int m, const std::vector<int>& tb) {
  const int n = static_cast<int>(ballots.size());
  std::set<int> remaining;
  for (int c = 0; c < m; ++c) remaining.insert(c);
  while (true) {
    std::vector<int> firsts(m, 0);
    for (const auto& b : ballots) {
      for (int c : b) {
        if (remaining.count(c)) {
          firsts[c]++;
          break;
        }
      }
    }
    for (int c : remaining) {
      if (2 * firsts[c] > n) return c;
    }
    if (remaining.size() == 1) return *remaining.begin();
    int low = n + 1;
    for (int c : remaining) low = std::min(low, firsts[c]);
    // Lowest-priority tied candidate goes out: scan tb from the back.
    for (auto it = tb.rbegin(); it != tb.rend(); ++it) {
      if (remaining.count(*it) && firsts[*it] == low) {
        remaining.erase(*it);
        break;
      }
    }
  }
}

inline std::vector<int> psr_vector(const std::string& name, int m) {
  std::vector<int> v(m, 0);
  if (name == "plurality") v[0] = 1;
  else if (name == "approval2") v[0] = v[1] = 1;
  else if (name == "approval3") v[0] = v[1] = v[2] = 1;
  else if (name == "veto") {
    std::fill(v.begin(), v.end(), 1);
    v[m - 1] = 0;
  } else if (name == "borda") {
    for (int j = 0; j < m; ++j) v[j] = m - 1 - j;
  }
  return v;
}

inline int winner(const std::string& rule, const Rankings& ballots, int m, const std::vector<int>& tb) {
  if (rule == "stv") return stv(ballots, m, tb);
  if (rule == "copeland") return argmax_tb(copeland(ballots, m), tb);
  if (rule == "maximin") return argmax_tb(maximin(ballots, m), tb);
  return argmax_tb(positional_tally(ballots, psr_vector(rule, m)), tb);
}

// Best outcome (as a candidate) agent i can force by any ballot, judged by `truth`.
inline int best_achievable(const std::string& rule, Rankings ballots, int m, const std::vector<int>& tb, int agent,
                           const std::vector<int>& truth) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  int best = -1;
  do {
    ballots[agent] = perm;
    const int w = winner(rule, ballots, m, tb);
    if (best < 0 || position(truth, w) < position(truth, best)) best = w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle
