#pragma once

#include <vector>

#include "itervote/preferences.hpp"
#include "oracle.hpp"

namespace fixtures {

using itervote::Ballot;
using itervote::Profile;

inline Profile make_profile(std::size_t m, const std::vector<std::vector<int>>& rows) {
  std::vector<Ballot> ballots;
  for (const auto& r : rows) ballots.emplace_back(r);
  return Profile(m, std::move(ballots));
}

// Worked example: CW is 1, plurality tie between 0 and 1.
inline Profile profile_a() {
  return make_profile(3, {{0, 1, 2}, {0, 1, 2}, {1, 0, 2}, {1, 0, 2}, {2, 1, 0}});
}

// Five identical ballots 0>1>2.
inline Profile profile_b() { return make_profile(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}}); }

// Condorcet cycle 0>1>2>0.
inline Profile profile_c() { return make_profile(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}); }

inline oracle::Rankings rankings(const Profile& p) {
  oracle::Rankings out;
  for (const auto& b : p.ballots()) out.emplace_back(b.ranking().begin(), b.ranking().end());
  return out;
}

inline std::vector<int> as_vector(const Ballot& b) { return {b.ranking().begin(), b.ranking().end()}; }

}  // namespace fixtures
