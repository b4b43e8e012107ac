#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace itervote {

/// Candidate identifier; a profile over m candidates uses exactly 0..m-1.
using Candidate = int;

/// Raised when a ballot, profile or tie-break order violates its invariants.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by rejection sampling when the attempt cap is exhausted.
class SamplingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Profile text could not be parsed. Carries the offending 1-based line.
class ProfileParseError : public std::runtime_error {
 public:
  ProfileParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A strict linear order over candidates, most preferred first.
class Ballot {
 public:
  Ballot() = default;
  explicit Ballot(std::vector<Candidate> ranking);

  std::size_t size() const { return ranking_.size(); }
  Candidate top() const { return ranking_.front(); }
  Candidate at(std::size_t position) const { return ranking_[position]; }
  std::size_t position_of(Candidate c) const { return position_[static_cast<std::size_t>(c)]; }
  std::span<const Candidate> ranking() const { return ranking_; }

  /// True when a is ranked strictly above b.
  bool prefers(Candidate a, Candidate b) const { return position_of(a) < position_of(b); }

  /// Copy with c moved to the top; everyone else keeps their relative order.
  Ballot lifted(Candidate c) const;

  friend bool operator==(const Ballot& a, const Ballot& b) { return a.ranking_ == b.ranking_; }

 private:
  std::vector<Candidate> ranking_;
  std::vector<std::size_t> position_;
};

/// Fixed candidate priority used to make every rule resolute. Position 0 wins ties.
class TieBreakOrder {
 public:
  explicit TieBreakOrder(std::vector<Candidate> priority);
  static TieBreakOrder identity(std::size_t m);

  std::size_t size() const { return priority_.size(); }
  std::size_t position_of(Candidate c) const { return position_[static_cast<std::size_t>(c)]; }
  bool ranks_above(Candidate a, Candidate b) const { return position_of(a) < position_of(b); }
  std::span<const Candidate> priority() const { return priority_; }

  friend bool operator==(const TieBreakOrder& a, const TieBreakOrder& b) {
    return a.priority_ == b.priority_;
  }

 private:
  std::vector<Candidate> priority_;
  std::vector<std::size_t> position_;
};

/// n ballots over the same m candidates; ballot index is the agent id.
class Profile {
 public:
  Profile(std::size_t m, std::vector<Ballot> ballots);

  std::size_t candidates() const { return m_; }
  std::size_t voters() const { return ballots_.size(); }
  const Ballot& ballot(std::size_t agent) const { return ballots_[agent]; }
  std::span<const Ballot> ballots() const { return ballots_; }

  /// Copy with one agent's ballot replaced.
  Profile with_ballot(std::size_t agent, Ballot ballot) const;

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.m_ == b.m_ && a.ballots_ == b.ballots_;
  }

 private:
  std::size_t m_;
  std::vector<Ballot> ballots_;
};

/// Pairwise support counts: support(x, y) voters rank x above y.
class MajorityMatrix {
 public:
  MajorityMatrix(std::size_t m, std::size_t n);

  std::size_t candidates() const { return m_; }
  std::size_t voters() const { return n_; }
  int support(Candidate x, Candidate y) const { return cells_[index(x, y)]; }

  /// x beats y by strict majority.
  bool beats(Candidate x, Candidate y) const { return 2 * support(x, y) > static_cast<int>(n_); }

  void add(const Ballot& b, int weight = 1);

 private:
  std::size_t index(Candidate x, Candidate y) const {
    return static_cast<std::size_t>(x) * m_ + static_cast<std::size_t>(y);
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<int> cells_;
};

MajorityMatrix majority_matrix(const Profile& profile);

/// Candidate beating every other by strict majority, if any.
std::optional<Candidate> condorcet_winner(const Profile& profile);
std::optional<Candidate> condorcet_winner(const MajorityMatrix& matrix);

using Rng = std::mt19937_64;

/// Generator for profile `index` of the sample identified by (seed, m, n).
Rng sample_rng(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t index);

/// Impartial culture: every ballot uniform over the m! linear orders.
Profile generate_profile(std::size_t m, std::size_t n, Rng& rng);

inline constexpr std::size_t kDefaultCondorcetAttempts = 1'000'000;

/// Rejection-samples generate_profile until a Condorcet winner exists.
Profile generate_profile_with_condorcet_winner(std::size_t m, std::size_t n, Rng& rng,
                                               std::size_t max_attempts = kDefaultCondorcetAttempts);

// Text format: "m n" header then n lines of space-separated candidate ids.
// Blank lines and lines starting with '#' are skipped between tokens.
std::string format_ballot(const Ballot& b);
std::string format_profile(const Profile& profile);
Profile parse_profile(const std::string& text);
std::vector<Profile> parse_profiles(std::istream& in);

}  // namespace itervote
