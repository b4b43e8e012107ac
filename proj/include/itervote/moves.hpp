#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "itervote/preferences.hpp"
#include "itervote/rules.hpp"

namespace itervote {

/// Raised when best response is asked to enumerate more ballots than allowed.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which manipulations an agent may perform on its reported ballot.
struct MoveRestriction {
  enum class Kind { BestResponse, KPragmatist, M1, M2 };

  Kind kind = Kind::M2;
  /// Only meaningful for KPragmatist.
  std::size_t k = 0;
  /// M1 fires only when it changes the winner to someone the agent truly prefers.
  bool m1_requires_improvement = true;
  /// Largest m for which best response enumerates all m! ballots.
  std::size_t enumeration_cap = 8;

  static MoveRestriction best_response() { return {Kind::BestResponse}; }
  static MoveRestriction pragmatist(std::size_t k) { return {Kind::KPragmatist, k}; }
  static MoveRestriction m1() { return {Kind::M1}; }
  static MoveRestriction m2() { return {Kind::M2}; }

  /// best, pragmatist<k>, m1 or m2.
  std::string name() const;
  void check_candidates(std::size_t m) const;
};

/// Parses best, m1, m2 and pragmatist<k> (k >= 1).
MoveRestriction parse_move(std::string_view name);
/// Move names shown in usage messages.
const std::vector<std::string>& move_names();

/// Snapshot of one agent's situation at step k: current profile, its winner under the
/// rule, and the agent's truthful ballot.
class MoveContext {
 public:
  MoveContext(std::shared_ptr<const SwapEvaluator> election, std::size_t agent, Ballot truthful);
  MoveContext(const Profile& current, std::size_t agent, Ballot truthful, const Rule& rule,
              const TieBreakOrder& tb);

  std::size_t agent() const { return agent_; }
  const Ballot& truthful() const { return truthful_; }
  const Ballot& current() const { return election_->profile().ballot(agent_); }
  const Profile& profile() const { return election_->profile(); }
  const Rule& rule() const { return election_->rule(); }
  const TieBreakOrder& tie_break() const { return election_->tie_break(); }
  Candidate current_winner() const { return election_->current().winner; }
  const SwapEvaluator& election() const { return *election_; }

  /// Winner if this agent reported `ballot` instead.
  Candidate winner_with(const Ballot& ballot) const { return election_->winner_with(agent_, ballot); }
  /// Agent's true preference for a over b.
  bool truly_prefers(Candidate a, Candidate b) const { return truthful_.prefers(a, b); }

 private:
  std::shared_ptr<const SwapEvaluator> election_;
  std::size_t agent_;
  Ballot truthful_;
};

std::optional<Ballot> m1_move(const MoveContext& ctx, bool require_improvement = true);
std::optional<Ballot> m2_move(const MoveContext& ctx);
std::optional<Ballot> k_pragmatist_move(const MoveContext& ctx, std::size_t k);
std::optional<Ballot> best_response_move(const MoveContext& ctx, std::size_t enumeration_cap = 8);

/// Dispatches to the move function selected by the restriction.
std::optional<Ballot> apply_restriction(const MoveRestriction& restriction, const MoveContext& ctx);

}  // namespace itervote
