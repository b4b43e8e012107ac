#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "itervote/moves.hpp"
#include "itervote/preferences.hpp"
#include "itervote/rules.hpp"

namespace itervote {

struct MoveRecord {
  std::size_t step = 0;
  std::size_t agent = 0;
  Ballot before;
  Ballot after;
  Candidate winner_before = 0;
  Candidate winner_after = 0;
};

/// One run of iterative voting. `current` differs from `truthful` only in the ballots of
/// agents that appear in `trace`.
struct IterationState {
  IterationState(Profile truthful, Rule rule, MoveRestriction restriction, TieBreakOrder tb);

  Profile truthful;
  Profile current;
  std::size_t step = 0;
  /// Turns an agent wanted to move but was passed over, since it last moved.
  std::vector<std::size_t> dissatisfaction;
  Rule rule;
  MoveRestriction restriction;
  TieBreakOrder tb;
  std::vector<MoveRecord> trace;
};

struct IterationOutcome {
  enum class Status { Converged, StepCapReached };

  Status status = Status::Converged;
  Candidate winner = 0;
  std::size_t steps = 0;
  Profile final_profile;
  std::vector<MoveRecord> trace;

  bool converged() const { return status == Status::Converged; }
};

/// An agent together with the ballot its restriction lets it report next.
struct AvailableMove {
  std::size_t agent;
  Ballot ballot;
};

/// Every agent holding an improving move in the current profile, in agent order.
std::vector<AvailableMove> available_moves(const IterationState& state);
std::vector<std::size_t> eligible_agents(const IterationState& state);

/// Highest dissatisfaction wins the turn; ties go to the lowest agent index.
/// Throws std::logic_error if `eligible` is empty.
std::size_t select_mover(std::span<const std::size_t> eligible, std::span<const std::size_t> dissatisfaction);

/// Performs one manipulation. Returns false (state untouched) when nobody can move.
bool advance(IterationState& state);

/// Value-returning form of advance(); nullopt signals convergence.
std::optional<IterationState> step(const IterationState& state);

/// 10 * n * m.
std::size_t default_step_cap(const Profile& profile);

IterationOutcome iterate(const IterationState& start, std::size_t step_cap);
IterationOutcome iterate(const Profile& profile, const Rule& rule, const MoveRestriction& restriction,
                         const TieBreakOrder& tb, std::size_t step_cap = 0);

/// Tab-separated: step, agent, ballot before, ballot after, winner before, winner after.
std::string format_move_record(const MoveRecord& record);
std::string format_trace(const std::vector<MoveRecord>& trace);
/// "converged steps=K winner=W" or "step-cap-reached steps=K winner=W".
std::string format_outcome_summary(const IterationOutcome& outcome);

nlohmann::json to_json(const MoveRecord& record);
nlohmann::json to_json(const IterationOutcome& outcome);

}  // namespace itervote
