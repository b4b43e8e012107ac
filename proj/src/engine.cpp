#include "itervote/engine.hpp"

#include <memory>
#include <stdexcept>

namespace itervote {

IterationState::IterationState(Profile truthful_profile, Rule r, MoveRestriction mr, TieBreakOrder order)
    : truthful(std::move(truthful_profile)),
      current(truthful),
      dissatisfaction(truthful.voters(), 0),
      rule(std::move(r)),
      restriction(mr),
      tb(std::move(order)) {
  rule.check_candidates(truthful.candidates());
  restriction.check_candidates(truthful.candidates());
  if (tb.size() != truthful.candidates()) throw InvalidInput("tie-break order size does not match candidate count");
}

std::vector<AvailableMove> available_moves(const IterationState& state) {
  auto election = std::make_shared<const SwapEvaluator>(state.rule, state.current, state.tb);
  std::vector<AvailableMove> moves;
  for (std::size_t i = 0; i < state.current.voters(); ++i) {
    MoveContext ctx(election, i, state.truthful.ballot(i));
    if (auto ballot = apply_restriction(state.restriction, ctx)) moves.push_back({i, std::move(*ballot)});
  }
  return moves;
}

std::vector<std::size_t> eligible_agents(const IterationState& state) {
  std::vector<std::size_t> agents;
  for (const auto& mv : available_moves(state)) agents.push_back(mv.agent);
  return agents;
}

std::size_t select_mover(std::span<const std::size_t> eligible, std::span<const std::size_t> dissatisfaction) {
  if (eligible.empty()) throw std::logic_error("select_mover: no eligible agents");
  std::size_t mover = eligible.front();
  for (std::size_t agent : eligible) {
    if (dissatisfaction[agent] > dissatisfaction[mover] ||
        (dissatisfaction[agent] == dissatisfaction[mover] && agent < mover)) {
      mover = agent;
    }
  }
  return mover;
}

bool advance(IterationState& state) {
  auto moves = available_moves(state);
  if (moves.empty()) return false;

  std::vector<std::size_t> eligible;
  eligible.reserve(moves.size());
  for (const auto& mv : moves) eligible.push_back(mv.agent);
  const std::size_t mover = select_mover(eligible, state.dissatisfaction);

  const Candidate winner_before = winner(state.rule, state.current, state.tb).winner;
  for (auto& mv : moves) {
    if (mv.agent != mover) {
      ++state.dissatisfaction[mv.agent];
      continue;
    }
    MoveRecord record;
    record.step = state.step;
    record.agent = mover;
    record.before = state.current.ballot(mover);
    record.after = mv.ballot;
    state.current = state.current.with_ballot(mover, std::move(mv.ballot));
    record.winner_before = winner_before;
    record.winner_after = winner(state.rule, state.current, state.tb).winner;
    state.trace.push_back(std::move(record));
  }
  state.dissatisfaction[mover] = 0;
  ++state.step;
  return true;
}

std::optional<IterationState> step(const IterationState& state) {
  IterationState next = state;
  if (!advance(next)) return std::nullopt;
  return next;
}

std::size_t default_step_cap(const Profile& profile) { return 10 * profile.voters() * profile.candidates(); }

IterationOutcome iterate(const IterationState& start, std::size_t step_cap) {
  if (step_cap < 1) throw InvalidInput("step cap must be at least 1");
  IterationState state = start;
  auto status = IterationOutcome::Status::Converged;
  while (true) {
    if (state.step >= step_cap) {
      // Still report convergence when the cap lands exactly on a stable profile.
      if (!available_moves(state).empty()) status = IterationOutcome::Status::StepCapReached;
      break;
    }
    if (!advance(state)) break;
  }
  IterationOutcome out{status, winner(state.rule, state.current, state.tb).winner, state.step,
                       std::move(state.current), std::move(state.trace)};
  return out;
}

IterationOutcome iterate(const Profile& profile, const Rule& rule, const MoveRestriction& restriction,
                         const TieBreakOrder& tb, std::size_t step_cap) {
  if (step_cap == 0) step_cap = default_step_cap(profile);
  return iterate(IterationState(profile, rule, restriction, tb), step_cap);
}

std::string format_move_record(const MoveRecord& r) {
  return std::to_string(r.step) + '\t' + std::to_string(r.agent) + '\t' + format_ballot(r.before) + '\t' +
         format_ballot(r.after) + '\t' + std::to_string(r.winner_before) + '\t' + std::to_string(r.winner_after);
}

std::string format_trace(const std::vector<MoveRecord>& trace) {
  std::string out;
  for (const auto& r : trace) {
    out += format_move_record(r);
    out += '\n';
  }
  return out;
}

std::string format_outcome_summary(const IterationOutcome& outcome) {
  return std::string(outcome.converged() ? "converged" : "step-cap-reached") + " steps=" +
         std::to_string(outcome.steps) + " winner=" + std::to_string(outcome.winner);
}

namespace {

nlohmann::json ballot_json(const Ballot& b) { return std::vector<Candidate>(b.ranking().begin(), b.ranking().end()); }

}  // namespace

nlohmann::json to_json(const MoveRecord& r) {
  return {{"step", r.step},
          {"agent", r.agent},
          {"before", ballot_json(r.before)},
          {"after", ballot_json(r.after)},
          {"winner_before", r.winner_before},
          {"winner_after", r.winner_after}};
}

nlohmann::json to_json(const IterationOutcome& outcome) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& r : outcome.trace) trace.push_back(to_json(r));
  nlohmann::json ballots = nlohmann::json::array();
  for (const auto& b : outcome.final_profile.ballots()) ballots.push_back(ballot_json(b));
  return {{"status", outcome.converged() ? "converged" : "step_cap_reached"},
          {"winner", outcome.winner},
          {"steps", outcome.steps},
          {"final_profile", {{"m", outcome.final_profile.candidates()}, {"ballots", ballots}}},
          {"trace", trace}};
}

}  // namespace itervote
