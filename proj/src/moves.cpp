#include "itervote/moves.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace itervote {

std::string MoveRestriction::name() const {
  switch (kind) {
    case Kind::BestResponse: return "best";
    case Kind::KPragmatist: return "pragmatist" + std::to_string(k);
    case Kind::M1: return "m1";
    case Kind::M2: return "m2";
  }
  return "?";
}

void MoveRestriction::check_candidates(std::size_t m) const {
  if (kind == Kind::KPragmatist && (k < 1 || k > m)) {
    throw InvalidInput("pragmatist k must lie in [1, " + std::to_string(m) + "], got " + std::to_string(k));
  }
  if (kind == Kind::BestResponse && m > enumeration_cap) {
    throw CapabilityError("best response enumerates m! ballots; m=" + std::to_string(m) +
                          " exceeds the enumeration cap of " + std::to_string(enumeration_cap));
  }
}

const std::vector<std::string>& move_names() {
  static const std::vector<std::string> names = {"best", "pragmatist2", "pragmatist3", "m1", "m2"};
  return names;
}

MoveRestriction parse_move(std::string_view name) {
  if (name == "best") return MoveRestriction::best_response();
  if (name == "m1") return MoveRestriction::m1();
  if (name == "m2") return MoveRestriction::m2();
  constexpr std::string_view prefix = "pragmatist";
  if (name.starts_with(prefix) && name.size() > prefix.size()) {
    std::size_t k = 0;
    const char* first = name.data() + prefix.size();
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc() && ptr == last && k >= 1) return MoveRestriction::pragmatist(k);
  }
  throw InvalidInput("unknown move '" + std::string(name) +
                     "' (expected one of: best, pragmatist<k> such as pragmatist2 or pragmatist3, m1, m2)");
}

MoveContext::MoveContext(std::shared_ptr<const SwapEvaluator> election, std::size_t agent, Ballot truthful)
    : election_(std::move(election)), agent_(agent), truthful_(std::move(truthful)) {
  if (agent_ >= election_->profile().voters()) throw InvalidInput("move context: agent out of range");
  if (truthful_.size() != election_->profile().candidates()) {
    throw InvalidInput("move context: truthful ballot has wrong size");
  }
}

MoveContext::MoveContext(const Profile& current, std::size_t agent, Ballot truthful, const Rule& rule,
                         const TieBreakOrder& tb)
    : MoveContext(std::make_shared<const SwapEvaluator>(rule, current, tb), agent, std::move(truthful)) {}

namespace {

// Returns `ballot` if reporting it elects someone the agent truly prefers to the current winner.
std::optional<Ballot> if_improving(const MoveContext& ctx, Ballot ballot) {
  if (ballot == ctx.current()) return std::nullopt;
  const Candidate w = ctx.current_winner();
  if (ctx.truly_prefers(ctx.winner_with(ballot), w)) return ballot;
  return std::nullopt;
}

}  // namespace

std::optional<Ballot> m1_move(const MoveContext& ctx, bool require_improvement) {
  const Ballot& truth = ctx.truthful();
  if (truth.position_of(ctx.current_winner()) <= 1) return std::nullopt;
  Ballot lifted = ctx.current().lifted(truth.at(1));
  if (require_improvement) return if_improving(ctx, std::move(lifted));
  if (lifted == ctx.current()) return std::nullopt;
  return lifted;
}

std::optional<Ballot> m2_move(const MoveContext& ctx) {
  const Ballot& current = ctx.current();
  const Candidate w = ctx.current_winner();
  std::optional<Candidate> pick;
  std::optional<Ballot> pick_ballot;
  for (std::size_t pos = 0; pos < current.position_of(w); ++pos) {
    const Candidate c = current.at(pos);
    Ballot lifted = current.lifted(c);
    if (ctx.winner_with(lifted) != c) continue;
    if (!pick || ctx.truly_prefers(c, *pick)) {
      pick = c;
      pick_ballot = std::move(lifted);
    }
  }
  if (!pick || !ctx.truly_prefers(*pick, w)) return std::nullopt;
  return pick_ballot;
}

std::optional<Ballot> k_pragmatist_move(const MoveContext& ctx, std::size_t k) {
  const auto& ranking = ctx.election().ranking();
  if (k < 1 || k > ranking.size()) {
    throw InvalidInput("pragmatist k must lie in [1, " + std::to_string(ranking.size()) + "]");
  }
  const Ballot& truth = ctx.truthful();
  const Candidate favourite = *std::min_element(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(k),
                                                [&](Candidate a, Candidate b) { return truth.prefers(a, b); });
  if (ctx.current().top() == favourite) return std::nullopt;
  return if_improving(ctx, ctx.current().lifted(favourite));
}

std::optional<Ballot> best_response_move(const MoveContext& ctx, std::size_t enumeration_cap) {
  const Ballot& truth = ctx.truthful();
  const std::size_t m = truth.size();
  if (m > enumeration_cap) {
    throw CapabilityError("best response enumerates m! ballots; m=" + std::to_string(m) +
                          " exceeds the enumeration cap of " + std::to_string(enumeration_cap));
  }
  // Enumerate ballots as permutations of truthful positions, truthful ballot first.
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Candidate> ranking(m);
  std::optional<Ballot> first_optimal;
  std::size_t best_rank = truth.position_of(ctx.current_winner());
  std::optional<Candidate> best;
  do {
    for (std::size_t j = 0; j < m; ++j) ranking[j] = truth.at(perm[j]);
    Ballot candidate(ranking);
    const Candidate winner = ctx.winner_with(candidate);
    if (truth.position_of(winner) < best_rank) {
      best_rank = truth.position_of(winner);
      best = winner;
      first_optimal = std::move(candidate);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!best) return std::nullopt;
  Ballot canonical = truth.lifted(*best);
  if (ctx.winner_with(canonical) == *best) return canonical;
  return first_optimal;
}

std::optional<Ballot> apply_restriction(const MoveRestriction& restriction, const MoveContext& ctx) {
  switch (restriction.kind) {
    case MoveRestriction::Kind::BestResponse: return best_response_move(ctx, restriction.enumeration_cap);
    case MoveRestriction::Kind::KPragmatist: return k_pragmatist_move(ctx, restriction.k);
    case MoveRestriction::Kind::M1: return m1_move(ctx, restriction.m1_requires_improvement);
    case MoveRestriction::Kind::M2: return m2_move(ctx);
  }
  return std::nullopt;
}

}  // namespace itervote
