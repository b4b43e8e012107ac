#include "itervote/rules.hpp"

#include <algorithm>
#include <numeric>

namespace itervote {

Rule Rule::psr(std::vector<int> v, std::string name) {
  if (v.size() < 2) throw InvalidInput("scoring vector needs at least 2 entries");
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] < 0) throw InvalidInput("scoring vector entries must be nonnegative");
    if (j > 0 && v[j] > v[j - 1]) throw InvalidInput("scoring vector must be nonincreasing");
  }
  if (v.front() <= v.back()) throw InvalidInput("scoring vector needs s_1 > s_m");
  return Rule(Kind::Psr, std::move(name), std::move(v));
}

Rule Rule::copeland() { return Rule(Kind::Copeland, "copeland"); }
Rule Rule::maximin() { return Rule(Kind::Maximin, "maximin"); }
Rule Rule::stv() { return Rule(Kind::Stv, "stv"); }

void Rule::check_candidates(std::size_t m) const {
  if (kind_ == Kind::Psr && vector_.size() != m) {
    throw InvalidInput("rule " + name_ + " has a scoring vector of length " + std::to_string(vector_.size()) +
                       " but the profile has " + std::to_string(m) + " candidates");
  }
}

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = {"plurality", "veto",     "approval2", "approval3",
                                                 "borda",     "copeland", "maximin",   "stv"};
  return names;
}

namespace {

std::string joined_rule_names() {
  std::string out;
  for (const auto& n : rule_names()) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

Rule k_approval(std::size_t k, std::size_t m, std::string name) {
  if (m <= k) {
    throw InvalidInput(name + " needs more than " + std::to_string(k) + " candidates, got " + std::to_string(m));
  }
  std::vector<int> v(m, 0);
  std::fill_n(v.begin(), k, 1);
  return Rule::psr(std::move(v), std::move(name));
}

}  // namespace

Rule named_psr(std::string_view name, std::size_t m) {
  if (m < 2) throw InvalidInput("scoring rules need at least 2 candidates");
  if (name == "plurality") return k_approval(1, m, "plurality");
  if (name == "approval2") return k_approval(2, m, "approval2");
  if (name == "approval3") return k_approval(3, m, "approval3");
  if (name == "veto") {
    std::vector<int> v(m, 1);
    v.back() = 0;
    return Rule::psr(std::move(v), "veto");
  }
  if (name == "borda") {
    std::vector<int> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = static_cast<int>(m - 1 - j);
    return Rule::psr(std::move(v), "borda");
  }
  throw InvalidInput("unknown scoring rule '" + std::string(name) +
                     "' (expected plurality, veto, approval2, approval3, borda)");
}

Rule parse_rule(std::string_view name, std::size_t m) {
  if (name == "copeland") return Rule::copeland();
  if (name == "maximin") return Rule::maximin();
  if (name == "stv") return Rule::stv();
  if (name == "plurality" || name == "veto" || name == "approval2" || name == "approval3" || name == "borda") {
    return named_psr(name, m);
  }
  throw InvalidInput("unknown rule '" + std::string(name) + "' (expected one of: " + joined_rule_names() + ")");
}

std::vector<long long> psr_scores(const Rule& rule, const Profile& profile) {
  rule.check_candidates(profile.candidates());
  const auto& s = rule.scoring_vector();
  std::vector<long long> scores(profile.candidates(), 0);
  for (const Ballot& b : profile.ballots()) {
    for (std::size_t j = 0; j < b.size(); ++j) scores[static_cast<std::size_t>(b.at(j))] += s[j];
  }
  return scores;
}

std::vector<long long> copeland_scores(const MajorityMatrix& mm) {
  const auto m = static_cast<Candidate>(mm.candidates());
  std::vector<long long> scores(mm.candidates(), 0);
  for (Candidate c = 0; c < m; ++c) {
    for (Candidate a = 0; a < m; ++a) {
      if (a == c) continue;
      if (mm.beats(c, a)) ++scores[static_cast<std::size_t>(c)];
      else if (mm.beats(a, c)) --scores[static_cast<std::size_t>(c)];
    }
  }
  return scores;
}

std::vector<long long> maximin_scores(const MajorityMatrix& mm) {
  const auto m = static_cast<Candidate>(mm.candidates());
  std::vector<long long> scores(mm.candidates(), 0);
  for (Candidate c = 0; c < m; ++c) {
    long long worst = static_cast<long long>(mm.voters());
    for (Candidate a = 0; a < m; ++a) {
      if (a != c) worst = std::min<long long>(worst, mm.support(c, a));
    }
    scores[static_cast<std::size_t>(c)] = worst;
  }
  return scores;
}

std::vector<long long> copeland_scores(const Profile& profile) { return copeland_scores(majority_matrix(profile)); }
std::vector<long long> maximin_scores(const Profile& profile) { return maximin_scores(majority_matrix(profile)); }

std::vector<long long> rule_scores(const Rule& rule, const Profile& profile) {
  switch (rule.kind()) {
    case Rule::Kind::Psr: return psr_scores(rule, profile);
    case Rule::Kind::Copeland: return copeland_scores(profile);
    case Rule::Kind::Maximin: return maximin_scores(profile);
    case Rule::Kind::Stv: break;
  }
  throw InvalidInput("stv has no additive score; use stv_winner");
}

ElectionResult winner_from_scores(std::vector<long long> scores, const TieBreakOrder& tb) {
  if (scores.size() != tb.size()) throw InvalidInput("tie-break order size does not match candidate count");
  ElectionResult r;
  const long long best = *std::max_element(scores.begin(), scores.end());
  std::size_t at_best = 0;
  // Walk candidates in priority order so the first maximal one wins.
  bool found = false;
  for (Candidate c : tb.priority()) {
    if (scores[static_cast<std::size_t>(c)] == best) {
      ++at_best;
      if (!found) {
        r.winner = c;
        found = true;
      }
    }
  }
  r.tie_broken = at_best > 1;
  r.scores = std::move(scores);
  return r;
}

// Eliminate the candidate with fewest first places until someone holds a strict majority.
// Elimination ties remove the tied candidate latest in tb.
ElectionResult stv_winner(const Profile& profile, const TieBreakOrder& tb) {
  const std::size_t m = profile.candidates();
  const std::size_t n = profile.voters();
  if (tb.size() != m) throw InvalidInput("tie-break order size does not match candidate count");

  std::vector<bool> alive(m, true);
  std::vector<Candidate> eliminated;
  std::vector<long long> tally(m, 0);
  std::size_t survivors = m;
  bool tie_broken = false;
  std::optional<Candidate> winner;

  while (!winner) {
    std::fill(tally.begin(), tally.end(), 0);
    for (const Ballot& b : profile.ballots()) {
      for (Candidate c : b.ranking()) {
        if (alive[static_cast<std::size_t>(c)]) {
          ++tally[static_cast<std::size_t>(c)];
          break;
        }
      }
    }
    for (std::size_t c = 0; c < m; ++c) {
      if (alive[c] && 2 * static_cast<std::size_t>(tally[c]) > n) winner = static_cast<Candidate>(c);
    }
    if (winner) break;
    if (survivors == 1) {
      winner = static_cast<Candidate>(std::find(alive.begin(), alive.end(), true) - alive.begin());
      break;
    }

    long long fewest = static_cast<long long>(n) + 1;
    for (std::size_t c = 0; c < m; ++c) {
      if (alive[c]) fewest = std::min(fewest, tally[c]);
    }
    std::optional<Candidate> loser;
    std::size_t tied = 0;
    for (Candidate c : tb.priority()) {
      if (alive[static_cast<std::size_t>(c)] && tally[static_cast<std::size_t>(c)] == fewest) {
        loser = c;
        ++tied;
      }
    }
    tie_broken = tie_broken || tied > 1;
    alive[static_cast<std::size_t>(*loser)] = false;
    eliminated.push_back(*loser);
    --survivors;
  }

  // Outcome order: winner, remaining survivors by final tally, then eliminated in reverse.
  std::vector<Candidate> order{*winner};
  std::vector<Candidate> rest;
  for (Candidate c : tb.priority()) {
    if (alive[static_cast<std::size_t>(c)] && c != *winner) rest.push_back(c);
  }
  std::stable_sort(rest.begin(), rest.end(), [&](Candidate a, Candidate b) {
    return tally[static_cast<std::size_t>(a)] > tally[static_cast<std::size_t>(b)];
  });
  order.insert(order.end(), rest.begin(), rest.end());
  order.insert(order.end(), eliminated.rbegin(), eliminated.rend());

  ElectionResult r;
  r.winner = *winner;
  r.tie_broken = tie_broken;
  r.scores.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) r.scores[static_cast<std::size_t>(order[i])] = static_cast<long long>(m - 1 - i);
  return r;
}

ElectionResult winner(const Rule& rule, const Profile& profile, const TieBreakOrder& tb) {
  rule.check_candidates(profile.candidates());
  if (rule.kind() == Rule::Kind::Stv) return stv_winner(profile, tb);
  return winner_from_scores(rule_scores(rule, profile), tb);
}

namespace {

std::vector<Candidate> ranking_from_result(const ElectionResult& r, const TieBreakOrder& tb) {
  std::vector<Candidate> order(tb.priority().begin(), tb.priority().end());
  std::stable_sort(order.begin(), order.end(), [&](Candidate a, Candidate b) {
    return r.scores[static_cast<std::size_t>(a)] > r.scores[static_cast<std::size_t>(b)];
  });
  return order;
}

}  // namespace

std::vector<Candidate> outcome_ranking(const Rule& rule, const Profile& profile, const TieBreakOrder& tb) {
  return ranking_from_result(winner(rule, profile, tb), tb);
}

SwapEvaluator::SwapEvaluator(Rule rule, Profile profile, TieBreakOrder tb)
    : rule_(std::move(rule)), profile_(std::move(profile)), tb_(std::move(tb)) {
  rule_.check_candidates(profile_.candidates());
  if (tb_.size() != profile_.candidates()) throw InvalidInput("tie-break order size does not match candidate count");
  switch (rule_.kind()) {
    case Rule::Kind::Psr:
      psr_base_ = psr_scores(rule_, profile_);
      current_ = winner_from_scores(psr_base_, tb_);
      break;
    case Rule::Kind::Copeland:
      matrix_ = majority_matrix(profile_);
      current_ = winner_from_scores(copeland_scores(*matrix_), tb_);
      break;
    case Rule::Kind::Maximin:
      matrix_ = majority_matrix(profile_);
      current_ = winner_from_scores(maximin_scores(*matrix_), tb_);
      break;
    case Rule::Kind::Stv:
      current_ = stv_winner(profile_, tb_);
      break;
  }
  ranking_ = ranking_from_result(current_, tb_);
}

Candidate SwapEvaluator::winner_with(std::size_t agent, const Ballot& replacement) const {
  const Ballot& old = profile_.ballot(agent);
  if (old == replacement) return current_.winner;
  switch (rule_.kind()) {
    case Rule::Kind::Psr: {
      const auto& s = rule_.scoring_vector();
      std::vector<long long> scores = psr_base_;
      for (std::size_t j = 0; j < s.size(); ++j) {
        scores[static_cast<std::size_t>(old.at(j))] -= s[j];
        scores[static_cast<std::size_t>(replacement.at(j))] += s[j];
      }
      return winner_from_scores(std::move(scores), tb_).winner;
    }
    case Rule::Kind::Copeland:
    case Rule::Kind::Maximin: {
      MajorityMatrix mm = *matrix_;
      mm.add(old, -1);
      mm.add(replacement, +1);
      auto scores = rule_.kind() == Rule::Kind::Copeland ? copeland_scores(mm) : maximin_scores(mm);
      return winner_from_scores(std::move(scores), tb_).winner;
    }
    case Rule::Kind::Stv:
      return stv_winner(profile_.with_ballot(agent, replacement), tb_).winner;
  }
  return current_.winner;
}

}  // namespace itervote
