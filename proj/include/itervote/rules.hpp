#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "itervote/preferences.hpp"

namespace itervote {

/// A resolute voting rule: a positional scoring rule, Copeland, Maximin or STV.
class Rule {
 public:
  enum class Kind { Psr, Copeland, Maximin, Stv };

  /// Scoring vector must be nonincreasing, nonnegative and have s_1 > s_m.
  static Rule psr(std::vector<int> scoring_vector, std::string name = "psr");
  static Rule copeland();
  static Rule maximin();
  static Rule stv();

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<int>& scoring_vector() const { return vector_; }
  bool is_score_based() const { return kind_ != Kind::Stv; }

  /// Throws InvalidInput if the rule cannot be applied to a profile over m candidates.
  void check_candidates(std::size_t m) const;

 private:
  Rule(Kind kind, std::string name, std::vector<int> v = {})
      : kind_(kind), name_(std::move(name)), vector_(std::move(v)) {}

  Kind kind_;
  std::string name_;
  std::vector<int> vector_;
};

/// Rule names accepted on the command line, in display order.
const std::vector<std::string>& rule_names();

/// plurality, veto, approval2, approval3 or borda over m candidates.
Rule named_psr(std::string_view name, std::size_t m);

/// Any name from rule_names(); PSRs are instantiated for m candidates.
Rule parse_rule(std::string_view name, std::size_t m);

struct ElectionResult {
  Candidate winner = 0;
  /// Rule score per candidate. For STV: 0 for the first eliminated candidate, rising with
  /// survival, m-1 for the winner.
  std::vector<long long> scores;
  /// The tie-break order decided the outcome.
  bool tie_broken = false;
};

std::vector<long long> psr_scores(const Rule& rule, const Profile& profile);
std::vector<long long> copeland_scores(const Profile& profile);
std::vector<long long> maximin_scores(const Profile& profile);
std::vector<long long> copeland_scores(const MajorityMatrix& matrix);
std::vector<long long> maximin_scores(const MajorityMatrix& matrix);

/// Scores for any score-based rule. Throws for STV.
std::vector<long long> rule_scores(const Rule& rule, const Profile& profile);

ElectionResult stv_winner(const Profile& profile, const TieBreakOrder& tb);

/// Highest score wins; ties go to the candidate earliest in tb.
ElectionResult winner_from_scores(std::vector<long long> scores, const TieBreakOrder& tb);

ElectionResult winner(const Rule& rule, const Profile& profile, const TieBreakOrder& tb);

/// Every candidate ordered by outcome: score-based rules by (score, tb priority), STV by
/// reverse elimination order. Element 0 is the winner.
std::vector<Candidate> outcome_ranking(const Rule& rule, const Profile& profile, const TieBreakOrder& tb);

/// Answers "who wins if agent i casts ballot b instead" without re-tallying the whole
/// profile for score-based rules.
class SwapEvaluator {
 public:
  SwapEvaluator(Rule rule, Profile profile, TieBreakOrder tb);

  const Rule& rule() const { return rule_; }
  const Profile& profile() const { return profile_; }
  const TieBreakOrder& tie_break() const { return tb_; }
  const ElectionResult& current() const { return current_; }
  /// outcome_ranking() of the unmodified profile.
  const std::vector<Candidate>& ranking() const { return ranking_; }

  Candidate winner_with(std::size_t agent, const Ballot& replacement) const;

 private:
  Rule rule_;
  Profile profile_;
  TieBreakOrder tb_;
  ElectionResult current_;
  std::vector<Candidate> ranking_;
  std::vector<long long> psr_base_;
  std::optional<MajorityMatrix> matrix_;
};

}  // namespace itervote
