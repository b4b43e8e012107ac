#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "itervote/engine.hpp"

namespace itervote {

struct ExperimentConfig {
  std::size_t m = 5;
  std::vector<std::size_t> n_values = {20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::size_t sample_size = 2000;
  std::vector<std::string> rules = rule_names();
  std::vector<std::string> restrictions = {"m1", "m2", "pragmatist2", "pragmatist3"};
  std::uint64_t seed = 1;
  /// 0 selects the 10*n*m default per profile.
  std::size_t step_cap = 0;
  std::size_t max_attempts = kDefaultCondorcetAttempts;

  /// Throws InvalidInput on an empty grid or unknown names.
  void validate() const;
};

/// Parses flat key=value text (m, rules, moves, n, samples, seed, cap). Lists are
/// comma-separated; n also accepts first:last:stride. Unset keys keep their defaults.
ExperimentConfig parse_config(std::istream& in);

/// Per-profile result kept for auditing.
struct ProfileRecord {
  std::size_t index = 0;
  Candidate condorcet_winner = 0;
  Candidate winner = 0;
  std::size_t steps = 0;
  bool converged = true;
};

struct CellReport {
  std::string rule;
  /// "none" for the base rule.
  std::string restriction;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t sample_size = 0;
  double condorcet_efficiency = 0.0;
  std::size_t profiles_with_iteration = 0;
  /// Mean steps over the profiles on which at least one move happened.
  double mean_steps = 0.0;
  std::size_t max_steps = 0;
  std::size_t nonconverged = 0;
  std::vector<ProfileRecord> profiles;

  /// Binomial standard error of the efficiency estimate.
  double standard_error() const;
};

/// Profile `index` of the paired sample shared by every cell with this (seed, m, n).
Profile sample_profile(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t index,
                       std::size_t max_attempts = kDefaultCondorcetAttempts);

/// The whole paired sample, generated across `jobs` workers.
std::vector<Profile> sample_profiles(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t count,
                                     std::size_t jobs = 1, std::size_t max_attempts = kDefaultCondorcetAttempts);

/// Evaluates one cell on a given sample. `restriction` empty means the base rule.
CellReport evaluate_cell(const std::string& rule, const std::optional<std::string>& restriction,
                         const std::vector<Profile>& sample, std::size_t step_cap, std::size_t jobs = 1);

CellReport condorcet_efficiency(const std::string& rule, const std::optional<std::string>& restriction,
                                std::size_t m, std::size_t n, std::size_t sample_size, std::uint64_t seed,
                                std::size_t step_cap = 0, std::size_t jobs = 1);

/// Every (n, rule, none + restrictions) cell, each n sharing one profile sample.
std::vector<CellReport> run_experiment(const ExperimentConfig& config, std::size_t jobs = 1);

std::string csv_header();
std::string format_csv_row(const CellReport& cell);
std::string format_csv(const std::vector<CellReport>& cells);

nlohmann::json to_json(const CellReport& cell);

}  // namespace itervote
