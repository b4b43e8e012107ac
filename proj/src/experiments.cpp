#include "itervote/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace itervote {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InvalidInput("config: " + key + " expects a nonnegative integer, got '" + text + "'");
  return v;
}

std::vector<std::size_t> parse_n_values(const std::string& value) {
  std::vector<std::size_t> ns;
  for (const auto& item : split_list(value)) {
    if (item.find(':') == std::string::npos) {
      ns.push_back(parse_unsigned("n", item));
      continue;
    }
    std::vector<std::string> parts;
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(trim(part));
    if (parts.size() != 3) throw InvalidInput("config: n range must be first:last:stride, got '" + item + "'");
    const auto first = parse_unsigned("n", parts[0]);
    const auto last = parse_unsigned("n", parts[1]);
    const auto stride = parse_unsigned("n", parts[2]);
    if (stride == 0) throw InvalidInput("config: n range stride must be positive");
    for (auto v = first; v <= last; v += stride) ns.push_back(v);
  }
  return ns;
}

// Runs body(i) for i in [0, count) on up to `jobs` threads; rethrows the first failure.
template <typename Body>
void parallel_for(std::size_t count, std::size_t jobs, Body body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (m < 2) throw InvalidInput("config: m must be at least 2");
  if (sample_size < 1) throw InvalidInput("config: samples must be at least 1");
  if (n_values.empty()) throw InvalidInput("config: n list is empty");
  for (auto n : n_values) {
    if (n < 1) throw InvalidInput("config: every n must be at least 1");
  }
  if (rules.empty()) throw InvalidInput("config: rules list is empty");
  for (const auto& r : rules) parse_rule(r, m);
  for (const auto& mv : restrictions) parse_move(mv).check_candidates(m);
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "m") cfg.m = parse_unsigned(key, value);
    else if (key == "rules") cfg.rules = split_list(value);
    else if (key == "moves") cfg.restrictions = split_list(value);
    else if (key == "n") cfg.n_values = parse_n_values(value);
    else if (key == "samples") cfg.sample_size = parse_unsigned(key, value);
    else if (key == "seed") cfg.seed = parse_unsigned(key, value);
    else if (key == "cap") cfg.step_cap = parse_unsigned(key, value);
    else if (key == "attempts") cfg.max_attempts = parse_unsigned(key, value);
    else throw InvalidInput("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

double CellReport::standard_error() const {
  if (sample_size == 0) return 0.0;
  const double p = condorcet_efficiency;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(sample_size));
}

Profile sample_profile(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t index,
                       std::size_t max_attempts) {
  Rng rng = sample_rng(seed, m, n, index);
  return generate_profile_with_condorcet_winner(m, n, rng, max_attempts);
}

std::vector<Profile> sample_profiles(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t count,
                                     std::size_t jobs, std::size_t max_attempts) {
  std::vector<std::optional<Profile>> slots(count);
  parallel_for(count, jobs, [&](std::size_t i) { slots[i] = sample_profile(seed, m, n, i, max_attempts); });
  std::vector<Profile> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

CellReport evaluate_cell(const std::string& rule_name, const std::optional<std::string>& restriction,
                         const std::vector<Profile>& sample, std::size_t step_cap, std::size_t jobs) {
  if (sample.empty()) throw InvalidInput("evaluate_cell: empty sample");
  const std::size_t m = sample.front().candidates();
  const Rule rule = parse_rule(rule_name, m);
  std::optional<MoveRestriction> move;
  if (restriction) {
    move = parse_move(*restriction);
    move->check_candidates(m);
  }
  const TieBreakOrder tb = TieBreakOrder::identity(m);

  std::vector<ProfileRecord> records(sample.size());
  parallel_for(sample.size(), jobs, [&](std::size_t i) {
    const Profile& p = sample[i];
    const auto cw = condorcet_winner(p);
    if (!cw) throw InvalidInput("evaluate_cell: profile " + std::to_string(i) + " has no Condorcet winner");
    ProfileRecord rec;
    rec.index = i;
    rec.condorcet_winner = *cw;
    if (move) {
      const auto outcome = iterate(p, rule, *move, tb, step_cap);
      rec.winner = outcome.winner;
      rec.steps = outcome.steps;
      rec.converged = outcome.converged();
    } else {
      rec.winner = winner(rule, p, tb).winner;
    }
    records[i] = rec;
  });

  CellReport cell;
  cell.rule = rule_name;
  cell.restriction = restriction.value_or("none");
  cell.n = sample.front().voters();
  cell.m = m;
  cell.sample_size = sample.size();
  std::size_t hits = 0;
  std::size_t total_steps = 0;
  for (const auto& rec : records) {
    if (rec.winner == rec.condorcet_winner) ++hits;
    if (rec.steps > 0) {
      ++cell.profiles_with_iteration;
      total_steps += rec.steps;
    }
    cell.max_steps = std::max(cell.max_steps, rec.steps);
    if (!rec.converged) ++cell.nonconverged;
  }
  cell.condorcet_efficiency = static_cast<double>(hits) / static_cast<double>(sample.size());
  if (cell.profiles_with_iteration > 0) {
    cell.mean_steps = static_cast<double>(total_steps) / static_cast<double>(cell.profiles_with_iteration);
  }
  cell.profiles = std::move(records);
  return cell;
}

CellReport condorcet_efficiency(const std::string& rule, const std::optional<std::string>& restriction,
                                std::size_t m, std::size_t n, std::size_t sample_size, std::uint64_t seed,
                                std::size_t step_cap, std::size_t jobs) {
  if (sample_size < 1) throw InvalidInput("sample size must be at least 1");
  const auto sample = sample_profiles(seed, m, n, sample_size, jobs);
  return evaluate_cell(rule, restriction, sample, step_cap, jobs);
}

std::vector<CellReport> run_experiment(const ExperimentConfig& config, std::size_t jobs) {
  config.validate();
  std::vector<CellReport> cells;
  for (std::size_t n : config.n_values) {
    const auto sample = sample_profiles(config.seed, config.m, n, config.sample_size, jobs, config.max_attempts);
    for (const auto& rule : config.rules) {
      cells.push_back(evaluate_cell(rule, std::nullopt, sample, config.step_cap, jobs));
      for (const auto& mv : config.restrictions) {
        cells.push_back(evaluate_cell(rule, mv, sample, config.step_cap, jobs));
      }
    }
  }
  return cells;
}

std::string csv_header() {
  return "rule,restriction,n,m,sample_size,efficiency,iterated_profiles,mean_steps,max_steps,nonconverged";
}

std::string format_csv_row(const CellReport& c) {
  char efficiency[32];
  char mean[32];
  std::snprintf(efficiency, sizeof efficiency, "%.6f", c.condorcet_efficiency);
  std::snprintf(mean, sizeof mean, "%.4f", c.mean_steps);
  std::ostringstream row;
  row << c.rule << ',' << c.restriction << ',' << c.n << ',' << c.m << ',' << c.sample_size << ',' << efficiency
      << ',' << c.profiles_with_iteration << ',' << mean << ',' << c.max_steps << ',' << c.nonconverged;
  return row.str();
}

std::string format_csv(const std::vector<CellReport>& cells) {
  std::string out = csv_header() + "\n";
  for (const auto& c : cells) out += format_csv_row(c) + "\n";
  return out;
}

nlohmann::json to_json(const CellReport& c) {
  nlohmann::json profiles = nlohmann::json::array();
  for (const auto& p : c.profiles) {
    profiles.push_back({{"index", p.index},
                        {"condorcet_winner", p.condorcet_winner},
                        {"winner", p.winner},
                        {"steps", p.steps},
                        {"converged", p.converged}});
  }
  return {{"rule", c.rule},
          {"restriction", c.restriction},
          {"n", c.n},
          {"m", c.m},
          {"sample_size", c.sample_size},
          {"efficiency", c.condorcet_efficiency},
          {"iterated_profiles", c.profiles_with_iteration},
          {"mean_steps", c.mean_steps},
          {"max_steps", c.max_steps},
          {"nonconverged", c.nonconverged},
          {"profiles", profiles}};
}

}  // namespace itervote
