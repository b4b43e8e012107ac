#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "itervote/experiments.hpp"

namespace itervote::cli {

namespace {

struct SimulateArgs {
  std::string rule;
  std::string move;
  std::string profile_path;
  std::optional<std::uint64_t> seed;
  std::size_t m = 5;
  std::size_t n = 20;
  bool require_cw = false;
  std::string tb;
  std::size_t cap = 0;
  std::string out_path;
  bool json = false;
  bool m1_ungated = false;
};

struct GenerateArgs {
  std::size_t m = 5;
  std::size_t n = 20;
  std::size_t count = 1;
  std::uint64_t seed = 1;
  bool require_cw = false;
  std::string out_path;
};

struct AnalyzeArgs {
  std::string profile_path;
  std::string tb;
};

struct ExperimentArgs {
  std::string config_path;
  std::string out_path;
  std::string audit_path;
  std::size_t jobs = 1;
};

// A failure that is the user's fault: reported with usage exit status.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string joined(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
  return s;
}

std::string check_rule(const std::string& name) {
  for (const auto& r : rule_names()) {
    if (r == name) return {};
  }
  return "unknown rule '" + name + "'; valid rules: " + joined(rule_names());
}

std::string check_move(const std::string& name) {
  try {
    parse_move(name);
    return {};
  } catch (const InvalidInput&) {
    return "unknown move '" + name + "'; valid moves: " + joined(move_names()) + " (pragmatist<k> for any k >= 1)";
  }
}

TieBreakOrder parse_tb(const std::string& text, std::size_t m) {
  if (text.empty()) return TieBreakOrder::identity(m);
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::vector<Candidate> order;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      order.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("--tb: '" + tok + "' is not a candidate id");
    }
  }
  if (order.size() != m) {
    throw UsageError("--tb: expected a permutation of " + std::to_string(m) + " candidates, got " +
                     std::to_string(order.size()));
  }
  try {
    return TieBreakOrder(std::move(order));
  } catch (const InvalidInput& e) {
    throw UsageError(std::string("--tb: ") + e.what());
  }
}

std::vector<Profile> read_profiles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file '" + path + "'");
  try {
    auto profiles = parse_profiles(in);
    if (profiles.empty()) throw std::runtime_error(path + ": no profile found");
    return profiles;
  } catch (const ProfileParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

// Writes to the file at path, or to `fallback` when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

int run_simulate(const SimulateArgs& a, std::ostream& out) {
  std::vector<Profile> profiles;
  if (!a.profile_path.empty()) {
    profiles = read_profiles(a.profile_path);
  } else {
    if (!a.seed) throw UsageError("simulate needs --profile or --seed");
    Rng rng = sample_rng(*a.seed, a.m, a.n, 0);
    profiles.push_back(a.require_cw ? generate_profile_with_condorcet_winner(a.m, a.n, rng)
                                    : generate_profile(a.m, a.n, rng));
  }

  MoveRestriction restriction = parse_move(a.move);
  restriction.m1_requires_improvement = !a.m1_ungated;

  std::string text;
  nlohmann::json runs = nlohmann::json::array();
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const Profile& p = profiles[i];
    const Rule rule = parse_rule(a.rule, p.candidates());
    const TieBreakOrder tb = parse_tb(a.tb, p.candidates());
    const auto outcome = iterate(p, rule, restriction, tb, a.cap);
    if (a.json) {
      runs.push_back(to_json(outcome));
      continue;
    }
    if (profiles.size() > 1) text += "# profile " + std::to_string(i) + "\n";
    text += format_trace(outcome.trace);
    text += format_outcome_summary(outcome) + "\n";
  }
  if (a.json) text = (runs.size() == 1 ? runs.front() : runs).dump(2) + "\n";
  emit(a.out_path, text, out);
  return kExitOk;
}

int run_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.m < 2) throw UsageError("--m must be at least 2");
  if (a.n < 1) throw UsageError("--n must be at least 1");
  std::string text;
  for (std::size_t i = 0; i < a.count; ++i) {
    Rng rng = sample_rng(a.seed, a.m, a.n, i);
    const Profile p = a.require_cw ? generate_profile_with_condorcet_winner(a.m, a.n, rng)
                                   : generate_profile(a.m, a.n, rng);
    text += format_profile(p);
  }
  emit(a.out_path, text, out);
  return kExitOk;
}

std::string analyze_profile(const Profile& p, const TieBreakOrder& tb) {
  std::ostringstream os;
  const std::size_t m = p.candidates();
  os << "m=" << m << " n=" << p.voters() << "\n";
  os << "majority_matrix:\n";
  const auto mm = majority_matrix(p);
  for (std::size_t x = 0; x < m; ++x) {
    os << ' ';
    for (std::size_t y = 0; y < m; ++y) {
      os << ' ' << std::setw(4);
      if (x == y) os << '-';
      else os << mm.support(static_cast<Candidate>(x), static_cast<Candidate>(y));
    }
    os << "\n";
  }
  for (const auto& name : rule_names()) {
    std::optional<Rule> rule;
    try {
      rule = parse_rule(name, m);
    } catch (const InvalidInput& e) {
      os << name << " n/a (" << e.what() << ")\n";
      continue;
    }
    const auto result = winner(*rule, p, tb);
    os << name << " scores=";
    for (std::size_t c = 0; c < m; ++c) os << (c ? " " : "") << result.scores[c];
    os << " winner=" << result.winner << " tie_broken=" << (result.tie_broken ? "true" : "false") << "\n";
  }
  const auto cw = condorcet_winner(mm);
  os << "condorcet_winner: " << (cw ? std::to_string(*cw) : std::string("none")) << "\n";
  return os.str();
}

int run_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto profiles = read_profiles(a.profile_path);
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (profiles.size() > 1) out << "# profile " << i << "\n";
    out << analyze_profile(profiles[i], parse_tb(a.tb, profiles[i].candidates()));
  }
  return kExitOk;
}

int run_experiment_command(const ExperimentArgs& a, std::ostream& out) {
  std::ifstream in(a.config_path);
  if (!in) throw std::runtime_error("cannot open config file '" + a.config_path + "'");
  ExperimentConfig cfg;
  try {
    cfg = parse_config(in);
  } catch (const InvalidInput& e) {
    throw UsageError(a.config_path + ": " + e.what());
  }
  const auto cells = run_experiment(cfg, a.jobs);
  emit(a.out_path, format_csv(cells), out);
  if (!a.audit_path.empty()) {
    nlohmann::json audit = nlohmann::json::array();
    for (const auto& c : cells) audit.push_back(to_json(c));
    emit(a.audit_path, audit.dump(1) + "\n", out);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterative voting with restricted manipulation moves", "itervote"};
  app.require_subcommand(1);

  const std::string rule_help = "Voting rule: " + joined(rule_names());
  const std::string move_help = "Manipulation move: " + joined(move_names());

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Iterate one or more profiles and print the move trace");
  simulate->add_option("--rule", sim.rule, rule_help)->required()->check(CLI::Validator(check_rule, "RULE"));
  simulate->add_option("--move", sim.move, move_help)->required()->check(CLI::Validator(check_move, "MOVE"));
  auto* profile_opt = simulate->add_option("--profile", sim.profile_path, "Profile file");
  simulate->add_option("--seed", sim.seed, "Generate the profile from this seed instead")->excludes(profile_opt);
  simulate->add_option("--m", sim.m, "Candidates for a generated profile");
  simulate->add_option("--n", sim.n, "Voters for a generated profile");
  simulate->add_flag("--require-cw", sim.require_cw, "Generated profile must have a Condorcet winner");
  simulate->add_option("--tb", sim.tb, "Tie-break priority, e.g. 0,1,2 (default identity)");
  simulate->add_option("--cap", sim.cap, "Step cap (default 10*n*m)");
  simulate->add_option("--out", sim.out_path, "Write output here instead of stdout");
  simulate->add_flag("--json", sim.json, "Emit the outcome as JSON");
  simulate->add_flag("--m1-ungated", sim.m1_ungated, "Let M1 fire even when it does not change the winner");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write impartial-culture profiles");
  generate->add_option("--m", gen.m, "Candidates")->required();
  generate->add_option("--n", gen.n, "Voters")->required();
  generate->add_option("--count", gen.count, "Number of profiles");
  generate->add_option("--seed", gen.seed, "Seed");
  generate->add_flag("--require-cw", gen.require_cw, "Keep only profiles with a Condorcet winner");
  generate->add_option("--out", gen.out_path, "Output file (default stdout)");

  AnalyzeArgs ana;
  auto* analyze = app.add_subcommand("analyze", "Majority matrix, per-rule scores and winners");
  analyze->add_option("--profile", ana.profile_path, "Profile file")->required();
  analyze->add_option("--tb", ana.tb, "Tie-break priority (default identity)");

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Run a Condorcet-efficiency grid and write CSV");
  experiment->add_option("--config", exp.config_path, "key=value config file")->required();
  experiment->add_option("--out", exp.out_path, "CSV output (default stdout)");
  experiment->add_option("--audit", exp.audit_path, "Per-profile JSON audit output");
  experiment->add_option("--jobs", exp.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim, out);
    if (generate->parsed()) return run_generate(gen, out);
    if (analyze->parsed()) return run_analyze(ana, out);
    if (experiment->parsed()) return run_experiment_command(exp, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace itervote::cli
