#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "itervote/experiments.hpp"

using namespace itervote;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("itervote_cli_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("simulate") {
  TempDir dir;
  const auto pa = dir.write("pa.txt", format_profile(fixtures::profile_a()));
  const auto pb = dir.write("pb.txt", format_profile(fixtures::profile_b()));

  auto r = run_cli({"simulate", "--rule", "plurality", "--move", "m2", "--profile", pa});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out == "0\t4\t2 1 0\t1 2 0\t0\t1\nconverged steps=1 winner=1\n");

  for (const char* rule : {"plurality", "borda", "stv", "copeland"}) {
    for (const char* move : {"m1", "m2", "best", "pragmatist2"}) {
      r = run_cli({"simulate", "--rule", rule, "--move", move, "--profile", pb});
      CHECK(r.status == cli::kExitOk);
      CHECK(r.out == "converged steps=0 winner=0\n");
    }
  }

  r = run_cli({"simulate", "--rule", "plurality", "--move", "m2", "--profile", pa, "--tb", "1,0,2"});
  CHECK(r.out == "converged steps=0 winner=1\n");

  r = run_cli({"simulate", "--rule", "plurality", "--move", "m2", "--profile", pa, "--json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["winner"] == 1);
  CHECK(j["trace"][0]["agent"] == 4);

  const auto out = dir.file("trace.txt");
  r = run_cli({"simulate", "--rule", "plurality", "--move", "m1", "--profile", pa, "--out", out});
  CHECK(r.out.empty());
  CHECK(slurp(out) == "0\t4\t2 1 0\t1 2 0\t0\t1\nconverged steps=1 winner=1\n");

  r = run_cli({"simulate", "--rule", "borda", "--move", "m2", "--seed", "5", "--m", "4", "--n", "9"});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out.find("converged") != std::string::npos);
}

TEST_CASE("usage errors") {
  auto r = run_cli({"simulate", "--rule", "plu", "--move", "m2", "--seed", "1"});
  CHECK(r.status == cli::kExitUsage);
  CHECK(r.err.find("plurality, veto, approval2, approval3, borda, copeland, maximin, stv") != std::string::npos);

  r = run_cli({"simulate", "--rule", "plurality", "--move", "m7", "--seed", "1"});
  CHECK(r.status == cli::kExitUsage);
  CHECK(r.err.find("best, pragmatist2, pragmatist3, m1, m2") != std::string::npos);

  CHECK(run_cli({"simulate", "--rule", "plurality", "--move", "m2"}).status == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).status == cli::kExitUsage);
  CHECK(run_cli({}).status == cli::kExitUsage);
  CHECK(run_cli({"simulate", "--rule", "plurality", "--move", "m2", "--seed", "1", "--m", "3", "--tb", "0,0,1"})
            .status == cli::kExitUsage);
  CHECK(run_cli({"experiment", "--config", "x.cfg", "--jobs", "0"}).status == cli::kExitUsage);
  r = run_cli({"--help"});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out.find("simulate") != std::string::npos);
}

TEST_CASE("runtime failures") {
  TempDir dir;
  const auto bad = dir.write("bad.txt", "3 2\n0 1 2\n0 1 5\n");
  auto r = run_cli({"simulate", "--rule", "plurality", "--move", "m2", "--profile", bad});
  CHECK(r.status == cli::kExitFailure);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(r.err.find("token 3") != std::string::npos);

  r = run_cli({"analyze", "--profile", dir.file("missing.txt")});
  CHECK(r.status == cli::kExitFailure);
  CHECK(r.err.find("cannot open") != std::string::npos);

  const auto small = dir.write("small.txt", "3 1\n0 1 2\n");
  r = run_cli({"simulate", "--rule", "approval3", "--move", "m2", "--profile", small});
  CHECK(r.status == cli::kExitFailure);
}

TEST_CASE("analyze matches the golden output") {
  TempDir dir;
  const auto pa = dir.write("pa.txt", format_profile(fixtures::profile_a()));
  const auto r = run_cli({"analyze", "--profile", pa});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out == slurp(std::string(ITERVOTE_GOLDEN_DIR) + "/analyze_profile_a.txt"));
  CHECK(r.out.find("condorcet_winner: 1") != std::string::npos);
  CHECK(run_cli({"analyze", "--profile", pa}).out == r.out);
}

TEST_CASE("generate then simulate") {
  TempDir dir;
  const auto path = dir.file("gen.txt");
  auto r = run_cli({"generate", "--m", "5", "--n", "50", "--count", "10", "--seed", "7", "--require-cw", "--out", path});
  CHECK(r.status == cli::kExitOk);
  std::ifstream in(path);
  const auto profiles = parse_profiles(in);
  REQUIRE(profiles.size() == 10);
  for (const auto& p : profiles) {
    CHECK(p.voters() == 50);
    CHECK(condorcet_winner(p).has_value());
  }
  CHECK(run_cli({"generate", "--m", "5", "--n", "50", "--count", "10", "--seed", "7", "--require-cw"}).out ==
        slurp(path));

  r = run_cli({"simulate", "--rule", "stv", "--move", "m2", "--profile", path});
  CHECK(r.status == cli::kExitOk);
  std::size_t summaries = 0;
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) summaries += line.rfind("converged", 0) == 0 || line.rfind("step-cap", 0) == 0;
  CHECK(summaries == 10);
}

TEST_CASE("experiment command") {
  TempDir dir;
  const auto cfg = dir.write("grid.cfg",
                             "m=5\nrules=plurality,veto,stv\nmoves=m1,m2\nn=21,30\nsamples=40\nseed=3\n");
  const auto serial = dir.file("serial.csv");
  const auto parallel = dir.file("parallel.csv");
  CHECK(run_cli({"experiment", "--config", cfg, "--out", serial}).status == cli::kExitOk);
  CHECK(run_cli({"experiment", "--config", cfg, "--out", parallel, "--jobs", "4"}).status == cli::kExitOk);
  const std::string csv = slurp(serial);
  CHECK(csv == slurp(parallel));

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == csv_header());
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
  }
  CHECK(rows == 2 * 3 * 3);

  const auto audit = dir.file("audit.json");
  CHECK(run_cli({"experiment", "--config", cfg, "--out", serial, "--audit", audit}).status == cli::kExitOk);
  const auto j = nlohmann::json::parse(slurp(audit));
  CHECK(j.size() == rows);
  CHECK(j[0]["profiles"].size() == 40);

  const auto broken = dir.write("broken.cfg", "rules=plu\n");
  const auto r = run_cli({"experiment", "--config", broken});
  CHECK(r.status == cli::kExitUsage);
  CHECK(r.err.find("unknown rule") != std::string::npos);
}
