#include "itervote/preferences.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace itervote {

namespace {

std::vector<std::size_t> inverse_permutation(std::span<const Candidate> order, const char* what) {
  const std::size_t m = order.size();
  std::vector<std::size_t> pos(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const Candidate c = order[i];
    if (c < 0 || static_cast<std::size_t>(c) >= m) {
      throw InvalidInput(std::string(what) + ": candidate " + std::to_string(c) + " out of range [0, " +
                         std::to_string(m) + ")");
    }
    if (pos[static_cast<std::size_t>(c)] != m) {
      throw InvalidInput(std::string(what) + ": candidate " + std::to_string(c) + " appears twice");
    }
    pos[static_cast<std::size_t>(c)] = i;
  }
  return pos;
}

}  // namespace

ProfileParseError::ProfileParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Ballot::Ballot(std::vector<Candidate> ranking)
    : ranking_(std::move(ranking)), position_(inverse_permutation(ranking_, "ballot")) {
  if (ranking_.empty()) throw InvalidInput("ballot: empty ranking");
}

Ballot Ballot::lifted(Candidate c) const {
  std::vector<Candidate> r = ranking_;
  auto it = r.begin() + static_cast<std::ptrdiff_t>(position_of(c));
  std::rotate(r.begin(), it, it + 1);
  return Ballot(std::move(r));
}

TieBreakOrder::TieBreakOrder(std::vector<Candidate> priority)
    : priority_(std::move(priority)), position_(inverse_permutation(priority_, "tie-break order")) {}

TieBreakOrder TieBreakOrder::identity(std::size_t m) {
  std::vector<Candidate> p(m);
  std::iota(p.begin(), p.end(), 0);
  return TieBreakOrder(std::move(p));
}

Profile::Profile(std::size_t m, std::vector<Ballot> ballots) : m_(m), ballots_(std::move(ballots)) {
  if (m_ < 2) throw InvalidInput("profile: need at least 2 candidates");
  if (ballots_.empty()) throw InvalidInput("profile: need at least 1 voter");
  for (std::size_t i = 0; i < ballots_.size(); ++i) {
    if (ballots_[i].size() != m_) {
      throw InvalidInput("profile: ballot " + std::to_string(i) + " ranks " +
                         std::to_string(ballots_[i].size()) + " candidates, expected " + std::to_string(m_));
    }
  }
}

Profile Profile::with_ballot(std::size_t agent, Ballot ballot) const {
  Profile p = *this;
  if (ballot.size() != m_) throw InvalidInput("profile: replacement ballot has wrong size");
  p.ballots_.at(agent) = std::move(ballot);
  return p;
}

MajorityMatrix::MajorityMatrix(std::size_t m, std::size_t n) : m_(m), n_(n), cells_(m * m, 0) {}

void MajorityMatrix::add(const Ballot& b, int weight) {
  const auto r = b.ranking();
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = i + 1; j < r.size(); ++j) cells_[index(r[i], r[j])] += weight;
  }
}

MajorityMatrix majority_matrix(const Profile& profile) {
  MajorityMatrix mm(profile.candidates(), profile.voters());
  for (const Ballot& b : profile.ballots()) mm.add(b);
  return mm;
}

std::optional<Candidate> condorcet_winner(const MajorityMatrix& matrix) {
  const auto m = static_cast<Candidate>(matrix.candidates());
  for (Candidate c = 0; c < m; ++c) {
    bool wins_all = true;
    for (Candidate x = 0; x < m && wins_all; ++x) {
      if (x != c && !matrix.beats(c, x)) wins_all = false;
    }
    if (wins_all) return c;
  }
  return std::nullopt;
}

std::optional<Candidate> condorcet_winner(const Profile& profile) {
  return condorcet_winner(majority_matrix(profile));
}

Rng sample_rng(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Profile generate_profile(std::size_t m, std::size_t n, Rng& rng) {
  if (m < 2) throw InvalidInput("generate_profile: need m >= 2");
  if (n < 1) throw InvalidInput("generate_profile: need n >= 1");
  std::vector<Ballot> ballots;
  ballots.reserve(n);
  std::vector<Candidate> order(m);
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    ballots.emplace_back(order);
  }
  return Profile(m, std::move(ballots));
}

Profile generate_profile_with_condorcet_winner(std::size_t m, std::size_t n, Rng& rng,
                                               std::size_t max_attempts) {
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Profile p = generate_profile(m, n, rng);
    if (condorcet_winner(p)) return p;
  }
  throw SamplingFailure("no profile with a Condorcet winner after " + std::to_string(max_attempts) +
                        " attempts (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
}

std::string format_ballot(const Ballot& b) {
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(b.at(i));
  }
  return out;
}

std::string format_profile(const Profile& profile) {
  std::string out = std::to_string(profile.candidates()) + " " + std::to_string(profile.voters()) + "\n";
  for (const Ballot& b : profile.ballots()) {
    out += format_ballot(b);
    out += '\n';
  }
  return out;
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::vector<long long> parse_integers(const std::string& line, std::size_t line_no) {
  std::vector<long long> values;
  std::istringstream tokens(line);
  std::string tok;
  std::size_t index = 0;
  while (tokens >> tok) {
    ++index;
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ProfileParseError(line_no, "token " + std::to_string(index) + " '" + tok + "' is not an integer");
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace

std::vector<Profile> parse_profiles(std::istream& in) {
  std::vector<Profile> profiles;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const auto header = parse_integers(line, reader.number());
    if (header.size() != 2) {
      throw ProfileParseError(reader.number(), "expected header 'm n', found " + std::to_string(header.size()) +
                                                   " tokens");
    }
    if (header[0] < 2) throw ProfileParseError(reader.number(), "m must be at least 2");
    if (header[1] < 1) throw ProfileParseError(reader.number(), "n must be at least 1");
    const auto m = static_cast<std::size_t>(header[0]);
    const auto n = static_cast<std::size_t>(header[1]);

    std::vector<Ballot> ballots;
    for (std::size_t i = 0; i < n; ++i) {
      if (!reader.next(line)) {
        throw ProfileParseError(reader.number(), "expected " + std::to_string(n) + " ballots, found " +
                                                     std::to_string(i));
      }
      const auto values = parse_integers(line, reader.number());
      if (values.size() != m) {
        throw ProfileParseError(reader.number(), "ballot has " + std::to_string(values.size()) +
                                                     " tokens, expected " + std::to_string(m));
      }
      for (std::size_t t = 0; t < m; ++t) {
        if (values[t] < 0 || values[t] >= header[0]) {
          throw ProfileParseError(reader.number(), "token " + std::to_string(t + 1) + " '" +
                                                       std::to_string(values[t]) + "' is not a candidate in [0, " +
                                                       std::to_string(m) + ")");
        }
      }
      std::vector<Candidate> ranking(values.begin(), values.end());
      try {
        ballots.emplace_back(std::move(ranking));
      } catch (const InvalidInput& e) {
        throw ProfileParseError(reader.number(), e.what());
      }
    }
    profiles.emplace_back(m, std::move(ballots));
  }
  return profiles;
}

Profile parse_profile(const std::string& text) {
  std::istringstream in(text);
  auto profiles = parse_profiles(in);
  if (profiles.size() != 1) {
    throw ProfileParseError(0, "expected exactly one profile, found " + std::to_string(profiles.size()));
  }
  return std::move(profiles.front());
}

}  // namespace itervote
