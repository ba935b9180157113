#include "anticonc/two_cube.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace anticonc {

TwoCube::TwoCube(std::vector<std::pair<long long, long long>> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw ValidationError("two-cube must have at least one coordinate");
  differences_.reserve(pairs_.size());
  for (std::size_t j = 0; j < pairs_.size(); ++j) {
    const auto [u, v] = pairs_[j];
    if (u == v) {
      throw ValidationError("two-cube coordinate " + std::to_string(j) + " has u == v");
    }
    differences_.push_back(u - v);
  }
}

TwoCube TwoCube::symmetric(std::span<const long long> values) {
  std::vector<std::pair<long long, long long>> pairs;
  pairs.reserve(values.size());
  for (auto s : values) pairs.emplace_back(s, -s);
  return TwoCube(std::move(pairs));
}

TwoCube TwoCube::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open two-cube file '" + path.string() + "'");
  std::vector<std::pair<long long, long long>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": expected \"u v\"");
    }
    pairs.emplace_back(u, v);
  }
  return TwoCube(std::move(pairs));
}

Direction TwoCube::member(std::uint64_t choice) const {
  Direction x(pairs_.size());
  for (std::size_t j = 0; j < pairs_.size(); ++j) {
    x[j] = ((choice >> j) & 1U) ? pairs_[j].second : pairs_[j].first;
  }
  return x;
}

Direction TwoCube::sample(Rng& rng) const {
  Direction x(pairs_.size());
  for (std::size_t j = 0; j < pairs_.size(); ++j) {
    x[j] = rng.coin() ? pairs_[j].second : pairs_[j].first;
  }
  return x;
}

long long TwoCube::reach() const {
  long long r = 0;
  for (const auto& [u, v] : pairs_) r += std::max(std::llabs(u), std::llabs(v));
  return r;
}

}  // namespace anticonc
