#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "wcg/game.hpp"

namespace wcg {

/// SplitMix64. The state advances by 0x9E3779B97F4A7C15 per draw and each
/// output is the finalizer of the new state; see docs/formats.md.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform integer in [lo, hi], by rejection sampling.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  /// True with probability num/den.
  bool bernoulli(std::uint64_t num, std::uint64_t den);

 private:
  std::uint64_t state_;
};

class InfeasibleSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OdPolicy { Common, Random };

struct NetworkSpec {
  std::size_t nodes = 4;
  std::uint64_t edge_num = 1;  ///< each ordered node pair gets arcs with probability edge_num/edge_den
  std::uint64_t edge_den = 2;
  std::size_t max_parallel = 1;
  OdPolicy od_policy = OdPolicy::Common;
  std::size_t max_retries = 100;
};

struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t N = 2;
  std::size_t E = 3;  ///< ignored by gen_network_game
  unsigned d = 1;
  Rational W = 1;
  Rational A = 1;
  bool symmetric = false;
  std::size_t strategies_per_player = 2;
  std::size_t strategy_size_min = 1;
  std::size_t strategy_size_max = 1;
  Rational coefficient_base = 1;  ///< positive coefficients lie in [base, A * base]
  std::optional<NetworkSpec> network;

  bool operator==(const GenSpec&) const = default;
};

inline bool operator==(const NetworkSpec& a, const NetworkSpec& b) {
  return a.nodes == b.nodes && a.edge_num == b.edge_num && a.edge_den == b.edge_den &&
         a.max_parallel == b.max_parallel && a.od_policy == b.od_policy && a.max_retries == b.max_retries;
}

/// Explicit strategy sets; symmetric specs share one set.
Game gen_random_game(const GenSpec& spec);

/// Path strategies on a random digraph whose arcs are the resources.
Game gen_network_game(const GenSpec& spec);

/// gen_network_game when spec.network is set, gen_random_game otherwise.
Game generate(const GenSpec& spec);

}  // namespace wcg
