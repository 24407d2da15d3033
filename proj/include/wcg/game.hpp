#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wcg/rational.hpp"

namespace wcg {

using PlayerId = std::size_t;
using ResourceId = std::size_t;
using NodeId = std::size_t;

/// A strategy is a set of resources, stored sorted and duplicate-free.
using Strategy = std::vector<ResourceId>;

/// Sorts and deduplicates resource ids.
Strategy make_strategy(std::vector<ResourceId> resources);

/// c_e(x) = sum_k coeffs[k] * x^k.
struct LatencyPoly {
  std::vector<Rational> coeffs;

  Rational operator()(const Rational& x) const;
  bool operator==(const LatencyPoly&) const = default;
};

struct Arc {
  NodeId from = 0;
  NodeId to = 0;
  ResourceId resource = 0;
  bool operator==(const Arc&) const = default;
};

/// Directed multigraph whose arcs are the game's resources.
struct Graph {
  std::size_t nodes = 0;
  std::vector<Arc> arcs;
  bool operator==(const Graph&) const = default;
};

struct ExplicitStrategies {
  std::vector<Strategy> strategies;
  bool operator==(const ExplicitStrategies&) const = default;
};

/// All simple origin -> destination paths of the game's graph.
struct PathStrategies {
  NodeId origin = 0;
  NodeId destination = 0;
  bool operator==(const PathStrategies&) const = default;
};

using StrategySet = std::variant<ExplicitStrategies, PathStrategies>;

/// Weighted congestion game with polynomial latencies of degree at most
/// `degree`. `declared_W` and `declared_A` are the constants the instance
/// claims for the weight and coefficient-ratio conditions.
struct Game {
  unsigned degree = 1;
  Rational declared_W = 1;
  Rational declared_A = 1;
  std::vector<Rational> weights;
  std::vector<LatencyPoly> latencies;
  std::vector<StrategySet> strategy_sets;
  std::optional<Graph> graph;

  std::size_t num_players() const { return weights.size(); }
  std::size_t num_resources() const { return latencies.size(); }
  bool operator==(const Game&) const = default;
};

struct Profile {
  std::vector<Strategy> strategies;
  bool operator==(const Profile&) const = default;
};

struct GameParams {
  std::size_t N = 0;
  std::size_t E = 0;
  unsigned d = 1;
  Rational W = 1;
  Rational A = 1;
  Rational a_min_plus = 1;
  Rational a_max = 1;
  bool symmetric = false;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

class InvalidStrategy : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ValidationReport validate_game(const Game& game);

/// Throws std::invalid_argument unless the game validates.
void require_valid(const Game& game);

/// Every strategy is a member of its player's strategy set.
ValidationReport validate_profile(const Game& game, const Profile& profile);

bool is_member(const Game& game, PlayerId u, const Strategy& strategy);

/// L(U_e(S)).
Rational resource_load(const Game& game, const Profile& profile, ResourceId e);
std::vector<Rational> resource_loads(const Game& game, const Profile& profile);

/// Sorted weight multiset U_e(S).
std::vector<Rational> resource_multiset(const Game& game, const Profile& profile, ResourceId e);

/// c_u(S) = w_u * sum_{e in s_u} c_e(L(U_e(S))).
Rational player_cost(const Game& game, const Profile& profile, PlayerId u);

/// C(S), checked to agree between the per-player and per-resource sums.
Rational total_cost(const Game& game, const Profile& profile);

/// (s_new, S_-u). Throws InvalidStrategy if s_new is not in Sigma_u.
Profile deviate(const Game& game, const Profile& profile, PlayerId u, Strategy s_new);

GameParams derive_params(const Game& game);

}  // namespace wcg
