#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "wcg/game.hpp"

namespace wcg {

class NoPath : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True iff `resources` are exactly the arcs of one simple origin ->
/// destination path.
bool is_simple_path(const Graph& graph, NodeId origin, NodeId destination, const Strategy& resources);

bool has_path(const Graph& graph, NodeId origin, NodeId destination);

/// Simple path with the lexicographically smallest arc sequence, where arcs
/// leaving a node are ordered by (head node, resource id).
std::optional<Strategy> first_simple_path(const Graph& graph, NodeId origin, NodeId destination);

/// All simple paths as resource sets, sorted lexicographically. Returns
/// nullopt as soon as more than `limit` paths exist.
std::optional<std::vector<Strategy>> enumerate_simple_paths(const Graph& graph, NodeId origin,
                                                           NodeId destination, std::size_t limit);

struct WeightedPath {
  Strategy resources;
  Rational cost;
};

/// Minimum-cost origin -> destination path for strictly positive per-resource
/// costs; among minimum-cost paths the lexicographically smallest arc
/// sequence wins. Throws NoPath when the destination is unreachable.
WeightedPath shortest_path(const Graph& graph, NodeId origin, NodeId destination,
                           std::span<const Rational> resource_cost);

}  // namespace wcg
