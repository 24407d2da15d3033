#include "wcg/paths.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <unordered_map>

namespace wcg {

namespace {

// Outgoing (or incoming) arcs per node, ordered by (other endpoint, resource).
std::vector<std::vector<Arc>> adjacency(const Graph& graph, bool reverse) {
  std::vector<std::vector<Arc>> adj(graph.nodes);
  for (const Arc& a : graph.arcs) {
    if (a.from >= graph.nodes || a.to >= graph.nodes) throw std::out_of_range("arc endpoint out of range");
    adj[reverse ? a.to : a.from].push_back(a);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(), [reverse](const Arc& x, const Arc& y) {
      const NodeId xo = reverse ? x.from : x.to;
      const NodeId yo = reverse ? y.from : y.to;
      return std::tie(xo, x.resource) < std::tie(yo, y.resource);
    });
  }
  return adj;
}

// Nodes from which `destination` is reachable.
std::vector<bool> reaches(const Graph& graph, NodeId destination) {
  auto rev = adjacency(graph, true);
  std::vector<bool> seen(graph.nodes, false);
  std::vector<NodeId> stack{destination};
  seen[destination] = true;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (const Arc& a : rev[v]) {
      if (!seen[a.from]) {
        seen[a.from] = true;
        stack.push_back(a.from);
      }
    }
  }
  return seen;
}

void check_nodes(const Graph& graph, NodeId origin, NodeId destination) {
  if (origin >= graph.nodes || destination >= graph.nodes) throw std::out_of_range("node id out of range");
}

}  // namespace

bool is_simple_path(const Graph& graph, NodeId origin, NodeId destination, const Strategy& resources) {
  if (origin >= graph.nodes || destination >= graph.nodes || origin == destination) return false;
  if (resources.empty()) return false;
  std::unordered_map<ResourceId, const Arc*> by_resource;
  for (const Arc& a : graph.arcs) by_resource[a.resource] = &a;

  std::unordered_map<NodeId, const Arc*> out;
  for (ResourceId r : resources) {
    auto it = by_resource.find(r);
    if (it == by_resource.end()) return false;
    if (!out.emplace(it->second->from, it->second).second) return false;
  }
  std::vector<bool> visited(graph.nodes, false);
  NodeId v = origin;
  visited[v] = true;
  std::size_t used = 0;
  while (v != destination) {
    auto it = out.find(v);
    if (it == out.end()) return false;
    v = it->second->to;
    if (visited[v]) return false;
    visited[v] = true;
    ++used;
  }
  return used == resources.size();
}

bool has_path(const Graph& graph, NodeId origin, NodeId destination) {
  check_nodes(graph, origin, destination);
  return reaches(graph, destination)[origin];
}

std::optional<Strategy> first_simple_path(const Graph& graph, NodeId origin, NodeId destination) {
  check_nodes(graph, origin, destination);
  if (origin == destination) return std::nullopt;
  auto adj = adjacency(graph, false);
  auto can_reach = reaches(graph, destination);
  if (!can_reach[origin]) return std::nullopt;

  std::vector<bool> visited(graph.nodes, false);
  std::vector<ResourceId> path;
  std::function<bool(NodeId)> dfs = [&](NodeId v) {
    if (v == destination) return true;
    visited[v] = true;
    for (const Arc& a : adj[v]) {
      if (visited[a.to] || !can_reach[a.to]) continue;
      path.push_back(a.resource);
      if (dfs(a.to)) return true;
      path.pop_back();
    }
    visited[v] = false;
    return false;
  };
  if (!dfs(origin)) return std::nullopt;
  return make_strategy(path);
}

std::optional<std::vector<Strategy>> enumerate_simple_paths(const Graph& graph, NodeId origin,
                                                           NodeId destination, std::size_t limit) {
  check_nodes(graph, origin, destination);
  std::vector<Strategy> paths;
  if (origin == destination) return paths;
  auto adj = adjacency(graph, false);
  auto can_reach = reaches(graph, destination);

  std::vector<bool> visited(graph.nodes, false);
  std::vector<ResourceId> path;
  bool overflow = false;
  std::function<void(NodeId)> dfs = [&](NodeId v) {
    if (overflow) return;
    if (v == destination) {
      if (paths.size() == limit) {
        overflow = true;
        return;
      }
      paths.push_back(make_strategy(path));
      return;
    }
    visited[v] = true;
    for (const Arc& a : adj[v]) {
      if (visited[a.to] || !can_reach[a.to]) continue;
      path.push_back(a.resource);
      dfs(a.to);
      path.pop_back();
    }
    visited[v] = false;
  };
  if (can_reach[origin]) dfs(origin);
  if (overflow) return std::nullopt;
  std::sort(paths.begin(), paths.end());
  return paths;
}

WeightedPath shortest_path(const Graph& graph, NodeId origin, NodeId destination,
                           std::span<const Rational> resource_cost) {
  check_nodes(graph, origin, destination);
  if (origin == destination) throw NoPath("origin equals destination");
  for (const Arc& a : graph.arcs) {
    if (a.resource >= resource_cost.size()) throw std::out_of_range("arc resource id out of range");
    if (resource_cost[a.resource].sign() <= 0) throw std::invalid_argument("arc costs must be positive");
  }

  // Distances to the destination over reversed arcs.
  auto rev = adjacency(graph, true);
  std::vector<std::optional<Rational>> dist(graph.nodes);
  using Item = std::pair<Rational, NodeId>;
  auto later = [](const Item& x, const Item& y) { return x.first > y.first || (x.first == y.first && x.second > y.second); };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> queue(later);
  dist[destination] = Rational(0);
  queue.emplace(Rational(0), destination);
  std::vector<bool> settled(graph.nodes, false);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (settled[v]) continue;
    settled[v] = true;
    for (const Arc& a : rev[v]) {
      Rational nd = d + resource_cost[a.resource];
      if (!dist[a.from] || nd < *dist[a.from]) {
        dist[a.from] = nd;
        queue.emplace(nd, a.from);
      }
    }
  }
  if (!dist[origin]) throw NoPath("destination unreachable from origin");

  // Walk tight arcs greedily; positive costs make the tight subgraph acyclic.
  auto adj = adjacency(graph, false);
  std::vector<ResourceId> path;
  NodeId v = origin;
  while (v != destination) {
    const Arc* next = nullptr;
    for (const Arc& a : adj[v]) {
      if (dist[a.to] && resource_cost[a.resource] + *dist[a.to] == *dist[v]) {
        next = &a;
        break;
      }
    }
    if (next == nullptr) throw std::logic_error("shortest path reconstruction failed");
    path.push_back(next->resource);
    v = next->to;
  }
  return {make_strategy(path), *dist[origin]};
}

}  // namespace wcg
