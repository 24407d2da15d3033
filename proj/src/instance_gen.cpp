#include "wcg/instance_gen.hpp"

#include <algorithm>
#include <set>

#include "wcg/paths.hpp"

namespace wcg {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty range");
  const std::uint64_t span = hi - lo;
  if (span == UINT64_MAX) return next();
  const std::uint64_t n = span + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + x % n;
}

bool SplitMix64::bernoulli(std::uint64_t num, std::uint64_t den) {
  if (den == 0 || num > den) throw std::invalid_argument("bad probability");
  return uniform(0, den - 1) < num;
}

namespace {

void check_common(const GenSpec& s) {
  if (s.N < 1) throw InfeasibleSpec("N must be >= 1");
  if (s.d < 1) throw InfeasibleSpec("d must be >= 1");
  if (s.W < Rational(1)) throw InfeasibleSpec("W must be >= 1");
  if (s.A < Rational(1)) throw InfeasibleSpec("A must be >= 1");
  if (!(s.coefficient_base > Rational(0))) throw InfeasibleSpec("coefficient base must be positive");
}

Rational draw_weight(SplitMix64& rng, const Rational& W) {
  const long r = static_cast<long>(rng.uniform(1, 8));
  const mpz_class top = floor(W * Rational(r));
  const long q = static_cast<long>(rng.uniform(static_cast<std::uint64_t>(r), top.get_ui()));
  return Rational(q, r);
}

LatencyPoly draw_latency(SplitMix64& rng, unsigned d, const Rational& A, const Rational& base) {
  LatencyPoly p;
  bool any = false;
  for (unsigned k = 0; k <= d; ++k) {
    if (rng.bernoulli(1, 3)) {
      p.coeffs.emplace_back(0);
      continue;
    }
    const long j = static_cast<long>(rng.uniform(0, 8));
    p.coeffs.push_back(base * (Rational(1) + (A - Rational(1)) * Rational(j, 8)));
    any = true;
  }
  if (!any) p.coeffs[rng.uniform(0, d)] = base;
  return p;
}

Strategy draw_subset(SplitMix64& rng, std::size_t E, std::size_t size) {
  std::vector<ResourceId> ids(E);
  for (std::size_t i = 0; i < E; ++i) ids[i] = i;
  for (std::size_t i = 0; i < size; ++i) std::swap(ids[i], ids[rng.uniform(i, E - 1)]);
  ids.resize(size);
  return make_strategy(std::move(ids));
}

std::vector<Strategy> draw_strategy_set(SplitMix64& rng, const GenSpec& s) {
  std::set<Strategy> seen;
  std::vector<Strategy> out;
  std::size_t attempts = 0;
  while (out.size() < s.strategies_per_player) {
    if (++attempts > 1000 * s.strategies_per_player) throw InfeasibleSpec("could not draw distinct strategies");
    const std::size_t size = rng.uniform(s.strategy_size_min, s.strategy_size_max);
    Strategy st = draw_subset(rng, s.E, size);
    if (seen.insert(st).second) out.push_back(std::move(st));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Game gen_random_game(const GenSpec& s) {
  check_common(s);
  if (s.E < 1) throw InfeasibleSpec("E must be >= 1");
  if (s.strategies_per_player < 1) throw InfeasibleSpec("strategies_per_player must be >= 1");
  if (s.strategy_size_min < 1 || s.strategy_size_min > s.strategy_size_max) {
    throw InfeasibleSpec("bad strategy size range");
  }
  if (s.strategy_size_max > s.E) throw InfeasibleSpec("strategy size exceeds E");
  mpz_class available = 0;
  for (std::size_t k = s.strategy_size_min; k <= s.strategy_size_max; ++k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), s.E, k);
    available += c;
  }
  if (available < static_cast<unsigned long>(s.strategies_per_player)) {
    throw InfeasibleSpec("fewer distinct strategies than strategies_per_player");
  }

  SplitMix64 rng(s.seed);
  Game g;
  g.degree = s.d;
  g.declared_W = s.W;
  g.declared_A = s.A;
  for (std::size_t u = 0; u < s.N; ++u) g.weights.push_back(draw_weight(rng, s.W));
  for (std::size_t e = 0; e < s.E; ++e) g.latencies.push_back(draw_latency(rng, s.d, s.A, s.coefficient_base));
  if (s.symmetric) {
    const ExplicitStrategies shared{draw_strategy_set(rng, s)};
    g.strategy_sets.assign(s.N, shared);
  } else {
    for (std::size_t u = 0; u < s.N; ++u) g.strategy_sets.emplace_back(ExplicitStrategies{draw_strategy_set(rng, s)});
  }
  require_valid(g);
  return g;
}

Game gen_network_game(const GenSpec& s) {
  check_common(s);
  if (!s.network) throw InfeasibleSpec("network spec missing");
  const NetworkSpec& net = *s.network;
  if (net.nodes < 2) throw InfeasibleSpec("network needs at least 2 nodes");
  if (net.max_parallel < 1) throw InfeasibleSpec("max_parallel must be >= 1");
  if (net.edge_den == 0 || net.edge_num > net.edge_den) throw InfeasibleSpec("bad edge probability");

  SplitMix64 rng(s.seed);
  Game g;
  g.degree = s.d;
  g.declared_W = s.W;
  g.declared_A = s.A;
  for (std::size_t u = 0; u < s.N; ++u) g.weights.push_back(draw_weight(rng, s.W));

  auto draw_od = [&] {
    const NodeId o = rng.uniform(0, net.nodes - 1);
    NodeId t = rng.uniform(0, net.nodes - 2);
    if (t >= o) ++t;
    return PathStrategies{o, t};
  };

  for (std::size_t attempt = 0; attempt < net.max_retries; ++attempt) {
    Graph graph;
    graph.nodes = net.nodes;
    for (NodeId a = 0; a < net.nodes; ++a) {
      for (NodeId b = 0; b < net.nodes; ++b) {
        if (a == b || !rng.bernoulli(net.edge_num, net.edge_den)) continue;
        const std::size_t k = rng.uniform(1, net.max_parallel);
        for (std::size_t i = 0; i < k; ++i) graph.arcs.push_back({a, b, graph.arcs.size()});
      }
    }
    std::vector<StrategySet> sets;
    if (net.od_policy == OdPolicy::Common || s.symmetric) {
      sets.assign(s.N, draw_od());
    } else {
      for (std::size_t u = 0; u < s.N; ++u) sets.emplace_back(draw_od());
    }
    const bool connected = std::all_of(sets.begin(), sets.end(), [&](const StrategySet& set) {
      const auto& ps = std::get<PathStrategies>(set);
      return has_path(graph, ps.origin, ps.destination);
    });
    if (!connected) continue;
    for (std::size_t e = 0; e < graph.arcs.size(); ++e) {
      g.latencies.push_back(draw_latency(rng, s.d, s.A, s.coefficient_base));
    }
    g.strategy_sets = std::move(sets);
    g.graph = std::move(graph);
    require_valid(g);
    return g;
  }
  throw InfeasibleSpec("no connected instance within the retry budget");
}

Game generate(const GenSpec& spec) { return spec.network ? gen_network_game(spec) : gen_random_game(spec); }

}  // namespace wcg
