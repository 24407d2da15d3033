#include "wcg/game.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wcg/paths.hpp"

namespace wcg {

namespace {

std::string player_tag(PlayerId u) { return "player " + std::to_string(u); }
std::string resource_tag(ResourceId e) { return "resource " + std::to_string(e); }

void check_player(const Game& game, PlayerId u) {
  if (u >= game.num_players()) throw std::out_of_range("unknown player id " + std::to_string(u));
}

void check_profile_shape(const Game& game, const Profile& profile) {
  if (profile.strategies.size() != game.num_players()) {
    throw std::invalid_argument("profile has " + std::to_string(profile.strategies.size()) +
                                " strategies for " + std::to_string(game.num_players()) + " players");
  }
}

std::vector<Strategy> canonical(const ExplicitStrategies& s) {
  std::vector<Strategy> out = s.strategies;
  std::sort(out.begin(), out.end());
  return out;
}

bool same_strategy_set(const StrategySet& a, const StrategySet& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ea = std::get_if<ExplicitStrategies>(&a)) {
    return canonical(*ea) == canonical(std::get<ExplicitStrategies>(b));
  }
  return std::get<PathStrategies>(a) == std::get<PathStrategies>(b);
}

}  // namespace

Strategy make_strategy(std::vector<ResourceId> resources) {
  std::sort(resources.begin(), resources.end());
  resources.erase(std::unique(resources.begin(), resources.end()), resources.end());
  return resources;
}

Rational LatencyPoly::operator()(const Rational& x) const {
  // Horner.
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ValidationReport validate_game(const Game& game) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  const std::size_t E = game.num_resources();

  if (game.degree < 1) fail("degree d must be at least 1");
  if (E == 0) fail("game needs at least one resource");
  if (game.declared_W < Rational(1)) fail("declared W < 1");
  if (game.declared_A.sign() <= 0) fail("declared A must be positive");

  for (PlayerId u = 0; u < game.num_players(); ++u) {
    const Rational& w = game.weights[u];
    if (w < Rational(1)) fail(player_tag(u) + ": weight w_u < 1 (" + w.str() + ")");
    if (w > game.declared_W) fail(player_tag(u) + ": weight w_u > W (" + w.str() + ")");
  }

  for (ResourceId e = 0; e < E; ++e) {
    const auto& coeffs = game.latencies[e].coeffs;
    if (coeffs.size() != game.degree + 1) {
      fail(resource_tag(e) + ": expected " + std::to_string(game.degree + 1) + " coefficients, got " +
           std::to_string(coeffs.size()));
    }
    Rational sum = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].sign() < 0) fail(resource_tag(e) + ": negative coefficient a_" + std::to_string(k));
      sum += coeffs[k];
    }
    if (sum.sign() <= 0) fail(resource_tag(e) + ": sum of coefficients must be > 0");
  }

  // Coefficient ratio bound.
  std::optional<Rational> lo, hi;
  for (const auto& lat : game.latencies) {
    for (const auto& a : lat.coeffs) {
      if (a.sign() <= 0) continue;
      if (!lo || a < *lo) lo = a;
      if (!hi || a > *hi) hi = a;
    }
  }
  if (lo && *hi / *lo > game.declared_A) {
    fail("coefficient ratio " + (*hi / *lo).str() + " exceeds declared A " + game.declared_A.str());
  }

  if (game.graph) {
    std::set<ResourceId> seen;
    for (const Arc& a : game.graph->arcs) {
      if (a.from >= game.graph->nodes || a.to >= game.graph->nodes) fail("graph arc endpoint out of range");
      if (a.resource >= E) fail("graph arc refers to unknown " + resource_tag(a.resource));
      if (!seen.insert(a.resource).second) fail("two graph arcs share " + resource_tag(a.resource));
    }
  }

  if (game.strategy_sets.size() != game.num_players()) {
    fail("expected one strategy set per player");
    return report;
  }
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    if (const auto* ex = std::get_if<ExplicitStrategies>(&game.strategy_sets[u])) {
      if (ex->strategies.empty()) fail(player_tag(u) + ": empty strategy set");
      std::set<Strategy> distinct;
      for (const Strategy& s : ex->strategies) {
        if (s.empty()) fail(player_tag(u) + ": strategy must be a nonempty subset of E");
        if (s != make_strategy(s)) fail(player_tag(u) + ": strategy resource ids must be sorted and distinct");
        for (ResourceId e : s) {
          if (e >= E) fail(player_tag(u) + ": strategy uses unknown " + resource_tag(e));
        }
        if (!distinct.insert(s).second) fail(player_tag(u) + ": duplicate strategy");
      }
    } else {
      const auto& ps = std::get<PathStrategies>(game.strategy_sets[u]);
      if (!game.graph) {
        fail(player_tag(u) + ": path-based strategies need a graph");
        continue;
      }
      if (ps.origin >= game.graph->nodes || ps.destination >= game.graph->nodes) {
        fail(player_tag(u) + ": origin/destination out of range");
      } else if (ps.origin == ps.destination) {
        fail(player_tag(u) + ": origin equals destination");
      } else if (!has_path(*game.graph, ps.origin, ps.destination)) {
        fail(player_tag(u) + ": no origin-destination path");
      }
    }
  }
  return report;
}

void require_valid(const Game& game) {
  auto report = validate_game(game);
  if (report.ok()) return;
  std::ostringstream os;
  os << "invalid game:";
  for (const auto& v : report.violations) os << "\n  " << v;
  throw std::invalid_argument(os.str());
}

bool is_member(const Game& game, PlayerId u, const Strategy& strategy) {
  check_player(game, u);
  if (const auto* ex = std::get_if<ExplicitStrategies>(&game.strategy_sets[u])) {
    return std::find(ex->strategies.begin(), ex->strategies.end(), strategy) != ex->strategies.end();
  }
  const auto& ps = std::get<PathStrategies>(game.strategy_sets[u]);
  return game.graph && is_simple_path(*game.graph, ps.origin, ps.destination, strategy);
}

ValidationReport validate_profile(const Game& game, const Profile& profile) {
  ValidationReport report;
  if (profile.strategies.size() != game.num_players()) {
    report.violations.push_back("profile size does not match player count");
    return report;
  }
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    if (!is_member(game, u, profile.strategies[u])) {
      report.violations.push_back(player_tag(u) + ": strategy not in its strategy set");
    }
  }
  return report;
}

Rational resource_load(const Game& game, const Profile& profile, ResourceId e) {
  if (e >= game.num_resources()) throw std::out_of_range("unknown resource id " + std::to_string(e));
  check_profile_shape(game, profile);
  Rational load = 0;
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    const auto& s = profile.strategies[u];
    if (std::binary_search(s.begin(), s.end(), e)) load += game.weights[u];
  }
  return load;
}

std::vector<Rational> resource_loads(const Game& game, const Profile& profile) {
  check_profile_shape(game, profile);
  std::vector<Rational> loads(game.num_resources(), Rational(0));
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    for (ResourceId e : profile.strategies[u]) loads.at(e) += game.weights[u];
  }
  return loads;
}

std::vector<Rational> resource_multiset(const Game& game, const Profile& profile, ResourceId e) {
  if (e >= game.num_resources()) throw std::out_of_range("unknown resource id " + std::to_string(e));
  check_profile_shape(game, profile);
  std::vector<Rational> out;
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    const auto& s = profile.strategies[u];
    if (std::binary_search(s.begin(), s.end(), e)) out.push_back(game.weights[u]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational player_cost(const Game& game, const Profile& profile, PlayerId u) {
  check_player(game, u);
  check_profile_shape(game, profile);
  Rational sum = 0;
  for (ResourceId e : profile.strategies[u]) sum += game.latencies.at(e)(resource_load(game, profile, e));
  return game.weights[u] * sum;
}

Rational total_cost(const Game& game, const Profile& profile) {
  Rational by_player = 0;
  for (PlayerId u = 0; u < game.num_players(); ++u) by_player += player_cost(game, profile, u);
  Rational by_resource = 0;
  const auto loads = resource_loads(game, profile);
  for (ResourceId e = 0; e < game.num_resources(); ++e) by_resource += loads[e] * game.latencies[e](loads[e]);
  if (by_player != by_resource) {
    throw std::logic_error("total cost mismatch: " + by_player.str() + " vs " + by_resource.str());
  }
  return by_player;
}

Profile deviate(const Game& game, const Profile& profile, PlayerId u, Strategy s_new) {
  check_profile_shape(game, profile);
  if (!is_member(game, u, s_new)) throw InvalidStrategy(player_tag(u) + ": strategy not in its strategy set");
  Profile out = profile;
  out.strategies[u] = std::move(s_new);
  return out;
}

GameParams derive_params(const Game& game) {
  GameParams p;
  p.N = game.num_players();
  p.E = game.num_resources();
  p.d = game.degree;
  p.W = 1;
  for (const auto& w : game.weights) p.W = max(p.W, w);

  std::optional<Rational> lo, hi;
  for (const auto& lat : game.latencies) {
    for (const auto& a : lat.coeffs) {
      if (a.sign() <= 0) continue;
      if (!lo || a < *lo) lo = a;
      if (!hi || a > *hi) hi = a;
    }
  }
  p.a_min_plus = lo.value_or(Rational(0));
  p.a_max = hi.value_or(Rational(0));
  p.A = lo ? *hi / *lo : Rational(0);

  p.symmetric = true;
  for (std::size_t u = 1; u < game.strategy_sets.size(); ++u) {
    if (!same_strategy_set(game.strategy_sets[0], game.strategy_sets[u])) {
      p.symmetric = false;
      break;
    }
  }
  return p;
}

}  // namespace wcg
