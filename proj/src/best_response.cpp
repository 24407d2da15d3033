#include "wcg/best_response.hpp"

#include <algorithm>
#include <stdexcept>

#include "wcg/paths.hpp"

namespace wcg {

const char* to_string(CostModel model) { return model == CostModel::Original ? "original" : "psihat"; }

CongestionState CongestionState::of(const Game& game, const Profile& profile) {
  return {resource_loads(game, profile), psi_tables(game, profile)};
}

void CongestionState::move(const Rational& w, const Strategy& from, const Strategy& to) {
  for (ResourceId e : from) {
    if (!std::binary_search(to.begin(), to.end(), e)) {
      loads.at(e) -= w;
      tables.at(e).remove(w);
    }
  }
  for (ResourceId e : to) {
    if (!std::binary_search(from.begin(), from.end(), e)) {
      loads.at(e) += w;
      tables.at(e).insert(w);
    }
  }
}

Rational model_cost(const Game& game, const Profile& profile, PlayerId u, CostModel model,
                    const CongestionState& state) {
  if (u >= game.num_players()) throw std::out_of_range("unknown player id " + std::to_string(u));
  Rational sum = 0;
  for (ResourceId e : profile.strategies.at(u)) {
    sum += model == CostModel::Original ? game.latencies[e](state.loads[e])
                                        : psi_hat_latency(game.latencies[e], state.tables[e]);
  }
  return game.weights[u] * sum;
}

Rational model_cost(const Game& game, const Profile& profile, PlayerId u, CostModel model) {
  return model_cost(game, profile, u, model, CongestionState::of(game, profile));
}

std::vector<Rational> join_costs(const Game& game, const Profile& profile, PlayerId u, CostModel model,
                                 const CongestionState& state) {
  if (u >= game.num_players()) throw std::out_of_range("unknown player id " + std::to_string(u));
  const Rational& w = game.weights[u];
  const Strategy& current = profile.strategies.at(u);
  std::vector<Rational> out(game.num_resources());
  for (ResourceId e = 0; e < game.num_resources(); ++e) {
    // U_e(S_-u) + {w_u} is the current multiset when u already uses e.
    const bool on_e = std::binary_search(current.begin(), current.end(), e);
    if (model == CostModel::Original) {
      out[e] = w * game.latencies[e](on_e ? state.loads[e] : state.loads[e] + w);
    } else {
      out[e] = w * psi_hat_latency(game.latencies[e], on_e ? state.tables[e] : psi_insert(state.tables[e], w));
    }
  }
  return out;
}

Rational deviation_cost(const Game& game, const Profile& profile, PlayerId u, const Strategy& s_new,
                        CostModel model) {
  const auto costs = join_costs(game, profile, u, model, CongestionState::of(game, profile));
  Rational sum = 0;
  for (ResourceId e : s_new) sum += costs.at(e);
  return sum;
}

BestResponse best_response_explicit(const Game& game, const Profile& profile, PlayerId u, CostModel model,
                                    const CongestionState& state) {
  const auto* ex = std::get_if<ExplicitStrategies>(&game.strategy_sets.at(u));
  if (ex == nullptr) throw std::invalid_argument("player " + std::to_string(u) + " has no explicit strategy set");
  const auto costs = join_costs(game, profile, u, model, state);
  const Strategy* best = nullptr;
  Rational best_cost;
  for (const Strategy& s : ex->strategies) {
    Rational c = 0;
    for (ResourceId e : s) c += costs.at(e);
    if (best == nullptr || c < best_cost || (c == best_cost && s < *best)) {
      best = &s;
      best_cost = c;
    }
  }
  if (best == nullptr) throw std::invalid_argument("empty strategy set");
  return {*best, best_cost};
}

BestResponse best_response_explicit(const Game& game, const Profile& profile, PlayerId u, CostModel model) {
  return best_response_explicit(game, profile, u, model, CongestionState::of(game, profile));
}

BestResponse best_response_path(const Game& game, const Profile& profile, PlayerId u, CostModel model,
                                const CongestionState& state) {
  const auto* ps = std::get_if<PathStrategies>(&game.strategy_sets.at(u));
  if (ps == nullptr) throw std::invalid_argument("player " + std::to_string(u) + " has no path strategy set");
  if (!game.graph) throw std::invalid_argument("path strategies need a graph");
  const auto costs = join_costs(game, profile, u, model, state);
  auto path = shortest_path(*game.graph, ps->origin, ps->destination, costs);
  return {std::move(path.resources), std::move(path.cost)};
}

BestResponse best_response_path(const Game& game, const Profile& profile, PlayerId u, CostModel model) {
  return best_response_path(game, profile, u, model, CongestionState::of(game, profile));
}

BestResponse best_response(const Game& game, const Profile& profile, PlayerId u, CostModel model,
                           const CongestionState& state) {
  if (std::holds_alternative<ExplicitStrategies>(game.strategy_sets.at(u))) {
    return best_response_explicit(game, profile, u, model, state);
  }
  return best_response_path(game, profile, u, model, state);
}

BestResponse best_response(const Game& game, const Profile& profile, PlayerId u, CostModel model) {
  return best_response(game, profile, u, model, CongestionState::of(game, profile));
}

}  // namespace wcg
