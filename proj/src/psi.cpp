#include "wcg/psi.hpp"

#include <stdexcept>

namespace wcg {

PsiTable::PsiTable(unsigned max_order) : values_(max_order + 1, Rational(0)) { values_[0] = 1; }

void PsiTable::insert(const Rational& b) {
  for (unsigned k = 1; k < values_.size(); ++k) {
    values_[k] += Rational(static_cast<long>(k)) * b * values_[k - 1];
  }
  ++count_;
}

void PsiTable::remove(const Rational& b) {
  if (count_ == 0) throw std::logic_error("remove from an empty Psi table");
  // Psi_k(M) = Psi_k(M + {b}) - k*b*Psi_{k-1}(M + {b}); descending k keeps
  // values_[k-1] at its pre-removal value.
  for (unsigned k = static_cast<unsigned>(values_.size()) - 1; k >= 1; --k) {
    values_[k] -= Rational(static_cast<long>(k)) * b * values_[k - 1];
  }
  if (--count_ == 0) {
    for (unsigned k = 1; k < values_.size(); ++k) values_[k] = 0;
  }
}

PsiTable psi_insert(PsiTable table, const Rational& b) {
  table.insert(b);
  return table;
}

PsiTable psi_remove(PsiTable table, const Rational& b) {
  table.remove(b);
  return table;
}

PsiTable psi_table(std::span<const Rational> multiset, unsigned max_order) {
  PsiTable t(max_order);
  for (const auto& b : multiset) t.insert(b);
  return t;
}

Rational psi(unsigned k, std::span<const Rational> multiset) { return psi_table(multiset, k)[k]; }

Rational psi_hat_latency(const LatencyPoly& latency, const PsiTable& table) {
  Rational sum = 0;
  for (unsigned k = 0; k < latency.coeffs.size(); ++k) {
    if (!latency.coeffs[k].is_zero()) sum += latency.coeffs[k] * table[k];
  }
  return sum;
}

Rational psi_hat_resource_latency(const Game& game, ResourceId e, const PsiTable& table) {
  if (e >= game.num_resources()) throw std::out_of_range("unknown resource id " + std::to_string(e));
  return psi_hat_latency(game.latencies[e], table);
}

std::vector<PsiTable> psi_tables(const Game& game, const Profile& profile) {
  if (profile.strategies.size() != game.num_players()) throw std::invalid_argument("profile size mismatch");
  std::vector<PsiTable> tables(game.num_resources(), PsiTable(game.degree + 1));
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    for (ResourceId e : profile.strategies[u]) tables.at(e).insert(game.weights[u]);
  }
  return tables;
}

Rational psi_hat_player_cost(const Game& game, const Profile& profile, PlayerId u,
                             std::span<const PsiTable> tables) {
  if (u >= game.num_players()) throw std::out_of_range("unknown player id " + std::to_string(u));
  Rational sum = 0;
  for (ResourceId e : profile.strategies.at(u)) sum += psi_hat_latency(game.latencies.at(e), tables[e]);
  return game.weights[u] * sum;
}

Rational psi_hat_player_cost(const Game& game, const Profile& profile, PlayerId u) {
  const auto tables = psi_tables(game, profile);
  return psi_hat_player_cost(game, profile, u, tables);
}

Rational psi_hat_total_cost(const Game& game, const Profile& profile) {
  const auto tables = psi_tables(game, profile);
  Rational sum = 0;
  for (PlayerId u = 0; u < game.num_players(); ++u) sum += psi_hat_player_cost(game, profile, u, tables);
  return sum;
}

}  // namespace wcg
