#pragma once

#include <span>
#include <vector>

#include "wcg/game.hpp"

namespace wcg {

/// Cached Psi-hat values of one weight multiset M.
///
/// values[k] holds k! times the complete homogeneous symmetric polynomial of
/// degree k in the elements of M, for k = 0..max_order. values[0] is 1 for
/// every multiset (including the empty one) and values[k] is 0 for k >= 1
/// when M is empty. Tables are updated one element at a time with
///
///   Psi_k(M + {b}) = Psi_k(M) + k * b * Psi_{k-1}(M + {b}),
///
/// evaluated in ascending k so the right-hand side is already updated.
class PsiTable {
 public:
  PsiTable() : PsiTable(0) {}
  explicit PsiTable(unsigned max_order);

  unsigned max_order() const { return static_cast<unsigned>(values_.size() - 1); }
  std::size_t element_count() const { return count_; }
  const Rational& operator[](unsigned k) const { return values_.at(k); }
  const std::vector<Rational>& values() const { return values_; }

  void insert(const Rational& b);
  /// Throws std::logic_error on an empty table.
  void remove(const Rational& b);

  bool operator==(const PsiTable&) const = default;

 private:
  std::vector<Rational> values_;
  std::size_t count_ = 0;
};

PsiTable psi_insert(PsiTable table, const Rational& b);
PsiTable psi_remove(PsiTable table, const Rational& b);

/// Table of the given multiset, built by repeated insertion.
PsiTable psi_table(std::span<const Rational> multiset, unsigned max_order);

/// Psi-hat_k(M).
Rational psi(unsigned k, std::span<const Rational> multiset);

/// sum_k a_{e,k} * table[k].
Rational psi_hat_latency(const LatencyPoly& latency, const PsiTable& table);
Rational psi_hat_resource_latency(const Game& game, ResourceId e, const PsiTable& table);

/// One table (of order d+1) per resource for the given profile.
std::vector<PsiTable> psi_tables(const Game& game, const Profile& profile);

/// w_u * sum_{e in s_u} c-hat_e(S).
Rational psi_hat_player_cost(const Game& game, const Profile& profile, PlayerId u);
Rational psi_hat_player_cost(const Game& game, const Profile& profile, PlayerId u,
                             std::span<const PsiTable> tables);

/// C-hat(S) = sum_u c-hat_u(S).
Rational psi_hat_total_cost(const Game& game, const Profile& profile);

}  // namespace wcg
