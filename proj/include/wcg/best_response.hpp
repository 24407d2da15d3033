#pragma once

#include <span>
#include <vector>

#include "wcg/game.hpp"
#include "wcg/psi.hpp"

namespace wcg {

enum class CostModel { Original, PsiHat };

const char* to_string(CostModel model);

struct BestResponse {
  Strategy strategy;
  Rational cost;
};

/// Loads and Psi-hat tables of every resource under one profile. Kept in
/// sync with the profile by the dynamics; rebuilt from scratch elsewhere.
struct CongestionState {
  std::vector<Rational> loads;
  std::vector<PsiTable> tables;

  static CongestionState of(const Game& game, const Profile& profile);

  /// Moves a player of weight w from `from` to `to`.
  void move(const Rational& w, const Strategy& from, const Strategy& to);

  bool operator==(const CongestionState&) const = default;
};

/// Player cost under the chosen model.
Rational model_cost(const Game& game, const Profile& profile, PlayerId u, CostModel model);
Rational model_cost(const Game& game, const Profile& profile, PlayerId u, CostModel model,
                    const CongestionState& state);

/// Per-resource cost u would pay on e when using it against S_-u:
/// Original w_u c_e(L(U_e(S_-u)) + w_u), PsiHat
/// w_u sum_k a_{e,k} Psi-hat_k(U_e(S_-u) + {w_u}). Both cost models are
/// separable over resources, so c_u(s', S_-u) is the sum over s'.
std::vector<Rational> join_costs(const Game& game, const Profile& profile, PlayerId u, CostModel model,
                                 const CongestionState& state);

/// c_u(s', S_-u) under the model, by summing join costs.
Rational deviation_cost(const Game& game, const Profile& profile, PlayerId u, const Strategy& s_new,
                        CostModel model);

/// Exhaustive scan of an explicit strategy set; ties go to the
/// lexicographically smallest sorted resource list.
BestResponse best_response_explicit(const Game& game, const Profile& profile, PlayerId u, CostModel model);
BestResponse best_response_explicit(const Game& game, const Profile& profile, PlayerId u, CostModel model,
                                    const CongestionState& state);

/// Shortest path with join costs as arc weights; ties go to the smallest
/// arc sequence ordered by (head node, resource id). Throws NoPath.
BestResponse best_response_path(const Game& game, const Profile& profile, PlayerId u, CostModel model);
BestResponse best_response_path(const Game& game, const Profile& profile, PlayerId u, CostModel model,
                                const CongestionState& state);

/// Dispatches on the player's strategy-set kind.
BestResponse best_response(const Game& game, const Profile& profile, PlayerId u, CostModel model);
BestResponse best_response(const Game& game, const Profile& profile, PlayerId u, CostModel model,
                           const CongestionState& state);

}  // namespace wcg
