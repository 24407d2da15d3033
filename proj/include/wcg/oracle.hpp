#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wcg/best_response.hpp"
#include "wcg/game.hpp"
#include "wcg/potentials.hpp"

// Naive brute force over all profiles. Nothing here uses the Psi-hat tables
// or best_response: it is the reference the fast code is checked against.
namespace wcg::oracle {

struct OracleLimits {
  std::size_t max_profiles = 200000;
  std::size_t max_strategies_per_player = 4096;
  std::size_t max_exponent_vectors = 2'000'000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// k! * sum over exponent vectors r with |r| = k of prod_x x^{r_x}.
Rational psi_by_enumeration(unsigned k, std::span<const Rational> multiset, const OracleLimits& limits = {});

/// Sigma_u as sorted resource sets; path sets are enumerated by DFS.
std::vector<Strategy> enumerate_strategies(const Game& game, PlayerId u, const OracleLimits& limits = {});

/// Product of |Sigma_u|; throws BudgetExceeded above limits.max_profiles.
std::size_t count_profiles(const Game& game, const OracleLimits& limits = {});

/// Visits every profile once, in lexicographic order of strategy indices
/// (player 0 most significant).
void for_each_profile(const Game& game, const std::function<void(const Profile&)>& visit,
                      const OracleLimits& limits = {});
std::vector<Profile> enumerate_profiles(const Game& game, const OracleLimits& limits = {});

/// c-hat_u evaluated with psi_by_enumeration.
Rational psi_hat_cost(const Game& game, const Profile& profile, PlayerId u, const OracleLimits& limits = {});
Rational psi_hat_potential(const Game& game, const Profile& profile, const OracleLimits& limits = {});
Rational approx_potential(const Game& game, const Profile& profile);
Rational cost(const Game& game, const Profile& profile, PlayerId u, CostModel model, const OracleLimits& limits = {});

/// Global minimizer (first in enumeration order) and minimum.
std::pair<Profile, Rational> brute_min_potential(const Game& game, PotentialKind kind, const OracleLimits& limits = {});

/// Checks every player against every alternative strategy.
bool brute_verify_approx_pne(const Game& game, const Profile& profile, const Rational& rho, CostModel model,
                             const OracleLimits& limits = {});

struct PropertyCheck {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::optional<std::string> first_counterexample;
  bool ok() const { return failed == 0; }
};

struct PropertyReport {
  std::size_t profiles = 0;
  Rational rho;  ///< rho_star(d, W) used for the approximate potential
  PropertyCheck exact_potential;   ///< Phi-hat(S') - Phi-hat(S) = c-hat_u(S') - c-hat_u(S)
  PropertyCheck approx_potential;  ///< Phi(S) - Phi(S') >= c_u(S) - rho c_u(S')
  PropertyCheck sandwich;          ///< c_u <= c-hat_u <= d! c_u
  PropertyCheck psi_hat_range;     ///< 1 <= Phi-hat(S) <= C-hat(S)
  PropertyCheck approx_range;      ///< Phi(S) <= C(S)
  bool ok() const {
    return exact_potential.ok() && approx_potential.ok() && sandwich.ok() && psi_hat_range.ok() && approx_range.ok();
  }
};

/// All properties over every (profile, player, alternative) triple.
PropertyReport verify_potential_properties(const Game& game, const OracleLimits& limits = {});

struct Extrema {
  Rational c_hat_max;  ///< max over profiles and players of c-hat_u
  Rational c_max;
  Rational psi_hat_min, psi_hat_max;
  Rational approx_min, approx_max;
};
Extrema brute_extrema(const Game& game, const OracleLimits& limits = {});

}  // namespace wcg::oracle
