#pragma once

#include <span>

#include "wcg/game.hpp"
#include "wcg/psi.hpp"

namespace wcg {

enum class PotentialKind { PsiHatExact, RhoApproximate };

struct PotentialValue {
  Rational value;
  PotentialKind kind = PotentialKind::PsiHatExact;
};

/// Exact potential of the Psi-hat game:
///   sum_e sum_k a_{e,k} / (k+1) * Psi-hat_{k+1}(U_e(S)).
Rational potential_psi_hat(const Game& game, const Profile& profile);
Rational potential_psi_hat(const Game& game, std::span<const PsiTable> tables);

/// Per-resource term of the approximate potential,
///   a_0 x + sum_{k>=1} a_k (x^{k+1}/(k+1) + x^k/2).
Rational approx_potential_term(const LatencyPoly& latency, const Rational& load);

/// sum_e approx_potential_term(c_e, L(U_e(S))).
Rational potential_approx(const Game& game, const Profile& profile);
Rational potential_approx(const Game& game, std::span<const Rational> loads);

PotentialValue potential(const Game& game, const Profile& profile, PotentialKind kind);

/// 2W(d+1) / (2W + d + 1).
Rational rho_star(unsigned d, const Rational& W);

struct PotentialBounds {
  Rational psi_hat;  ///< N^{d+1} W^{d+1} E (d+1)! max a
  Rational approx;   ///< N^{d+1} W^{d+1} E (d+1) max a
};

/// Closed-form upper bounds on N * max_u c-hat_u(S) (hence on the exact
/// potential) and on N * max_u c_u(S) (hence on the approximate potential).
PotentialBounds potential_upper_bounds(const GameParams& params);

}  // namespace wcg
