#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wcg/best_response.hpp"
#include "wcg/game.hpp"
#include "wcg/potentials.hpp"

namespace wcg {

enum class Algorithm {
  PsiHatBRD,   ///< 1/(1-eps) best-response dynamic on the Psi-hat game.
  RefinedBRD,  ///< rho/(1-eps) dynamic on the original game, rho = rho_star(d, W).
};
enum class TraceLevel { Full, Summary };
enum class Termination { Converged, MaxIterations };

const char* to_string(Algorithm algorithm);
const char* to_string(Termination termination);

struct RunConfig {
  Algorithm algorithm = Algorithm::PsiHatBRD;
  Rational epsilon = Rational(1, 10);
  /// Unset: twice the smallest applicable iteration bound, capped at 10^7.
  std::optional<std::size_t> max_iterations;
  /// Unset: every player starts on its first strategy (see default_profile).
  std::optional<Profile> initial_profile;
  TraceLevel trace_level = TraceLevel::Full;
};

struct TraceEntry {
  std::size_t t = 0;
  PlayerId mover = 0;
  Strategy old_strategy;
  Strategy new_strategy;
  Rational mover_cost_before;
  Rational mover_cost_after;
  Rational potential_before;
  Rational potential_after;
  std::size_t improving_set_size = 0;

  bool operator==(const TraceEntry&) const = default;
};

struct RunResult {
  Algorithm algorithm = Algorithm::PsiHatBRD;
  Rational epsilon;
  /// rho in the selection rule: 1 for PsiHatBRD, rho_star(d, W) for RefinedBRD.
  Rational rho = 1;
  /// Approximation ratio a converged profile certifies: 1/(1-eps) on the
  /// Psi-hat game for PsiHatBRD, rho/(1-eps) on the game for RefinedBRD.
  Rational target_ratio;
  Profile initial_profile;
  Profile final_profile;
  /// Number of moves. Under MaxIterations this is only a lower bound on the
  /// dynamic's true running time.
  std::size_t iterations = 0;
  std::size_t max_iterations = 0;
  Termination terminated = Termination::Converged;
  TraceLevel trace_level = TraceLevel::Full;
  std::vector<TraceEntry> trace;
  /// Per-step invariants that failed while running (potential strictly
  /// decreasing, the decrement identities and inequalities). Empty when all held.
  std::vector<std::string> invariant_violations;
};

/// Each player's first strategy: the lexicographically smallest explicit
/// strategy, or the first simple path in arc order for path-based sets.
Profile default_profile(const Game& game);

/// cost_u(S) <= rho * min_{s'} cost_u(s', S_-u) for every player.
bool is_approx_pne(const Game& game, const Profile& profile, const Rational& rho, CostModel model);

RunResult run_alg1(const Game& game, const RunConfig& config);
RunResult run_alg2(const Game& game, const RunConfig& config);
RunResult run(const Game& game, const RunConfig& config);

/// Replays a Full trace from the initial profile, recomputing every profile,
/// cost and potential from scratch and comparing with the recorded values,
/// then re-checks the per-step invariants. Returns every mismatch found.
std::vector<std::string> audit_trace(const Game& game, const RunResult& result);

/// Writes the trace as CSV. Strategies are ';'-joined resource ids,
/// rationals are num/den.
void write_trace_csv(std::ostream& os, const RunResult& result);

// -- Iteration bounds ------------------------------------------------------

struct BoundsReport {
  Rational c_hat_max;  ///< upper bound on max_u c-hat_u(S) used below
  Rational c_max;      ///< upper bound on max_u c_u(S) used below
  Rational psi_hat_floor;  ///< lower bound on the exact potential used below
  Rational approx_floor;   ///< lower bound on the approximate potential used below
  long log_hat = 0;        ///< max(0, ceil(ln(N c-hat_max / psi_hat_floor)))
  long log_orig = 0;       ///< max(0, ceil(ln(N c_max / approx_floor)))
  Rational direct_bound;            ///< N c-hat_max / (eps a_min+)
  Rational direct_potential_bound;  ///< (Phi-hat(S0) - psi_hat_floor) / (eps a_min+)
  std::optional<Rational> symmetric_log_bound;  ///< N (W + d! W^{d+1}) / eps * log_hat
  Rational general_log_bound;                   ///< N mu / eps * log_hat
  std::optional<Rational> alg2_symmetric_bound;  ///< N (1+W)^{d+1} / eps * log_orig
  Rational alg2_general_bound;                   ///< N varpi / eps * log_orig
  Rational mu;     ///< E A (d+1)! N^d W^{d+1}
  Rational varpi;  ///< E A (d+1) N^d W^{d+1}
};

/// Evaluates every iteration bound exactly. `initial_potential` is the exact
/// potential of the start profile. Potential minima default to the floors
/// min(1, a_min+) for the exact potential and min(1, a_min+ (d+3)/(2(d+1)))
/// for the approximate one.
BoundsReport bounds_report(const GameParams& params, const Rational& epsilon, const Rational& initial_potential,
                           const Rational& c_hat_max_bound, const Rational& c_max_bound,
                           std::optional<Rational> psi_hat_min = std::nullopt,
                           std::optional<Rational> approx_min = std::nullopt);

/// Report with the closed-form cost bounds of potential_upper_bounds.
BoundsReport closed_form_bounds(const Game& game, const Rational& epsilon, const Profile& initial_profile);

/// Smallest bound that applies to the algorithm on this instance.
Rational applicable_bound(const BoundsReport& report, Algorithm algorithm);

// -- Per-step lemma audit --------------------------------------------------

struct LemmaViolation {
  std::string lemma;
  std::size_t t = 0;
  PlayerId u = 0;
  Rational lhs;
  Rational rhs;
};

struct LemmaReport {
  std::map<std::string, std::size_t> checks;
  std::vector<LemmaViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// For every iteration t and player u, checks the per-step cost-reduction
/// lemmas of the algorithm that produced `result`:
///   PsiHatBRD:  gain >= eps / (W + d! W^{d+1}) c-hat_u   (symmetric games)
///               gain >= eps / mu c-hat_u
///   RefinedBRD: gain >= eps / (1+W)^{d+1} c_u            (symmetric games)
///               gain >= eps / varpi c-hat_u
/// where gain is c-hat_{u_t}(S) - c-hat_{u_t}(S') for PsiHatBRD and
/// c_{u_t}(S) - rho c_{u_t}(S') for RefinedBRD. Throws std::invalid_argument
/// for Summary traces.
LemmaReport check_per_step_lemmas(const Game& game, const RunResult& result, const GameParams& params,
                                  const Rational& epsilon);

}  // namespace wcg
