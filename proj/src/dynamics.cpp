#include "wcg/dynamics.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wcg/paths.hpp"

namespace wcg {

namespace {

constexpr std::size_t kIterationCap = 10'000'000;

std::string join(const Strategy& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(s[i]);
  }
  return out;
}

CostModel model_of(Algorithm a) { return a == Algorithm::PsiHatBRD ? CostModel::PsiHat : CostModel::Original; }

Rational potential_of(const Game& game, const CongestionState& state, Algorithm a) {
  return a == Algorithm::PsiHatBRD ? potential_psi_hat(game, state.tables) : potential_approx(game, state.loads);
}

Rational potential_of(const Game& game, const Profile& profile, Algorithm a) {
  return a == Algorithm::PsiHatBRD ? potential_psi_hat(game, profile) : potential_approx(game, profile);
}

std::string at_step(std::size_t t) { return "t=" + std::to_string(t) + ": "; }

// Invariants every move must satisfy. Shared by the run loop and the audit.
void check_entry(const TraceEntry& x, Algorithm a, const Rational& eps, const Rational& rho,
                 std::vector<std::string>& out) {
  if (!(x.potential_after < x.potential_before)) out.push_back(at_step(x.t) + "potential did not strictly decrease");
  if (a == Algorithm::PsiHatBRD) {
    const Rational drop = x.mover_cost_before - x.mover_cost_after;
    if (x.potential_before - x.potential_after != drop) {
      out.push_back(at_step(x.t) + "exact potential change " + (x.potential_before - x.potential_after).str() +
                    " differs from cost change " + drop.str());
    }
    if (!(drop > eps * x.mover_cost_before)) {
      out.push_back(at_step(x.t) + "cost change " + drop.str() + " not above eps * cost");
    }
  } else {
    const Rational gain = x.mover_cost_before - rho * x.mover_cost_after;
    const Rational dphi = x.potential_before - x.potential_after;
    if (dphi < gain) {
      out.push_back(at_step(x.t) + "approximate potential change " + dphi.str() + " below c - rho c' = " + gain.str());
    }
    if (!(gain > eps * x.mover_cost_before)) {
      out.push_back(at_step(x.t) + "c - rho c' = " + gain.str() + " not above eps * cost");
    }
  }
}

std::size_t to_iterations(const Rational& bound) {
  const mpz_class c = ceil(bound * Rational(2));
  if (c <= 0) return 0;
  if (c >= static_cast<unsigned long>(kIterationCap)) return kIterationCap;
  return c.get_ui();
}

RunResult run_dynamic(const Game& game, const RunConfig& config, Algorithm algorithm) {
  require_valid(game);
  if (!(config.epsilon > Rational(0) && config.epsilon < Rational(1))) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const GameParams params = derive_params(game);
  const CostModel model = model_of(algorithm);

  RunResult r;
  r.algorithm = algorithm;
  r.epsilon = config.epsilon;
  r.rho = algorithm == Algorithm::PsiHatBRD ? Rational(1) : rho_star(params.d, params.W);
  r.target_ratio = r.rho / (Rational(1) - config.epsilon);
  r.trace_level = config.trace_level;
  r.initial_profile = config.initial_profile ? *config.initial_profile : default_profile(game);
  const auto pv = validate_profile(game, r.initial_profile);
  if (!pv.ok()) throw InvalidStrategy("initial profile: " + pv.violations.front());
  r.max_iterations = config.max_iterations
                         ? *config.max_iterations
                         : to_iterations(applicable_bound(closed_form_bounds(game, config.epsilon, r.initial_profile),
                                                          algorithm));

  const Rational keep = Rational(1) - config.epsilon;
  Profile s = r.initial_profile;
  CongestionState state = CongestionState::of(game, s);
  const std::size_t n = game.num_players();
  for (std::size_t t = 0;; ++t) {
    std::optional<PlayerId> mover;
    Rational best_gain, mover_cost;
    BestResponse mover_br;
    std::size_t improving = 0;
    for (PlayerId u = 0; u < n; ++u) {
      const Rational c = model_cost(game, s, u, model, state);
      BestResponse br = best_response(game, s, u, model, state);
      if (!(keep * c > r.rho * br.cost)) continue;
      ++improving;
      const Rational gain = c - r.rho * br.cost;
      if (!mover || gain > best_gain) {
        mover = u;
        best_gain = gain;
        mover_cost = c;
        mover_br = std::move(br);
      }
    }
    if (!mover) {
      r.terminated = Termination::Converged;
      break;
    }
    if (t >= r.max_iterations) {
      r.terminated = Termination::MaxIterations;
      break;
    }
    TraceEntry x;
    x.t = t;
    x.mover = *mover;
    x.old_strategy = s.strategies[*mover];
    x.new_strategy = mover_br.strategy;
    x.mover_cost_before = mover_cost;
    x.improving_set_size = improving;
    x.potential_before = potential_of(game, state, algorithm);
    state.move(game.weights[*mover], x.old_strategy, x.new_strategy);
    s.strategies[*mover] = x.new_strategy;
    x.potential_after = potential_of(game, state, algorithm);
    x.mover_cost_after = model_cost(game, s, *mover, model, state);
    if (x.mover_cost_after != mover_br.cost) {
      r.invariant_violations.push_back(at_step(t) + "cost after move differs from best-response cost");
    }
    check_entry(x, algorithm, config.epsilon, r.rho, r.invariant_violations);
    if (config.trace_level == TraceLevel::Full) r.trace.push_back(std::move(x));
    ++r.iterations;
  }
  r.final_profile = std::move(s);
  return r;
}

}  // namespace

const char* to_string(Algorithm algorithm) { return algorithm == Algorithm::PsiHatBRD ? "alg1" : "alg2"; }

const char* to_string(Termination termination) {
  return termination == Termination::Converged ? "converged" : "max_iterations";
}

Profile default_profile(const Game& game) {
  Profile p;
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    const auto& set = game.strategy_sets.at(u);
    if (const auto* ex = std::get_if<ExplicitStrategies>(&set)) {
      if (ex->strategies.empty()) throw std::invalid_argument("player " + std::to_string(u) + " has no strategies");
      p.strategies.push_back(*std::min_element(ex->strategies.begin(), ex->strategies.end()));
    } else {
      const auto& ps = std::get<PathStrategies>(set);
      if (!game.graph) throw std::invalid_argument("path strategies need a graph");
      auto path = first_simple_path(*game.graph, ps.origin, ps.destination);
      if (!path) throw NoPath("player " + std::to_string(u) + " has no path");
      p.strategies.push_back(std::move(*path));
    }
  }
  return p;
}

bool is_approx_pne(const Game& game, const Profile& profile, const Rational& rho, CostModel model) {
  const CongestionState state = CongestionState::of(game, profile);
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    if (model_cost(game, profile, u, model, state) > rho * best_response(game, profile, u, model, state).cost) {
      return false;
    }
  }
  return true;
}

RunResult run_alg1(const Game& game, const RunConfig& config) { return run_dynamic(game, config, Algorithm::PsiHatBRD); }

RunResult run_alg2(const Game& game, const RunConfig& config) { return run_dynamic(game, config, Algorithm::RefinedBRD); }

RunResult run(const Game& game, const RunConfig& config) { return run_dynamic(game, config, config.algorithm); }

std::vector<std::string> audit_trace(const Game& game, const RunResult& result) {
  std::vector<std::string> out;
  if (result.trace_level != TraceLevel::Full) {
    out.push_back("trace was not recorded");
    return out;
  }
  if (result.trace.size() != result.iterations) out.push_back("trace length differs from iteration count");
  const CostModel model = model_of(result.algorithm);
  Profile s = result.initial_profile;
  Rational prev = potential_of(game, s, result.algorithm);
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const TraceEntry& x = result.trace[i];
    if (x.t != i) out.push_back(at_step(i) + "step index out of order");
    if (x.mover >= game.num_players()) {
      out.push_back(at_step(i) + "unknown mover");
      return out;
    }
    if (s.strategies[x.mover] != x.old_strategy) out.push_back(at_step(i) + "old strategy does not match replay");
    if (x.potential_before != prev) out.push_back(at_step(i) + "potential_before does not match replay");
    if (model_cost(game, s, x.mover, model) != x.mover_cost_before) {
      out.push_back(at_step(i) + "mover_cost_before does not match replay");
    }
    if (!is_member(game, x.mover, x.new_strategy)) out.push_back(at_step(i) + "new strategy not in the player's set");
    s.strategies[x.mover] = x.new_strategy;
    const Rational after = potential_of(game, s, result.algorithm);
    if (after != x.potential_after) out.push_back(at_step(i) + "potential_after does not match replay");
    if (model_cost(game, s, x.mover, model) != x.mover_cost_after) {
      out.push_back(at_step(i) + "mover_cost_after does not match replay");
    }
    check_entry(x, result.algorithm, result.epsilon, result.rho, out);
    prev = after;
  }
  if (s != result.final_profile) out.push_back("final profile does not match replay");
  return out;
}

void write_trace_csv(std::ostream& os, const RunResult& result) {
  os << "t,mover,old_strategy,new_strategy,cost_before,cost_after,potential_before,potential_after,"
        "improving_set_size\n";
  for (const auto& x : result.trace) {
    os << x.t << ',' << x.mover << ',' << join(x.old_strategy) << ',' << join(x.new_strategy) << ','
       << x.mover_cost_before << ',' << x.mover_cost_after << ',' << x.potential_before << ',' << x.potential_after
       << ',' << x.improving_set_size << '\n';
  }
}

BoundsReport bounds_report(const GameParams& params, const Rational& epsilon, const Rational& initial_potential,
                           const Rational& c_hat_max_bound, const Rational& c_max_bound,
                           std::optional<Rational> psi_hat_min, std::optional<Rational> approx_min) {
  if (!(epsilon > Rational(0) && epsilon < Rational(1))) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (params.N == 0) throw std::invalid_argument("bounds need at least one player");
  const unsigned d = params.d;
  const Rational N(static_cast<long>(params.N));
  const Rational E(static_cast<long>(params.E));
  const Rational W = params.W;
  BoundsReport b;
  b.c_hat_max = c_hat_max_bound;
  b.c_max = c_max_bound;
  const Rational one(1);
  b.psi_hat_floor = psi_hat_min ? *psi_hat_min : min(one, params.a_min_plus);
  b.approx_floor = approx_min ? *approx_min
                              : min(one, params.a_min_plus * Rational(static_cast<long>(d + 3)) /
                                             Rational(static_cast<long>(2 * (d + 1))));
  if (!(b.psi_hat_floor > Rational(0)) || !(b.approx_floor > Rational(0))) {
    throw std::invalid_argument("potential minima must be positive");
  }
  auto log_term = [&](const Rational& cmax, const Rational& floor_) -> long {
    const Rational x = N * cmax / min(one, floor_);
    if (!(x > Rational(0))) return 0;
    return std::max(0L, ceil_ln(x));
  };
  b.log_hat = log_term(c_hat_max_bound, b.psi_hat_floor);
  b.log_orig = log_term(c_max_bound, b.approx_floor);

  const Rational ea = epsilon * params.a_min_plus;
  b.direct_bound = N * c_hat_max_bound / ea;
  b.direct_potential_bound = max(Rational(0), (initial_potential - b.psi_hat_floor) / ea);
  b.mu = E * params.A * factorial(d + 1) * pow(N, d) * pow(W, d + 1);
  b.varpi = E * params.A * Rational(static_cast<long>(d + 1)) * pow(N, d) * pow(W, d + 1);
  const Rational lh(b.log_hat), lo(b.log_orig);
  if (params.symmetric) {
    b.symmetric_log_bound = N * (W + factorial(d) * pow(W, d + 1)) / epsilon * lh;
    b.alg2_symmetric_bound = N * pow(W + one, d + 1) / epsilon * lo;
  }
  b.general_log_bound = N * b.mu / epsilon * lh;
  b.alg2_general_bound = N * b.varpi / epsilon * lo;
  return b;
}

BoundsReport closed_form_bounds(const Game& game, const Rational& epsilon, const Profile& initial_profile) {
  const GameParams params = derive_params(game);
  const PotentialBounds pb = potential_upper_bounds(params);
  const Rational N(static_cast<long>(params.N));
  return bounds_report(params, epsilon, potential_psi_hat(game, initial_profile), pb.psi_hat / N, pb.approx / N);
}

Rational applicable_bound(const BoundsReport& report, Algorithm algorithm) {
  if (algorithm == Algorithm::PsiHatBRD) {
    Rational b = min(report.direct_bound, report.direct_potential_bound);
    b = min(b, report.general_log_bound);
    if (report.symmetric_log_bound) b = min(b, *report.symmetric_log_bound);
    return b;
  }
  Rational b = report.alg2_general_bound;
  if (report.alg2_symmetric_bound) b = min(b, *report.alg2_symmetric_bound);
  return b;
}

LemmaReport check_per_step_lemmas(const Game& game, const RunResult& result, const GameParams& params,
                                  const Rational& epsilon) {
  if (result.trace_level != TraceLevel::Full) throw std::invalid_argument("per-step checks need a full trace");
  const unsigned d = params.d;
  const Rational N(static_cast<long>(params.N));
  const Rational E(static_cast<long>(params.E));
  const Rational W = params.W;
  const Rational mu = E * params.A * factorial(d + 1) * pow(N, d) * pow(W, d + 1);
  const Rational varpi = E * params.A * Rational(static_cast<long>(d + 1)) * pow(N, d) * pow(W, d + 1);
  const Rational sym1 = epsilon / (W + factorial(d) * pow(W, d + 1));
  const Rational gen1 = epsilon / mu;
  const Rational sym2 = epsilon / pow(W + Rational(1), d + 1);
  const Rational gen2 = epsilon / varpi;

  LemmaReport rep;
  auto check = [&](const char* name, std::size_t t, PlayerId u, const Rational& lhs, const Rational& rhs) {
    ++rep.checks[name];
    if (lhs < rhs) rep.violations.push_back({name, t, u, lhs, rhs});
  };

  Profile s = result.initial_profile;
  for (const TraceEntry& x : result.trace) {
    const CongestionState state = CongestionState::of(game, s);
    const Profile next = [&] {
      Profile p = s;
      p.strategies.at(x.mover) = x.new_strategy;
      return p;
    }();
    if (result.algorithm == Algorithm::PsiHatBRD) {
      const Rational gain = model_cost(game, s, x.mover, CostModel::PsiHat, state) -
                            model_cost(game, next, x.mover, CostModel::PsiHat);
      for (PlayerId u = 0; u < game.num_players(); ++u) {
        const Rational ch = model_cost(game, s, u, CostModel::PsiHat, state);
        if (params.symmetric) check("alg1_symmetric", x.t, u, gain, sym1 * ch);
        check("alg1_general", x.t, u, gain, gen1 * ch);
      }
    } else {
      const Rational gain = model_cost(game, s, x.mover, CostModel::Original, state) -
                            result.rho * model_cost(game, next, x.mover, CostModel::Original);
      for (PlayerId u = 0; u < game.num_players(); ++u) {
        if (params.symmetric) {
          check("alg2_symmetric", x.t, u, gain, sym2 * model_cost(game, s, u, CostModel::Original, state));
        }
        check("alg2_general", x.t, u, gain, gen2 * model_cost(game, s, u, CostModel::PsiHat, state));
      }
    }
    s = next;
  }
  return rep;
}

}  // namespace wcg
