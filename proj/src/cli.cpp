#include "wcg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wcg/dynamics.hpp"
#include "wcg/instance_gen.hpp"
#include "wcg/io.hpp"
#include "wcg/oracle.hpp"
#include "wcg/paths.hpp"

namespace wcg {

using json = nlohmann::ordered_json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json opt(const std::optional<Rational>& r) { return r ? json(r->str()) : json(nullptr); }

json profile_json(const Profile& p) {
  json arr = json::array();
  for (const auto& s : p.strategies) arr.push_back(s);
  return arr;
}

json bounds_json(const BoundsReport& b) {
  return json{{"c_hat_max_bound", b.c_hat_max.str()},
              {"c_max_bound", b.c_max.str()},
              {"psi_hat_floor", b.psi_hat_floor.str()},
              {"approx_floor", b.approx_floor.str()},
              {"log_hat", b.log_hat},
              {"log_orig", b.log_orig},
              {"direct_bound", b.direct_bound.str()},
              {"direct_potential_bound", b.direct_potential_bound.str()},
              {"symmetric_log_bound", opt(b.symmetric_log_bound)},
              {"general_log_bound", b.general_log_bound.str()},
              {"alg2_symmetric_bound", opt(b.alg2_symmetric_bound)},
              {"alg2_general_bound", b.alg2_general_bound.str()},
              {"mu", b.mu.str()},
              {"varpi", b.varpi.str()}};
}

json check_json(const oracle::PropertyCheck& c) {
  return json{{"checked", c.checked},
              {"failed", c.failed},
              {"first_counterexample", c.first_counterexample ? json(*c.first_counterexample) : json(nullptr)}};
}

Game load_game(const std::string& path) {
  Game g = io::parse_game(io::read_file(path));
  const auto report = validate_game(g);
  if (!report.ok()) throw InputError("invalid game: " + report.violations.front());
  return g;
}

Rational parse_epsilon(const std::string& text) {
  const Rational eps = Rational::parse(text);
  if (!(eps > Rational(0) && eps < Rational(1))) throw InputError("epsilon must lie in (0, 1)");
  return eps;
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "alg1") return Algorithm::PsiHatBRD;
  if (name == "alg2") return Algorithm::RefinedBRD;
  throw InputError("unknown algorithm " + name);
}

struct SolveOutcome {
  RunResult result;
  json doc;
  int code = kExitOk;
};

SolveOutcome solve(const Game& g, const RunConfig& cfg, bool user_cap) {
  const RunResult r = run(g, cfg);
  const GameParams params = derive_params(g);
  const BoundsReport b = closed_form_bounds(g, cfg.epsilon, r.initial_profile);
  const Rational bound = applicable_bound(b, cfg.algorithm);

  std::vector<std::string> violations = r.invariant_violations;
  for (auto& v : audit_trace(g, r)) {
    if (std::find(violations.begin(), violations.end(), v) == violations.end()) violations.push_back(std::move(v));
  }
  const LemmaReport lemmas = check_per_step_lemmas(g, r, params, cfg.epsilon);
  const bool within = Rational(static_cast<long>(r.iterations)) <= bound;

  SolveOutcome o;
  o.result = r;
  if (!violations.empty() || !lemmas.ok() || !within) {
    o.code = kExitBoundViolated;
  } else if (r.terminated == Termination::MaxIterations) {
    o.code = user_cap ? kExitVerificationFailed : kExitBoundViolated;
  }

  json lemma_checks = json::object();
  for (const auto& [name, n] : lemmas.checks) lemma_checks[name] = n;
  json lemma_violations = json::array();
  for (const auto& v : lemmas.violations) {
    lemma_violations.push_back(
        json{{"lemma", v.lemma}, {"t", v.t}, {"player", v.u}, {"lhs", v.lhs.str()}, {"rhs", v.rhs.str()}});
  }
  o.doc = json{{"algorithm", to_string(r.algorithm)},
               {"epsilon", r.epsilon.str()},
               {"rho", r.rho.str()},
               {"target_ratio", r.target_ratio.str()},
               {"cost_model", to_string(cfg.algorithm == Algorithm::PsiHatBRD ? CostModel::PsiHat : CostModel::Original)},
               {"terminated", to_string(r.terminated)},
               {"iterations", r.iterations},
               {"max_iterations", r.max_iterations},
               {"initial_profile", profile_json(r.initial_profile)},
               {"final_profile", profile_json(r.final_profile)},
               {"applicable_bound", bound.str()},
               {"within_bound", within},
               {"bounds", bounds_json(b)},
               {"invariant_violations", violations},
               {"lemma_checks", lemma_checks},
               {"lemma_violations", lemma_violations}};
  return o;
}

int cmd_generate(const std::string& spec_path, const std::string& out_path, std::ostream& out) {
  const GenSpec spec = io::parse_spec(io::read_file(spec_path));
  const Game g = generate(spec);
  io::write_file(out_path, io::serialize_game(g));
  out << json{{"out", out_path}, {"players", g.num_players()}, {"resources", g.num_resources()}}.dump(2) << "\n";
  return kExitOk;
}

int cmd_solve(const std::string& game_path, const std::string& algorithm, const std::string& epsilon,
              const std::string& trace_path, std::optional<std::size_t> max_iters, const std::string& initial_path,
              const std::string& profile_out, std::ostream& out) {
  const Game g = load_game(game_path);
  RunConfig cfg;
  cfg.algorithm = parse_algorithm(algorithm);
  cfg.epsilon = parse_epsilon(epsilon);
  cfg.max_iterations = max_iters;
  if (!initial_path.empty()) {
    cfg.initial_profile = io::parse_profile(io::read_file(initial_path));
    const auto v = validate_profile(g, *cfg.initial_profile);
    if (!v.ok()) throw InputError("invalid initial profile: " + v.violations.front());
  }
  const SolveOutcome o = solve(g, cfg, max_iters.has_value());
  if (!trace_path.empty()) {
    std::ostringstream csv;
    write_trace_csv(csv, o.result);
    io::write_file(trace_path, csv.str());
  }
  if (!profile_out.empty()) {
    io::write_file(profile_out, io::serialize_profile(o.result.final_profile));
  }
  out << o.doc.dump(2) << "\n";
  return o.code;
}

int cmd_verify(const std::string& game_path, const std::string& profile_path, const std::string& rho_text,
               const std::string& model_name, std::ostream& out) {
  const Game g = load_game(game_path);
  const Profile p = io::parse_profile(io::read_file(profile_path));
  const auto v = validate_profile(g, p);
  if (!v.ok()) throw InputError("invalid profile: " + v.violations.front());
  const Rational rho = Rational::parse(rho_text);
  if (rho < Rational(1)) throw InputError("rho must be >= 1");
  CostModel model;
  if (model_name == "original") {
    model = CostModel::Original;
  } else if (model_name == "psihat") {
    model = CostModel::PsiHat;
  } else {
    throw InputError("unknown model " + model_name);
  }
  const bool fast = is_approx_pne(g, p, rho, model);
  std::optional<Rational> worst;
  json players = json::array();
  for (PlayerId u = 0; u < g.num_players(); ++u) {
    const Rational c = model_cost(g, p, u, model);
    const BestResponse br = best_response(g, p, u, model);
    const Rational ratio = c / br.cost;
    worst = worst ? max(*worst, ratio) : ratio;
    players.push_back(json{{"cost", c.str()}, {"best_response_cost", br.cost.str()}, {"ratio", ratio.str()}});
  }
  json brute = nullptr;
  try {
    brute = oracle::brute_verify_approx_pne(g, p, rho, model);
  } catch (const oracle::BudgetExceeded&) {
  }
  out << json{{"model", to_string(model)},
              {"rho", rho.str()},
              {"approx_pne", fast},
              {"brute_force", brute},
              {"worst_ratio", opt(worst)},
              {"players", players}}
             .dump(2)
      << "\n";
  if (!brute.is_null() && brute.get<bool>() != fast) return kExitBoundViolated;
  return fast ? kExitOk : kExitVerificationFailed;
}

int cmd_bench(const std::string& spec_path, std::size_t runs, const std::string& algorithm, const std::string& epsilon,
              std::ostream& out) {
  GenSpec spec = io::parse_spec(io::read_file(spec_path));
  RunConfig cfg;
  cfg.algorithm = parse_algorithm(algorithm);
  cfg.epsilon = parse_epsilon(epsilon);
  cfg.trace_level = TraceLevel::Summary;
  const std::uint64_t base = spec.seed;
  int code = kExitOk;
  out << "run,seed,N,E,d,symmetric,algorithm,epsilon,iterations,terminated,applicable_bound,direct_bound,"
         "direct_potential_bound,symmetric_log_bound,general_log_bound,alg2_symmetric_bound,alg2_general_bound,"
         "within_bound\n";
  auto cell = [](const std::optional<Rational>& r) { return r ? r->str() : std::string(); };
  for (std::size_t i = 0; i < runs; ++i) {
    spec.seed = base + i;
    const Game g = generate(spec);
    const GameParams params = derive_params(g);
    const RunResult r = run(g, cfg);
    const BoundsReport b = closed_form_bounds(g, cfg.epsilon, r.initial_profile);
    const Rational bound = applicable_bound(b, cfg.algorithm);
    const bool within = r.terminated == Termination::Converged &&
                        Rational(static_cast<long>(r.iterations)) <= bound && r.invariant_violations.empty();
    if (!within) code = kExitBoundViolated;
    out << i << ',' << spec.seed << ',' << params.N << ',' << params.E << ',' << params.d << ','
        << (params.symmetric ? "true" : "false") << ',' << to_string(cfg.algorithm) << ',' << cfg.epsilon << ','
        << r.iterations << ',' << to_string(r.terminated) << ',' << bound << ',' << b.direct_bound << ','
        << b.direct_potential_bound << ',' << cell(b.symmetric_log_bound) << ',' << b.general_log_bound << ','
        << cell(b.alg2_symmetric_bound) << ',' << b.alg2_general_bound << ',' << (within ? "true" : "false") << '\n';
  }
  return code;
}

int cmd_oracle(const std::string& game_path, std::size_t max_profiles, std::ostream& out) {
  const Game g = load_game(game_path);
  oracle::OracleLimits limits;
  limits.max_profiles = max_profiles;
  const oracle::PropertyReport rep = oracle::verify_potential_properties(g, limits);
  const auto [min_hat_profile, min_hat] = oracle::brute_min_potential(g, PotentialKind::PsiHatExact, limits);
  const auto [min_approx_profile, min_approx] = oracle::brute_min_potential(g, PotentialKind::RhoApproximate, limits);
  const oracle::Extrema x = oracle::brute_extrema(g, limits);
  const PotentialBounds pb = potential_upper_bounds(derive_params(g));
  const bool minimizer_is_pne = oracle::brute_verify_approx_pne(g, min_hat_profile, Rational(1), CostModel::PsiHat, limits);
  const bool dominated = x.psi_hat_max <= pb.psi_hat && x.approx_max <= pb.approx;

  out << json{{"profiles", rep.profiles},
              {"rho", rep.rho.str()},
              {"exact_potential", check_json(rep.exact_potential)},
              {"approx_potential", check_json(rep.approx_potential)},
              {"sandwich", check_json(rep.sandwich)},
              {"psi_hat_range", check_json(rep.psi_hat_range)},
              {"approx_range", check_json(rep.approx_range)},
              {"psi_hat_min", json{{"value", min_hat.str()}, {"profile", profile_json(min_hat_profile)}}},
              {"approx_min", json{{"value", min_approx.str()}, {"profile", profile_json(min_approx_profile)}}},
              {"psi_hat_minimizer_is_pne", minimizer_is_pne},
              {"extrema",
               json{{"c_hat_max", x.c_hat_max.str()},
                    {"c_max", x.c_max.str()},
                    {"psi_hat_max", x.psi_hat_max.str()},
                    {"approx_max", x.approx_max.str()}}},
              {"closed_form_bounds", json{{"psi_hat", pb.psi_hat.str()}, {"approx", pb.approx.str()}}},
              {"closed_form_dominates", dominated}}
             .dump(2)
      << "\n";
  return rep.ok() && minimizer_is_pne && dominated ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate pure Nash equilibria of weighted congestion games", "wcg"};
  app.require_subcommand(1);

  std::string spec_path, out_path, game_path, algorithm = "alg1", epsilon = "1/10", trace_path, profile_path,
                                              rho, model = "original", initial_path, profile_out;
  std::optional<std::size_t> max_iters;
  std::size_t runs = 1, max_profiles = oracle::OracleLimits{}.max_profiles;

  auto* gen = app.add_subcommand("generate", "Generate a game from a generator spec");
  gen->add_option("--spec", spec_path)->required();
  gen->add_option("--out", out_path)->required();

  auto* sol = app.add_subcommand("solve", "Run a best-response dynamic");
  sol->add_option("--game", game_path)->required();
  sol->add_option("--algorithm", algorithm)->check(CLI::IsMember({"alg1", "alg2"}));
  sol->add_option("--epsilon", epsilon);
  sol->add_option("--trace", trace_path, "Write the move trace as CSV");
  sol->add_option("--max-iters", max_iters);
  sol->add_option("--initial", initial_path, "Start profile file");
  sol->add_option("--profile-out", profile_out, "Write the final profile");

  auto* ver = app.add_subcommand("verify", "Check a profile is a rho-approximate equilibrium");
  ver->add_option("--game", game_path)->required();
  ver->add_option("--profile", profile_path)->required();
  ver->add_option("--rho", rho)->required();
  ver->add_option("--model", model)->check(CLI::IsMember({"original", "psihat"}));

  auto* ben = app.add_subcommand("bench", "Iterations against bounds over seeded instances, as CSV");
  ben->add_option("--spec", spec_path)->required();
  ben->add_option("--runs", runs);
  ben->add_option("--algorithm", algorithm)->check(CLI::IsMember({"alg1", "alg2"}));
  ben->add_option("--epsilon", epsilon);

  auto* orc = app.add_subcommand("oracle", "Brute-force potential checks on a small game");
  orc->add_option("--game", game_path)->required();
  orc->add_option("--max-profiles", max_profiles);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (*gen) return cmd_generate(spec_path, out_path, out);
    if (*sol) return cmd_solve(game_path, algorithm, epsilon, trace_path, max_iters, initial_path, profile_out, out);
    if (*ver) return cmd_verify(game_path, profile_path, rho, model, out);
    if (*ben) return cmd_bench(spec_path, runs, algorithm, epsilon, out);
    if (*orc) return cmd_oracle(game_path, max_profiles, out);
  } catch (const oracle::BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudgetExceeded;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NoPath& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace wcg
