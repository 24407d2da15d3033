// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"
#include "wcg/cli.hpp"
#include "wcg/dynamics.hpp"
#include "wcg/io.hpp"
#include "wcg/oracle.hpp"
#include "wcg/paths.hpp"
#include "wcg/psi.hpp"

using namespace wcg;

namespace {

constexpr std::size_t kCorpus = 200;
const Rational kEpsilons[] = {Rational(1, 10), Rational(1, 4), Rational(1, 2)};

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Counter {
  std::size_t checked = 0, failed = 0;
  std::string first;
  void operator()(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) first = what();
  }
  std::string str(const char* name) const {
    std::ostringstream os;
    os << name << " " << (checked - failed) << "/" << checked;
    return os.str();
  }
};

std::string join(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

Outcome finish(std::initializer_list<const Counter*> counters, std::string detail) {
  Outcome o;
  o.detail = std::move(detail);
  for (const Counter* c : counters) {
    if (c->failed > 0) {
      o.pass = false;
      o.detail += "; first failure: " + c->first;
    }
  }
  return o;
}

const std::vector<Game>& corpus() {
  static const std::vector<Game> games = fixtures::corpus(kCorpus);
  return games;
}

const std::vector<oracle::Extrema>& extrema() {
  static const std::vector<oracle::Extrema> xs = [] {
    std::vector<oracle::Extrema> out;
    for (const Game& g : corpus()) out.push_back(oracle::brute_extrema(g));
    return out;
  }();
  return xs;
}

Outcome criterion1() {
  SplitMix64 rng(101);
  Counter la, lb, ld, dp, lc;
  std::size_t skipped = 0, lc_total = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = fixtures::random_multiset(rng, 1, 6);
    const Rational b = fixtures::random_rational(rng, Rational(1), Rational(4));
    std::vector<Rational> mb = m;
    mb.push_back(b);
    Rational L = 0;
    for (const auto& x : m) L += x;
    const PsiTable t = psi_table(m, 5);
    const PsiTable tb = psi_insert(t, b);
    auto tag = [&](unsigned k) { return "trial " + std::to_string(trial) + " k=" + std::to_string(k); };
    for (unsigned k = 0; k <= 5; ++k) {
      const Rational ref = oracle::psi_by_enumeration(k, m);
      dp(t[k] == ref && tb[k] == oracle::psi_by_enumeration(k, mb), [&] { return tag(k) + " DP vs enumeration"; });
      if (k == 0) continue;
      const Rational kk(static_cast<long>(k));
      la(pow(L, k) <= ref && ref <= factorial(k) * pow(L, k), [&] { return tag(k) + " power sandwich"; });
      lb(ref <= kk * oracle::psi_by_enumeration(1, m) * oracle::psi_by_enumeration(k - 1, m),
         [&] { return tag(k) + " product bound"; });
      ld(oracle::psi_by_enumeration(k, mb) - ref == kk * b * oracle::psi_by_enumeration(k - 1, mb),
         [&] { return tag(k) + " insertion identity"; });
      const auto v = fixtures::check_root_inequality(k, m, b);
      ++lc_total;
      if (v == fixtures::Certified::Skipped) {
        ++skipped;
      } else {
        lc(v == fixtures::Certified::Holds, [&] { return tag(k) + " root inequality"; });
      }
    }
  }
  const bool skip_ok = skipped * 20 <= lc_total;
  Outcome o = finish({&la, &lb, &ld, &dp, &lc},
                     join({la.str("power-sandwich"), lb.str("product-bound"), ld.str("insertion-identity"),
                           dp.str("dp-vs-enumeration"), lc.str("root-inequality"),
                           "root-inequality skipped " + std::to_string(skipped) + "/" + std::to_string(lc_total)}));
  if (!skip_ok) {
    o.pass = false;
    o.detail += "; skip rate above 5%";
  }
  return o;
}

std::vector<oracle::PropertyReport>& reports() {
  static std::vector<oracle::PropertyReport> rs = [] {
    std::vector<oracle::PropertyReport> out;
    for (const Game& g : corpus()) out.push_back(oracle::verify_potential_properties(g));
    return out;
  }();
  return rs;
}

Outcome criterion2() {
  Counter exact, sandwich;
  std::size_t profiles = 0;
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& r = reports()[i];
    profiles += r.profiles;
    exact.checked += r.exact_potential.checked;
    sandwich.checked += r.sandwich.checked;
    if (!r.exact_potential.ok()) {
      if (exact.failed == 0) exact.first = "game " + std::to_string(i) + " " + *r.exact_potential.first_counterexample;
      exact.failed += r.exact_potential.failed;
    }
    if (!r.sandwich.ok()) {
      if (sandwich.failed == 0) sandwich.first = "game " + std::to_string(i) + " " + *r.sandwich.first_counterexample;
      sandwich.failed += r.sandwich.failed;
    }
  }
  return finish({&exact, &sandwich}, join({std::to_string(corpus().size()) + " games",
                                           std::to_string(profiles) + " profiles", exact.str("exact-potential"),
                                           sandwich.str("cost-sandwich")}));
}

Outcome criterion3() {
  Counter approx, affine;
  std::size_t games_failing = 0;
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& r = reports()[i];
    approx.checked += r.approx_potential.checked;
    if (!r.approx_potential.ok()) {
      ++games_failing;
      if (approx.failed == 0) {
        approx.first = "game " + std::to_string(i) + " (rho " + r.rho.str() + ") " + *r.approx_potential.first_counterexample;
      }
      approx.failed += r.approx_potential.failed;
    }
  }
  for (const Game& g : fixtures::unweighted_affine_corpus(50)) {
    oracle::for_each_profile(g, [&](const Profile& p) {
      const Rational phi = potential_approx(g, p);
      for (PlayerId u = 0; u < g.num_players(); ++u) {
        for (const Strategy& s : oracle::enumerate_strategies(g, u)) {
          const Profile q = deviate(g, p, u, s);
          affine(potential_approx(g, q) - phi == player_cost(g, q, u) - player_cost(g, p, u),
                 [&] { return std::string("unweighted affine deviation"); });
        }
      }
    });
  }
  return finish({&approx, &affine},
                join({approx.str("approximate-potential inequality"),
                      std::to_string(games_failing) + "/" + std::to_string(corpus().size()) + " games with a violation",
                      affine.str("unweighted-affine exact")}));
}

struct RunStats {
  Counter converged, direct, log_general, log_symmetric, brute_hat, brute_orig, invariants, potential_ineq, gain_ineq;
  Counter lemma;
  std::size_t runs = 0, iterations = 0, max_iterations = 0;
  std::map<std::string, std::size_t> lemma_checks;
};

RunStats& stats(Algorithm a) {
  static RunStats s1, s2;
  static bool done = false;
  if (!done) {
    done = true;
    for (std::size_t i = 0; i < corpus().size(); ++i) {
      const Game& g = corpus()[i];
      const GameParams params = derive_params(g);
      const auto& x = extrema()[i];
      for (const Rational& eps : kEpsilons) {
        for (Algorithm alg : {Algorithm::PsiHatBRD, Algorithm::RefinedBRD}) {
          RunStats& s = alg == Algorithm::PsiHatBRD ? s1 : s2;
          RunConfig cfg;
          cfg.algorithm = alg;
          cfg.epsilon = eps;
          const RunResult r = run(g, cfg);
          ++s.runs;
          s.iterations += r.iterations;
          s.max_iterations = std::max(s.max_iterations, r.iterations);
          auto tag = [&] { return "game " + std::to_string(i) + " eps " + eps.str(); };
          s.converged(r.terminated == Termination::Converged, tag);
          const BoundsReport b = bounds_report(params, eps, potential_psi_hat(g, r.initial_profile), x.c_hat_max,
                                               x.c_max, x.psi_hat_min, x.approx_min);
          const Rational T(static_cast<long>(r.iterations));
          if (alg == Algorithm::PsiHatBRD) {
            s.direct(T <= b.direct_bound && T <= b.direct_potential_bound, tag);
            s.log_general(T <= b.general_log_bound, tag);
            if (b.symmetric_log_bound) s.log_symmetric(T <= *b.symmetric_log_bound, tag);
            s.brute_hat(oracle::brute_verify_approx_pne(g, r.final_profile, r.target_ratio, CostModel::PsiHat), tag);
            s.brute_orig(oracle::brute_verify_approx_pne(g, r.final_profile,
                                                         factorial(params.d) / (Rational(1) - eps),
                                                         CostModel::Original),
                         tag);
            auto audit = audit_trace(g, r);
            s.invariants(r.invariant_violations.empty() && audit.empty(), [&] {
              return tag() + " " + (r.invariant_violations.empty() ? audit.front() : r.invariant_violations.front());
            });
          } else {
            s.log_general(T <= b.alg2_general_bound, tag);
            if (b.alg2_symmetric_bound) s.log_symmetric(T <= *b.alg2_symmetric_bound, tag);
            s.brute_orig(oracle::brute_verify_approx_pne(g, r.final_profile, r.target_ratio, CostModel::Original), tag);
            const auto audit = audit_trace(g, r);
            bool replay_ok = true;
            for (const auto& v : audit) {
              if (v.find("does not match replay") != std::string::npos || v.find("out of order") != std::string::npos) {
                replay_ok = false;
              }
            }
            s.invariants(replay_ok, [&] { return tag() + " replay mismatch"; });
            for (const TraceEntry& e : r.trace) {
              const Rational gain = e.mover_cost_before - r.rho * e.mover_cost_after;
              s.potential_ineq(e.potential_before - e.potential_after >= gain, [&] {
                return tag() + " t=" + std::to_string(e.t) + " potential drop " +
                       (e.potential_before - e.potential_after).str() + " < c - rho c' = " + gain.str();
              });
              s.gain_ineq(gain >= eps * e.mover_cost_before && e.potential_after < e.potential_before,
                          [&] { return tag() + " t=" + std::to_string(e.t) + " gain below eps c"; });
            }
          }
          const LemmaReport lr = check_per_step_lemmas(g, r, params, eps);
          for (const auto& [name, n] : lr.checks) s.lemma_checks[name] += n;
          for (const auto& [name, n] : lr.checks) {
            std::size_t bad = 0;
            for (const auto& v : lr.violations) bad += v.lemma == name;
            s.lemma.checked += n;
            s.lemma.failed += bad;
          }
          if (!lr.ok() && s.lemma.first.empty()) {
            const auto& v = lr.violations.front();
            s.lemma.first = tag() + " " + v.lemma + " t=" + std::to_string(v.t) + " u=" + std::to_string(v.u) +
                            " lhs " + v.lhs.str() + " < rhs " + v.rhs.str();
          }
        }
      }
    }
  }
  return a == Algorithm::PsiHatBRD ? s1 : s2;
}

Outcome criterion4() {
  const RunStats& s = stats(Algorithm::PsiHatBRD);
  return finish({&s.converged, &s.direct, &s.log_general, &s.log_symmetric, &s.brute_hat, &s.brute_orig,
                 &s.invariants},
                join({std::to_string(s.runs) + " runs", "max iterations " + std::to_string(s.max_iterations),
                      s.converged.str("converged"), s.direct.str("direct-bound"), s.log_general.str("general-log-bound"),
                      s.log_symmetric.str("symmetric-log-bound"), s.brute_hat.str("psihat-certified"),
                      s.brute_orig.str("original-certified"), s.invariants.str("trace-invariants")}));
}

Outcome criterion5() {
  const RunStats& s = stats(Algorithm::RefinedBRD);
  return finish({&s.converged, &s.log_general, &s.log_symmetric, &s.brute_orig, &s.invariants, &s.potential_ineq,
                 &s.gain_ineq},
                join({std::to_string(s.runs) + " runs", "max iterations " + std::to_string(s.max_iterations),
                      s.converged.str("converged"), s.log_general.str("general-log-bound"),
                      s.log_symmetric.str("symmetric-log-bound"), s.brute_orig.str("certified"),
                      s.invariants.str("trace-replay"), s.potential_ineq.str("potential-drop >= c - rho c'"),
                      s.gain_ineq.str("c - rho c' >= eps c")}));
}

Outcome criterion6() {
  const RunStats& a = stats(Algorithm::PsiHatBRD);
  const RunStats& b = stats(Algorithm::RefinedBRD);
  std::ostringstream os;
  for (const auto* s : {&a, &b}) {
    for (const auto& [name, n] : s->lemma_checks) os << name << " " << n << " checks, ";
  }
  os << a.lemma.str("alg1 lemmas") << ", " << b.lemma.str("alg2 lemmas");
  return finish({&a.lemma, &b.lemma}, os.str());
}

Outcome criterion7() {
  Counter dominate, floor_;
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& x = extrema()[i];
    const auto pb = potential_upper_bounds(derive_params(corpus()[i]));
    dominate(x.psi_hat_max <= pb.psi_hat && x.approx_max <= pb.approx,
             [&] { return "game " + std::to_string(i) + " maximum above closed-form bound"; });
    floor_(x.psi_hat_min >= Rational(1),
           [&] { return "game " + std::to_string(i) + " min exact potential " + x.psi_hat_min.str(); });
  }
  return finish({&dominate, &floor_}, join({dominate.str("closed-form dominates"), floor_.str("exact-potential >= 1")}));
}

Outcome criterion8() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "wcg_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto f = [&](const char* name) { return (dir / name).string(); };
  io::write_file(f("spec.json"), io::serialize_spec(fixtures::corpus_spec(8)));
  io::write_file(f("net.json"), io::serialize_spec(fixtures::network_spec(2)));
  io::write_file(f("game.json"), io::serialize_game(corpus()[1]));
  io::write_file(f("profile.json"), io::serialize_profile(default_profile(corpus()[1])));

  const std::vector<std::vector<std::string>> commands = {
      {"generate", "--spec", f("spec.json"), "--out", f("gen.json")},
      {"generate", "--spec", f("net.json"), "--out", f("gen_net.json")},
      {"solve", "--game", f("game.json"), "--algorithm", "alg1", "--epsilon", "1/10", "--trace", f("t1.csv")},
      {"solve", "--game", f("game.json"), "--algorithm", "alg2", "--epsilon", "1/4", "--trace", f("t2.csv")},
      {"solve", "--game", f("gen_net.json"), "--algorithm", "alg1", "--epsilon", "1/2"},
      {"verify", "--game", f("game.json"), "--profile", f("profile.json"), "--rho", "3/2", "--model", "original"},
      {"bench", "--spec", f("spec.json"), "--runs", "10"},
      {"bench", "--spec", f("spec.json"), "--runs", "10", "--algorithm", "alg2"},
      {"oracle", "--game", f("game.json")},
  };
  Counter same;
  for (const auto& cmd : commands) {
    std::string outputs[2];
    int codes[2];
    for (int rep = 0; rep < 2; ++rep) {
      std::ostringstream out, err;
      codes[rep] = cli_main(cmd, out, err);
      outputs[rep] = out.str() + "\x1f" + err.str();
      for (const char* name : {"gen.json", "gen_net.json", "t1.csv", "t2.csv"}) {
        if (fs::exists(f(name))) outputs[rep] += "\x1f" + io::read_file(f(name));
      }
    }
    same(outputs[0] == outputs[1] && codes[0] == codes[1], [&] { return cmd[0] + " output differs"; });
  }
  fs::remove_all(dir);

  Counter agree;
  std::size_t graphs = 0;
  for (std::size_t i = 0; i < 150; ++i) {
    const Game net = generate(fixtures::network_spec(i));
    Game ex = net;
    bool small = true;
    for (PlayerId u = 0; u < net.num_players() && small; ++u) {
      const auto& ps = std::get<PathStrategies>(net.strategy_sets[u]);
      auto paths = enumerate_simple_paths(*net.graph, ps.origin, ps.destination, 8);
      if (paths) {
        ex.strategy_sets[u] = ExplicitStrategies{*paths};
      } else {
        small = false;
      }
    }
    if (!small) continue;
    ++graphs;
    oracle::for_each_profile(net, [&](const Profile& p) {
      for (PlayerId u = 0; u < net.num_players(); ++u) {
        for (CostModel m : {CostModel::Original, CostModel::PsiHat}) {
          const auto a = best_response(net, p, u, m);
          const auto b = best_response(ex, p, u, m);
          agree(a.cost == b.cost && is_member(net, u, a.strategy) &&
                    a.cost == deviation_cost(net, p, u, a.strategy, m),
                [&] { return "network " + std::to_string(i) + " player " + std::to_string(u); });
        }
      }
    });
  }
  return finish({&same, &agree}, join({same.str("repeatable commands"), std::to_string(graphs) + " small graphs",
                                       agree.str("path/explicit best responses")}));
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 psi identities", criterion1},
      {"2 exact potential and cost sandwich", criterion2},
      {"3 approximate potential", criterion3},
      {"4 psi-hat dynamic end to end", criterion4},
      {"5 refined dynamic end to end", criterion5},
      {"6 per-step lemmas", criterion6},
      {"7 bound sanity", criterion7},
      {"8 determinism and path agreement", criterion8},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " (" << ms.count() << " ms)"
              << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
