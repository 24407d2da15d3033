#include "wcg/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "wcg/paths.hpp"

namespace wcg::oracle {

namespace {

// Number of exponent vectors of length m summing to k, saturating at cap+1.
std::size_t compositions(unsigned k, std::size_t m, std::size_t cap) {
  if (m == 0) return k == 0 ? 1 : 0;
  // C(k + m - 1, k), built incrementally.
  mpz_class c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c *= static_cast<unsigned long>(m - 1 + i);
    c /= i;
    if (c > static_cast<unsigned long>(cap)) return cap + 1;
  }
  return c.get_ui();
}

void sum_monomials(std::span<const Rational> m, std::size_t i, unsigned left, const Rational& prod, Rational& acc) {
  if (i + 1 == m.size()) {
    acc += prod * pow(m[i], left);
    return;
  }
  for (unsigned r = 0; r <= left; ++r) sum_monomials(m, i + 1, left - r, prod * pow(m[i], r), acc);
}

class PsiCache {
 public:
  explicit PsiCache(const OracleLimits& limits) : limits_(limits) {}

  const Rational& get(unsigned k, const std::vector<Rational>& m) {
    auto key = std::make_pair(k, m);
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(std::move(key), psi_by_enumeration(k, m, limits_)).first;
    return it->second;
  }

 private:
  const OracleLimits& limits_;
  std::map<std::pair<unsigned, std::vector<Rational>>, Rational> memo_;
};

Rational chat(const Game& game, const Profile& p, PlayerId u, PsiCache& cache) {
  Rational sum = 0;
  for (ResourceId e : p.strategies[u]) {
    const auto m = resource_multiset(game, p, e);
    const auto& a = game.latencies[e].coeffs;
    for (unsigned k = 0; k < a.size(); ++k) {
      if (!a[k].is_zero()) sum += a[k] * cache.get(k, m);
    }
  }
  return game.weights[u] * sum;
}

Rational phihat(const Game& game, const Profile& p, PsiCache& cache) {
  Rational sum = 0;
  for (ResourceId e = 0; e < game.num_resources(); ++e) {
    const auto m = resource_multiset(game, p, e);
    const auto& a = game.latencies[e].coeffs;
    for (unsigned k = 0; k < a.size(); ++k) {
      if (!a[k].is_zero()) sum += a[k] / Rational(static_cast<long>(k + 1)) * cache.get(k + 1, m);
    }
  }
  return sum;
}

Rational c_orig(const Game& game, const Profile& p, PlayerId u) {
  Rational sum = 0;
  for (ResourceId e : p.strategies[u]) {
    const Rational x = resource_load(game, p, e);
    Rational xk = 1;
    for (const Rational& a : game.latencies[e].coeffs) {
      sum += a * xk;
      xk *= x;
    }
  }
  return game.weights[u] * sum;
}

std::vector<std::vector<Strategy>> all_strategy_sets(const Game& game, const OracleLimits& limits) {
  std::vector<std::vector<Strategy>> sets;
  for (PlayerId u = 0; u < game.num_players(); ++u) sets.push_back(enumerate_strategies(game, u, limits));
  return sets;
}

std::string describe(const Profile& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t u = 0; u < p.strategies.size(); ++u) {
    if (u) os << ' ';
    os << '{';
    for (std::size_t i = 0; i < p.strategies[u].size(); ++i) os << (i ? "," : "") << p.strategies[u][i];
    os << '}';
  }
  return os.str() + ')';
}

void record(PropertyCheck& check, bool holds, const std::function<std::string()>& what) {
  ++check.checked;
  if (holds) return;
  ++check.failed;
  if (!check.first_counterexample) check.first_counterexample = what();
}

}  // namespace

Rational psi_by_enumeration(unsigned k, std::span<const Rational> multiset, const OracleLimits& limits) {
  if (k == 0) return 1;
  if (multiset.empty()) return 0;
  if (compositions(k, multiset.size(), limits.max_exponent_vectors) > limits.max_exponent_vectors) {
    throw BudgetExceeded("too many exponent vectors");
  }
  Rational acc = 0;
  sum_monomials(multiset, 0, k, Rational(1), acc);
  return factorial(k) * acc;
}

std::vector<Strategy> enumerate_strategies(const Game& game, PlayerId u, const OracleLimits& limits) {
  const auto& set = game.strategy_sets.at(u);
  std::vector<Strategy> out;
  if (const auto* ex = std::get_if<ExplicitStrategies>(&set)) {
    out = ex->strategies;
    std::sort(out.begin(), out.end());
  } else {
    const auto& ps = std::get<PathStrategies>(set);
    if (!game.graph) throw std::invalid_argument("path strategies need a graph");
    auto paths = enumerate_simple_paths(*game.graph, ps.origin, ps.destination, limits.max_strategies_per_player);
    if (!paths) throw BudgetExceeded("too many paths for player " + std::to_string(u));
    out = std::move(*paths);
  }
  if (out.size() > limits.max_strategies_per_player) {
    throw BudgetExceeded("too many strategies for player " + std::to_string(u));
  }
  return out;
}

std::size_t count_profiles(const Game& game, const OracleLimits& limits) {
  std::size_t total = 1;
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    const std::size_t n = enumerate_strategies(game, u, limits).size();
    if (n != 0 && total > limits.max_profiles / n) throw BudgetExceeded("too many profiles");
    total *= n;
    if (total > limits.max_profiles) throw BudgetExceeded("too many profiles");
  }
  return total;
}

void for_each_profile(const Game& game, const std::function<void(const Profile&)>& visit, const OracleLimits& limits) {
  count_profiles(game, limits);
  const auto sets = all_strategy_sets(game, limits);
  const std::size_t n = sets.size();
  for (const auto& s : sets) {
    if (s.empty()) return;
  }
  std::vector<std::size_t> idx(n, 0);
  Profile p;
  for (std::size_t u = 0; u < n; ++u) p.strategies.push_back(sets[u][0]);
  while (true) {
    visit(p);
    std::size_t u = n;
    while (u > 0) {
      --u;
      if (++idx[u] < sets[u].size()) {
        p.strategies[u] = sets[u][idx[u]];
        break;
      }
      idx[u] = 0;
      p.strategies[u] = sets[u][0];
      if (u == 0) return;
    }
    if (n == 0) return;
  }
}

std::vector<Profile> enumerate_profiles(const Game& game, const OracleLimits& limits) {
  std::vector<Profile> out;
  for_each_profile(game, [&](const Profile& p) { out.push_back(p); }, limits);
  return out;
}

Rational psi_hat_cost(const Game& game, const Profile& profile, PlayerId u, const OracleLimits& limits) {
  PsiCache cache(limits);
  return chat(game, profile, u, cache);
}

Rational psi_hat_potential(const Game& game, const Profile& profile, const OracleLimits& limits) {
  PsiCache cache(limits);
  return phihat(game, profile, cache);
}

Rational approx_potential(const Game& game, const Profile& profile) {
  Rational sum = 0;
  for (ResourceId e = 0; e < game.num_resources(); ++e) {
    const Rational x = resource_load(game, profile, e);
    const auto& a = game.latencies[e].coeffs;
    for (unsigned k = 0; k < a.size(); ++k) {
      if (k == 0) {
        sum += a[0] * x;
      } else {
        sum += a[k] * (pow(x, k + 1) / Rational(static_cast<long>(k + 1)) + pow(x, k) / Rational(2));
      }
    }
  }
  return sum;
}

Rational cost(const Game& game, const Profile& profile, PlayerId u, CostModel model, const OracleLimits& limits) {
  return model == CostModel::Original ? c_orig(game, profile, u) : psi_hat_cost(game, profile, u, limits);
}

std::pair<Profile, Rational> brute_min_potential(const Game& game, PotentialKind kind, const OracleLimits& limits) {
  PsiCache cache(limits);
  std::optional<std::pair<Profile, Rational>> best;
  for_each_profile(
      game,
      [&](const Profile& p) {
        Rational v = kind == PotentialKind::PsiHatExact ? phihat(game, p, cache) : approx_potential(game, p);
        if (!best || v < best->second) best = std::make_pair(p, std::move(v));
      },
      limits);
  if (!best) throw std::invalid_argument("game has no profiles");
  return *best;
}

bool brute_verify_approx_pne(const Game& game, const Profile& profile, const Rational& rho, CostModel model,
                             const OracleLimits& limits) {
  PsiCache cache(limits);
  auto c = [&](const Profile& p, PlayerId u) {
    return model == CostModel::Original ? c_orig(game, p, u) : chat(game, p, u, cache);
  };
  for (PlayerId u = 0; u < game.num_players(); ++u) {
    const Rational current = c(profile, u);
    Profile alt = profile;
    for (const Strategy& s : enumerate_strategies(game, u, limits)) {
      alt.strategies[u] = s;
      if (current > rho * c(alt, u)) return false;
    }
  }
  return true;
}

PropertyReport verify_potential_properties(const Game& game, const OracleLimits& limits) {
  const GameParams params = derive_params(game);
  PropertyReport rep;
  rep.rho = rho_star(params.d, params.W);
  const Rational dfact = factorial(params.d);
  const auto sets = all_strategy_sets(game, limits);
  PsiCache cache(limits);
  const std::size_t n = game.num_players();

  for_each_profile(
      game,
      [&](const Profile& p) {
        ++rep.profiles;
        const Rational ph = phihat(game, p, cache);
        const Rational pa = approx_potential(game, p);
        Rational chat_total = 0, c_total = 0;
        std::vector<Rational> ch(n), co(n);
        for (PlayerId u = 0; u < n; ++u) {
          ch[u] = chat(game, p, u, cache);
          co[u] = c_orig(game, p, u);
          chat_total += ch[u];
          c_total += co[u];
          record(rep.sandwich, co[u] <= ch[u] && ch[u] <= dfact * co[u], [&] {
            return describe(p) + " player " + std::to_string(u) + ": c=" + co[u].str() + " c_hat=" + ch[u].str();
          });
        }
        if (n > 0) {
          record(rep.psi_hat_range, Rational(1) <= ph && ph <= chat_total, [&] {
            return describe(p) + ": Phi_hat=" + ph.str() + " C_hat=" + chat_total.str();
          });
        }
        record(rep.approx_range, pa <= c_total,
               [&] { return describe(p) + ": Phi=" + pa.str() + " C=" + c_total.str(); });

        for (PlayerId u = 0; u < n; ++u) {
          Profile q = p;
          for (const Strategy& s : sets[u]) {
            if (s == p.strategies[u]) continue;
            q.strategies[u] = s;
            const Rational dph = phihat(game, q, cache) - ph;
            const Rational dch = chat(game, q, u, cache) - ch[u];
            record(rep.exact_potential, dph == dch, [&] {
              return describe(p) + " -> " + describe(q) + ": dPhi_hat=" + dph.str() + " dc_hat=" + dch.str();
            });
            const Rational drop = pa - approx_potential(game, q);
            const Rational gain = co[u] - rep.rho * c_orig(game, q, u);
            record(rep.approx_potential, drop >= gain, [&] {
              return describe(p) + " -> " + describe(q) + ": Phi drop=" + drop.str() + " c - rho c'=" + gain.str();
            });
          }
        }
      },
      limits);
  return rep;
}

Extrema brute_extrema(const Game& game, const OracleLimits& limits) {
  PsiCache cache(limits);
  std::optional<Extrema> x;
  for_each_profile(
      game,
      [&](const Profile& p) {
        Rational chm = 0, cm = 0;
        for (PlayerId u = 0; u < game.num_players(); ++u) {
          chm = max(chm, chat(game, p, u, cache));
          cm = max(cm, c_orig(game, p, u));
        }
        const Rational ph = phihat(game, p, cache);
        const Rational pa = approx_potential(game, p);
        if (!x) {
          x = Extrema{chm, cm, ph, ph, pa, pa};
          return;
        }
        x->c_hat_max = max(x->c_hat_max, chm);
        x->c_max = max(x->c_max, cm);
        x->psi_hat_min = min(x->psi_hat_min, ph);
        x->psi_hat_max = max(x->psi_hat_max, ph);
        x->approx_min = min(x->approx_min, pa);
        x->approx_max = max(x->approx_max, pa);
      },
      limits);
  if (!x) throw std::invalid_argument("game has no profiles");
  return *x;
}

}  // namespace wcg::oracle
