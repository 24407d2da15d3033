#include "support.hpp"

#include <algorithm>

#include "wcg/psi.hpp"

namespace wcg::fixtures {

Game make_game(unsigned d, std::vector<Rational> weights, std::vector<std::vector<Rational>> coeffs,
               std::vector<std::vector<Strategy>> sets) {
  Game g;
  g.degree = d;
  g.weights = std::move(weights);
  Rational W = 1;
  for (const auto& w : g.weights) W = max(W, w);
  g.declared_W = W;
  std::optional<Rational> lo, hi;
  for (auto& c : coeffs) {
    for (const auto& a : c) {
      if (a.sign() <= 0) continue;
      lo = lo ? min(*lo, a) : a;
      hi = hi ? max(*hi, a) : a;
    }
    g.latencies.push_back(LatencyPoly{std::move(c)});
  }
  g.declared_A = lo ? *hi / *lo : Rational(1);
  for (auto& s : sets) g.strategy_sets.emplace_back(ExplicitStrategies{std::move(s)});
  return g;
}

Game parallel_links(std::size_t players, std::vector<Rational> slopes) {
  std::vector<std::vector<Rational>> coeffs;
  std::vector<Strategy> singles;
  for (std::size_t e = 0; e < slopes.size(); ++e) {
    coeffs.push_back({Rational(0), slopes[e]});
    singles.push_back({e});
  }
  return make_game(1, std::vector<Rational>(players, Rational(1)), std::move(coeffs),
                   std::vector<std::vector<Strategy>>(players, singles));
}

Rational random_rational(SplitMix64& rng, const Rational& lo, const Rational& hi) {
  const long r = static_cast<long>(rng.uniform(1, 8));
  const mpz_class a = ceil(lo * Rational(r));
  const mpz_class b = floor(hi * Rational(r));
  const long q = static_cast<long>(rng.uniform(a.get_ui(), b.get_ui()));
  return Rational(q, r);
}

std::vector<Rational> random_multiset(SplitMix64& rng, std::size_t min_size, std::size_t max_size) {
  std::vector<Rational> m(rng.uniform(min_size, max_size));
  for (auto& x : m) x = random_rational(rng, Rational(1), Rational(4));
  std::sort(m.begin(), m.end());
  return m;
}

GenSpec corpus_spec(std::size_t i) {
  SplitMix64 rng(0xC0FFEE + i);
  static const Rational Ws[] = {Rational(1), Rational(3, 2), Rational(2), Rational(5, 2), Rational(3)};
  static const Rational As[] = {Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  GenSpec s;
  s.seed = 7000 + i;
  s.N = rng.uniform(2, 4);
  s.E = rng.uniform(2, 5);
  s.d = static_cast<unsigned>(rng.uniform(1, 3));
  s.W = Ws[rng.uniform(0, 4)];
  s.A = As[rng.uniform(0, 3)];
  s.symmetric = i % 2 == 0;
  s.strategy_size_min = 1;
  s.strategy_size_max = rng.uniform(1, std::min<std::size_t>(2, s.E));
  std::size_t available = 0;
  for (std::size_t k = 1; k <= s.strategy_size_max; ++k) available += k == 1 ? s.E : s.E * (s.E - 1) / 2;
  s.strategies_per_player = std::min<std::size_t>(rng.uniform(1, 3), available);
  return s;
}

std::vector<Game> corpus(std::size_t count) {
  std::vector<Game> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen_random_game(corpus_spec(i)));
  return out;
}

std::vector<Game> unweighted_affine_corpus(std::size_t count) {
  std::vector<Game> out;
  for (std::size_t i = 0; i < count; ++i) {
    GenSpec s = corpus_spec(i);
    s.seed += 100000;
    s.d = 1;
    s.W = 1;
    out.push_back(gen_random_game(s));
  }
  return out;
}

GenSpec network_spec(std::size_t i) {
  SplitMix64 rng(0xBEEF + i);
  GenSpec s;
  s.seed = 9000 + i;
  s.N = rng.uniform(1, 3);
  s.d = static_cast<unsigned>(rng.uniform(1, 3));
  s.W = i % 3 == 0 ? Rational(1) : Rational(2);
  s.A = 2;
  s.symmetric = i % 2 == 0;
  NetworkSpec n;
  n.nodes = rng.uniform(2, 5);
  n.edge_num = 1;
  n.edge_den = 2;
  n.max_parallel = rng.uniform(1, 2);
  n.od_policy = i % 4 == 1 ? OdPolicy::Random : OdPolicy::Common;
  s.network = n;
  return s;
}

Certified check_root_inequality(unsigned k, std::span<const Rational> m, const Rational& b) {
  std::vector<Rational> mb(m.begin(), m.end());
  mb.push_back(b);
  const Rational lhs = psi(k, mb);
  const Rational x = factorial(k) * pow(b, k);
  const Rational y = psi(k, m);
  for (unsigned bits = 96; bits <= 768; bits *= 2) {
    const RootBounds rx = kth_root_bounds(x, k, bits);
    const RootBounds ry = kth_root_bounds(y, k, bits);
    if (rx.exact && ry.exact) return lhs <= pow(rx.lo + ry.lo, k) ? Certified::Holds : Certified::Violated;
    if (lhs <= pow(rx.lo + ry.lo, k)) return Certified::Holds;
    if (lhs > pow(rx.hi + ry.hi, k)) return Certified::Violated;
  }
  return Certified::Skipped;
}

}  // namespace wcg::fixtures
