#pragma once

#include <span>
#include <vector>

#include "wcg/game.hpp"
#include "wcg/instance_gen.hpp"

namespace wcg::fixtures {

/// Players of the given weights, one latency per resource, explicit sets.
Game make_game(unsigned d, std::vector<Rational> weights, std::vector<std::vector<Rational>> coeffs,
               std::vector<std::vector<Strategy>> sets);

/// N unit players on m parallel resources, each resource c(x) = slope_e * x,
/// every player may use any single resource.
Game parallel_links(std::size_t players, std::vector<Rational> slopes);

/// Uniform q/r in [lo, hi] with 1 <= r <= 8.
Rational random_rational(SplitMix64& rng, const Rational& lo, const Rational& hi);

std::vector<Rational> random_multiset(SplitMix64& rng, std::size_t min_size, std::size_t max_size);

/// Generator spec of game i in the small test corpus: N <= 4, E <= 5,
/// d <= 3, W <= 3, alternating symmetric and asymmetric.
GenSpec corpus_spec(std::size_t i);
std::vector<Game> corpus(std::size_t count);

/// Unweighted games with affine latencies.
std::vector<Game> unweighted_affine_corpus(std::size_t count);

/// Network game spec i: small digraphs, common or random OD pairs.
GenSpec network_spec(std::size_t i);

enum class Certified { Holds, Violated, Skipped };

/// psi_k(M + {b}) <= (psi_k({b})^(1/k) + psi_k(M)^(1/k))^k, decided with
/// exact roots when they are rational and certified enclosures otherwise.
Certified check_root_inequality(unsigned k, std::span<const Rational> m, const Rational& b);

}  // namespace wcg::fixtures
