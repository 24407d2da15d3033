#include "wcg/potentials.hpp"

#include <stdexcept>

namespace wcg {

Rational potential_psi_hat(const Game& game, std::span<const PsiTable> tables) {
  Rational sum = 0;
  for (ResourceId e = 0; e < game.num_resources(); ++e) {
    const auto& coeffs = game.latencies[e].coeffs;
    for (unsigned k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      sum += coeffs[k] / Rational(static_cast<long>(k + 1)) * tables[e][k + 1];
    }
  }
  return sum;
}

Rational potential_psi_hat(const Game& game, const Profile& profile) {
  const auto tables = psi_tables(game, profile);
  return potential_psi_hat(game, tables);
}

Rational approx_potential_term(const LatencyPoly& latency, const Rational& load) {
  const auto& a = latency.coeffs;
  if (a.empty()) return 0;
  Rational sum = a[0] * load;
  for (unsigned k = 1; k < a.size(); ++k) {
    if (a[k].is_zero()) continue;
    sum += a[k] * (pow(load, k + 1) / Rational(static_cast<long>(k + 1)) + pow(load, k) / Rational(2));
  }
  return sum;
}

Rational potential_approx(const Game& game, std::span<const Rational> loads) {
  Rational sum = 0;
  for (ResourceId e = 0; e < game.num_resources(); ++e) sum += approx_potential_term(game.latencies[e], loads[e]);
  return sum;
}

Rational potential_approx(const Game& game, const Profile& profile) {
  const auto loads = resource_loads(game, profile);
  return potential_approx(game, loads);
}

PotentialValue potential(const Game& game, const Profile& profile, PotentialKind kind) {
  if (kind == PotentialKind::PsiHatExact) return {potential_psi_hat(game, profile), kind};
  return {potential_approx(game, profile), kind};
}

Rational rho_star(unsigned d, const Rational& W) {
  if (d < 1) throw std::invalid_argument("rho_star needs d >= 1");
  if (W < Rational(1)) throw std::invalid_argument("rho_star needs W >= 1");
  const Rational dp1(static_cast<long>(d + 1));
  return Rational(2) * W * dp1 / (Rational(2) * W + dp1);
}

PotentialBounds potential_upper_bounds(const GameParams& params) {
  const unsigned d = params.d;
  const Rational common = pow(Rational(static_cast<long>(params.N)), d + 1) * pow(params.W, d + 1) *
                          Rational(static_cast<long>(params.E)) * params.a_max;
  return {common * factorial(d + 1), common * Rational(static_cast<long>(d + 1))};
}

}  // namespace wcg
