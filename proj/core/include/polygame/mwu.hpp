#ifndef POLYGAME_MWU_HPP
#define POLYGAME_MWU_HPP

#include <cstdint>

#include "polygame/counting.hpp"
#include "polygame/game.hpp"
#include "polygame/trace.hpp"
#include "polygame/vec.hpp"

namespace polygame {

// Multiplicative weights over the (implicit) vertex set of the row polytope,
// simulated on product distributions through a counting oracle. Auto-filled
// fields (when zero):
//   - F:      max over strategy pairs of x^T L y after the nonnegativity
//             shift (the per-round loss scale);
//   - beta:   1 / (1 + sqrt(2) eps'), eps' = epsilon / F;
//   - rounds: ceil(F^2 ln|U| / epsilon^2).
// A loss matrix with negative entries is shifted by a constant to be
// nonnegative; this requires both polytopes to have constant vertex mass
// (so the game is unchanged up to a constant) and the shift is recorded.
struct MwuConfig {
  double epsilon = 0.0;
  int rounds = 0;
  double F = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  double approx_marginal = 0.0;  // eps1: sup-norm noise added to marginals
  double approx_response = 0.0;  // eps2: adversary may be this suboptimal
};

struct MwuResult {
  EquilibriumCertificate certificate;
  TraceTable trace;
  MwuConfig resolved;
};

// One multiplier update: lambda_e * beta^(loss_e / F). Requires
// beta in (0,1), F > 0 and nonnegative losses.
Vec mwu_update(const Vec& lambda, const Vec& loss, double beta, double F);

// Run the simulated MWU loop; the counting oracle must count the vertex set
// of game.P. Deterministic given the seed.
MwuResult solve_nash_mwu(const Game& game, const CountingOracle& oracle, MwuConfig config);

}  // namespace polygame

#endif  // POLYGAME_MWU_HPP
