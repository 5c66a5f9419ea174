#ifndef POLYGAME_OMD_HPP
#define POLYGAME_OMD_HPP

#include "polygame/game.hpp"
#include "polygame/inc_fix.hpp"
#include "polygame/mirror_map.hpp"
#include "polygame/trace.hpp"
#include "polygame/vec.hpp"

namespace polygame {

// Online mirror descent over a polymatroid base polytope. Unset (zero)
// numeric fields are filled automatically from the game:
//   - R2:     max over vertices of omega(v) minus omega(center), where the
//             center is the Bregman projection of the map's natural origin;
//   - G:      max over column vertices v of the dual norm of L v
//             (Euclidean: |Lv|_2, entropy: |Lv|_inf);
//   - k:      strong convexity of omega w.r.t. the paired norm on the base
//             polytope (Euclidean: 1; entropy: 1/f(E));
//   - rounds: ceil(8 R2 G^2 / (k epsilon^2)), which drives the averaged-pair
//             gap bound 2 R G sqrt(2/(T k)) below epsilon;
//   - eta:    (R/G) sqrt(2 k / rounds).
struct OmdConfig {
  MirrorMap map = MirrorMap::euclidean();
  double epsilon = 0.0;  // target duality gap (used when rounds == 0)
  int rounds = 0;
  double eta = 0.0;
  double R2 = 0.0;
  double G = 0.0;
  double k = 0.0;
};

struct OmdResult {
  EquilibriumCertificate certificate;
  TraceTable trace;
  OmdConfig resolved;  // the configuration after auto-filling
};

// One mirror-descent step: move in the dual (gradient) space and Bregman-
// project back onto the base polytope of f.
Vec omd_step(const SubmodularOracle& f, const MirrorMap& map, const Vec& x,
             const Vec& loss, double eta);

// Self-play against the column player's exact best response; returns the
// averaged pair with its certificate. The row polytope must be oracle-backed.
OmdResult solve_nash_omd(const Game& game, OmdConfig config);

}  // namespace polygame

#endif  // POLYGAME_OMD_HPP
