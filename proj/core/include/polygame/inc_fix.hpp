#ifndef POLYGAME_INC_FIX_HPP
#define POLYGAME_INC_FIX_HPP

#include <vector>

#include "polygame/mirror_map.hpp"
#include "polygame/submodular.hpp"
#include "polygame/vec.hpp"

namespace polygame {

// Grouping of elements by (near-)equal values, blocks sorted by ascending value.
struct LevelPartition {
  std::vector<std::vector<int>> blocks;
  Vec levels;  // one representative value per block, strictly increasing
};

// Cluster a value vector into blocks whose internal spread is <= tol.
LevelPartition level_partition(const Vec& values, double tol = kLevelTol);

struct ProjectionTraceStep {
  int iteration = 0;          // outer iteration index (1-based)
  std::vector<int> fixed;     // elements fixed in this iteration (L_i)
  double level = 0.0;         // gradient value at fixing time (eps^(i))
  int inner_steps = 0;        // inner steps spent inside this iteration
};

struct ProjectionResult {
  Vec point;                                // the projection, a point of B(f)
  std::vector<std::vector<int>> partition;  // gradient level sets, ascending
  Vec levels;                               // one level per block
  std::vector<ProjectionTraceStep> trace;   // per outer iteration
  std::vector<Vec> iterates;                // every iterate from x^(0) on
  int inner_steps = 0;                      // total inner steps
};

// Bregman projection of y onto the base polytope B(f): the unique minimizer
// of D(x, y) over B(f). Runs the increase-and-fix scheme: repeatedly raise
// the coordinates of minimum divergence gradient until a tight set catches
// them, then fix those elements and recurse on the rest.
//
// Euclidean maps start from x = 0 and accept any y; entropy maps start from
// c*y with c half the largest feasible scaling and require y > 0.
ProjectionResult inc_fix(const SubmodularOracle& f, const MirrorMap& map, const Vec& y);

// Same machinery driven by the separable objective sum_e x_e^2 / (2 w_e)
// (gradient x_e / w_e), for strictly positive weights. The minimizer over
// B(f) is the lexicographically optimal base with respect to w.
ProjectionResult inc_fix_weighted_sqnorm(const SubmodularOracle& f, const Vec& w);

// First-order optimality check for x ~ argmin D(., y) over B(f): partitions
// E by the gradient of the divergence at x and tests that every ascending
// prefix of level sets is tight. Returns false when x is not in B(f) or some
// prefix has slack; fills the witness partition either way (tightness slack
// is compared against tol * max(1, f(E))).
bool verify_first_order(const SubmodularOracle& f, const MirrorMap& map, const Vec& y,
                        const Vec& x, LevelPartition* witness = nullptr,
                        double tol = kFeasTol);

}  // namespace polygame

#endif  // POLYGAME_INC_FIX_HPP
