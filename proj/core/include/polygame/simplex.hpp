#ifndef POLYGAME_SIMPLEX_HPP
#define POLYGAME_SIMPLEX_HPP

#include <utility>
#include <vector>

#include "polygame/vec.hpp"

namespace polygame {

// Dense tableau simplex with Bland's rule. Desk-scale: hundreds of rows.
struct SimplexSolution {
  bool optimal = false;
  bool unbounded = false;
  double objective = 0.0;
  Vec x;     // primal solution
  Vec dual;  // one multiplier per constraint row
};

// max c.x  s.t.  A x <= b, x >= 0, with b >= 0 (slack basis start).
SimplexSolution simplex_max(const std::vector<Vec>& A, const Vec& b, const Vec& c);

// Zero-sum matrix game: row player minimizes, column player maximizes
// R[i][j]. Solved through the shifted LP pair; both mixed strategies come
// from one tableau (primal + duals).
struct MatrixGameSolution {
  double value = 0.0;
  Vec row_mixed;
  Vec col_mixed;
};
MatrixGameSolution solve_matrix_game(const std::vector<Vec>& R);

// Convex-hull membership + decomposition: find theta >= 0, sum theta = 1,
// with sum_i theta_i verts[i] = x. A basic feasible solution has at most
// dim+1 nonzero weights. When x is outside, a separating hyperplane
// (w, rhs) with w.x > rhs >= w.u for all vertices u is produced by a second
// bounded LP.
struct HullDecomposition {
  bool inside = false;
  std::vector<std::pair<int, double>> support;  // (vertex index, weight)
  Vec separator;
  double rhs = 0.0;
};
HullDecomposition hull_decompose(const std::vector<Vec>& verts, const Vec& x,
                                 double tol = 1e-8);

}  // namespace polygame

#endif  // POLYGAME_SIMPLEX_HPP
