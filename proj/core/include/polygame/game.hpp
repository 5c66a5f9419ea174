#ifndef POLYGAME_GAME_HPP
#define POLYGAME_GAME_HPP

#include <optional>
#include <string>
#include <vector>

#include "polygame/polytope.hpp"
#include "polygame/vec.hpp"

namespace polygame {

// Dense bilinear loss matrix: the row player pays x^T L y to the column
// player. Immutable after construction.
class LossMatrix {
 public:
  LossMatrix(int rows, int cols, Vec row_major);
  static LossMatrix identity(int m);
  static LossMatrix diagonal(Vec d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                 static_cast<std::size_t>(j)];
  }

  Vec apply(const Vec& y) const;            // L y, length rows()
  Vec apply_transpose(const Vec& x) const;  // L^T x, length cols()
  double bilinear(const Vec& x, const Vec& y) const;

  double min_entry() const;
  double max_abs_entry() const;
  bool nonnegative(double tol = 0.0) const;
  bool symmetric(double tol = 1e-12) const;
  bool diagonal_matrix(double tol = 0.0) const;
  Vec diagonal_entries() const;

  LossMatrix shifted(double c) const;  // entrywise L + c

 private:
  int rows_ = 0;
  int cols_ = 0;
  Vec data_;
};

// A two-player zero-sum game over combinatorial strategy polytopes. The row
// player (P) minimizes and the column player (Q) maximizes x^T L y.
struct Game {
  StrategyPolytope P;
  StrategyPolytope Q;
  LossMatrix L;

  Game(StrategyPolytope p, StrategyPolytope q, LossMatrix loss);

  // Upper bound on |u^T L v| over vertex pairs: exact by enumeration when
  // both vertex sets are small enough, otherwise mass_P * max|L| * mass_Q.
  double loss_scale() const;
};

struct BestResponse {
  Vec vertex;
  double value = 0.0;
};

// The column player's best vertex response to the row strategy x
// (maximizes x^T L v), and symmetrically the row player's best response to
// y (minimizes u^T L y).
BestResponse best_response_col(const Game& game, const Vec& x);
BestResponse best_response_row(const Game& game, const Vec& y);

// Certificate that (x, y) is an approximate equilibrium: primal is the
// column player's best response value against x, dual is the row player's
// best response value against y, and gap = primal - dual >= 0 bounds both
// players' incentives to deviate.
struct EquilibriumCertificate {
  std::string solver;
  Vec x;
  Vec y;
  double value = 0.0;   // x^T L y
  double primal = 0.0;  // max_v x^T L v
  double dual = 0.0;    // min_u u^T L y
  double gap = 0.0;
  int rounds = 0;
  double epsilon = 0.0;
  double regret = 0.0;        // measured row-player regret over the run
  double regret_bound = 0.0;  // theoretical cumulative regret bound
  std::optional<double> gap_bound;  // theoretical bound on gap, when known
  double loss_shift = 0.0;          // constant added to L internally
  double approx_marginal = 0.0;
  double approx_response = 0.0;
};

// Evaluate the gap of a candidate pair. Both points must lie in their
// polytopes within membership_tol (throws InfeasibleError otherwise).
EquilibriumCertificate certify(const Game& game, const Vec& x, const Vec& y,
                               double membership_tol = kFeasTol);

// Exact game value by enumerating both vertex sets and solving the induced
// matrix game LP. The returned pair is certified to the target gap.
struct GameValue {
  double value = 0.0;
  Vec x;
  Vec y;
  double gap = 0.0;
};
GameValue lp_value_by_enumeration(const Game& game, double target_gap = 1e-9);

}  // namespace polygame

#endif  // POLYGAME_GAME_HPP
