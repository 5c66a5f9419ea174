#ifndef POLYGAME_COUNTING_HPP
#define POLYGAME_COUNTING_HPP

#include <random>
#include <utility>
#include <vector>

#include "polygame/graph.hpp"
#include "polygame/vec.hpp"

namespace polygame {

// Generalized counting over a family U of 0/1 vectors with multiplicative
// element weights lambda > 0:
//   Z(lambda)    = sum_{u in U} prod_{e: u_e = 1} lambda_e
//   marginal x_e = (sum over u containing e of its weight) / Z = P[e in u]
// under the product distribution with weights lambda. Three backends:
//   - spanning trees of a multigraph (weighted matrix-tree determinants),
//   - k-element subsets of {0..m-1} (elementary symmetric polynomials),
//   - an explicit enumeration of U.
// Marginals and sampling renormalize lambda by its geometric mean when the
// dynamic range becomes extreme (both are invariant under positive scaling).
class CountingOracle {
 public:
  enum class Kind { MatrixTree, KSubsets, Enumeration };

  static CountingOracle matrix_tree(Graph graph);
  static CountingOracle k_subsets(int m, int k);
  static CountingOracle enumeration(std::vector<Vec> family);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  // Z(lambda); 0.0 when the family is empty (e.g. a disconnected graph).
  double partition_function(const Vec& lambda) const;

  // Marginal vector under the product distribution; throws NoBasesError if
  // Z(lambda) = 0.
  Vec marginals(const Vec& lambda) const;

  // Exact sample from the product distribution via self-reducibility
  // (deletion/contraction conditionals in a uniformly random element order).
  Vec sample(const Vec& lambda, std::mt19937_64& rng) const;

  // ln Z(1) = ln |U|.
  double log_count() const;

  const Graph& graph() const;
  int subset_k() const;

 private:
  CountingOracle() = default;

  Kind kind_ = Kind::Enumeration;
  int dim_ = 0;
  int k_ = 0;
  std::vector<Graph> graph_;  // 0 or 1 element (Graph has no default ctor)
  std::vector<Vec> family_;
};

// Express x as a convex combination of at most dim+1 of the given vertices
// (basic feasible solution of the hull LP). Throws InfeasibleError with the
// separating hyperplane when x is not in the hull.
std::vector<std::pair<Vec, double>> caratheodory_decompose(
    const std::vector<Vec>& vertices, const Vec& x, double tol = 1e-8);

}  // namespace polygame

#endif  // POLYGAME_COUNTING_HPP
