#ifndef POLYGAME_POLYTOPE_HPP
#define POLYGAME_POLYTOPE_HPP

#include <optional>
#include <vector>

#include "polygame/graph.hpp"
#include "polygame/submodular.hpp"
#include "polygame/vec.hpp"

namespace polygame {

// A player's strategy polytope: the convex hull of a finite family of 0/1
// indicator vectors. Three constructions are supported:
//   - an explicit vertex list,
//   - the bases of a matroid given by its rank oracle (base polytope),
//   - the spanning trees of a connected multigraph (graphic matroid bases).
class StrategyPolytope {
 public:
  enum class Kind { ExplicitVertices, MatroidBases, SpanningTrees };

  static StrategyPolytope explicit_vertices(std::vector<Vec> vertices);
  static StrategyPolytope matroid_bases(SubmodularOracle oracle);
  static StrategyPolytope spanning_trees(Graph graph);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  // Every vertex, in a deterministic order (explicit lists keep their input
  // order; oracle-backed polytopes enumerate bases by ascending mask).
  // Throws CapacityError beyond the enumeration cap.
  std::vector<Vec> vertices() const;
  std::size_t vertex_count() const { return vertices().size(); }

  // Optimal vertex for a linear objective; deterministic tie-breaking
  // (greedy index order for oracle-backed polytopes, first-best for lists).
  Vec linopt(const Vec& w, bool maximize) const;

  // Membership in the convex hull (base-polytope equalities for matroid
  // kinds, a feasibility LP for explicit lists).
  bool contains(const Vec& x, double tol = kFeasTol) const;

  bool is_base_polytope() const { return oracle_.has_value(); }
  const SubmodularOracle& oracle() const;
  const Graph& graph() const;

  // Every vertex has the same coordinate sum for oracle-backed polytopes
  // (the matroid rank); explicit lists are scanned.
  bool constant_vertex_mass() const { return const_mass_; }
  double vertex_mass() const { return mass_; }

 private:
  StrategyPolytope() = default;

  Kind kind_ = Kind::ExplicitVertices;
  int dim_ = 0;
  std::vector<Vec> verts_;  // populated for explicit lists only
  std::optional<SubmodularOracle> oracle_;
  std::optional<Graph> graph_;
  bool const_mass_ = false;
  double mass_ = 0.0;
};

}  // namespace polygame

#endif  // POLYGAME_POLYTOPE_HPP
