#include "polygame/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polygame/errors.hpp"
#include "polygame/simplex.hpp"

namespace polygame {

StrategyPolytope StrategyPolytope::explicit_vertices(std::vector<Vec> vertices) {
  if (vertices.empty()) {
    throw std::invalid_argument("explicit_vertices: vertex list is empty");
  }
  const int m = static_cast<int>(vertices.front().size());
  if (m == 0) throw std::invalid_argument("explicit_vertices: zero-dimensional vertex");
  for (Vec& v : vertices) {
    if (static_cast<int>(v.size()) != m) {
      throw std::invalid_argument("explicit_vertices: inconsistent dimensions");
    }
    for (double& c : v) {
      if (std::abs(c) <= 1e-9) {
        c = 0.0;
      } else if (std::abs(c - 1.0) <= 1e-9) {
        c = 1.0;
      } else {
        throw std::invalid_argument("explicit_vertices: coordinates must be 0 or 1");
      }
    }
  }
  StrategyPolytope p;
  p.kind_ = Kind::ExplicitVertices;
  p.dim_ = m;
  p.verts_ = std::move(vertices);
  p.const_mass_ = true;
  const double first_mass = vec_sum(p.verts_.front());
  p.mass_ = first_mass;
  for (const Vec& v : p.verts_) {
    const double s = vec_sum(v);
    p.mass_ = std::max(p.mass_, s);  // max mass; equals the common mass when constant
    if (std::abs(s - first_mass) > 1e-9) p.const_mass_ = false;
  }
  return p;
}

StrategyPolytope StrategyPolytope::matroid_bases(SubmodularOracle oracle) {
  if (!oracle.matroid()) {
    throw std::invalid_argument("matroid_bases: oracle is not a matroid rank function");
  }
  StrategyPolytope p;
  p.kind_ = Kind::MatroidBases;
  p.dim_ = oracle.size();
  p.const_mass_ = true;
  p.mass_ = oracle.rank();
  p.oracle_ = std::move(oracle);
  return p;
}

StrategyPolytope StrategyPolytope::spanning_trees(Graph graph) {
  if (!graph.connected()) {
    throw NoBasesError("spanning_trees: graph is disconnected, no spanning trees exist");
  }
  SubmodularOracle oracle = SubmodularOracle::graphic(graph);
  StrategyPolytope p;
  p.kind_ = Kind::SpanningTrees;
  p.dim_ = graph.edge_count();
  p.const_mass_ = true;
  p.mass_ = oracle.rank();
  p.oracle_ = std::move(oracle);
  p.graph_ = std::move(graph);
  return p;
}

std::vector<Vec> StrategyPolytope::vertices() const {
  if (kind_ == Kind::ExplicitVertices) return verts_;
  const std::vector<Mask> bases = enumerate_bases(*oracle_);
  std::vector<Vec> out;
  out.reserve(bases.size());
  for (Mask b : bases) {
    Vec v(static_cast<std::size_t>(dim_), 0.0);
    for (Mask s = b; s != 0; s &= s - 1) {
      v[static_cast<std::size_t>(std::countr_zero(s))] = 1.0;
    }
    out.push_back(std::move(v));
  }
  return out;
}

Vec StrategyPolytope::linopt(const Vec& w, bool maximize) const {
  if (static_cast<int>(w.size()) != dim_) {
    throw std::invalid_argument("linopt: weight dimension mismatch");
  }
  if (oracle_.has_value()) return greedy_linear_opt(*oracle_, w, maximize);
  const Vec* best = nullptr;
  double best_val = 0.0;
  for (const Vec& v : verts_) {
    const double val = vec_dot(w, v);
    if (best == nullptr || (maximize ? val > best_val + 1e-15 : val < best_val - 1e-15)) {
      best = &v;
      best_val = val;
    }
  }
  return *best;
}

bool StrategyPolytope::contains(const Vec& x, double tol) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  if (oracle_.has_value()) return is_member(*oracle_, x, /*in_base=*/true, tol);
  return hull_decompose(verts_, x, tol).inside;
}

const SubmodularOracle& StrategyPolytope::oracle() const {
  if (!oracle_.has_value()) {
    throw std::invalid_argument("polytope has no submodular oracle (explicit vertex list)");
  }
  return *oracle_;
}

const Graph& StrategyPolytope::graph() const {
  if (!graph_.has_value()) {
    throw std::invalid_argument("polytope has no underlying graph");
  }
  return *graph_;
}

}  // namespace polygame
