#include "polygame/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "polygame/errors.hpp"
#include "polygame/simplex.hpp"

namespace polygame {
namespace {

// Determinant via LU with partial pivoting (in place).
double det_lu(std::vector<Vec> M) {
  const int n = static_cast<int>(M.size());
  if (n == 0) return 1.0;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)])) {
        piv = r;
      }
    }
    const double p = M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)];
    if (p == 0.0) return 0.0;
    if (piv != col) {
      std::swap(M[static_cast<std::size_t>(piv)], M[static_cast<std::size_t>(col)]);
      det = -det;
    }
    det *= M[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int r = col + 1; r < n; ++r) {
      const double f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                       M[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) {
        M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            f * M[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
      }
    }
  }
  return det;
}

// Working multigraph for deletion/contraction: edges carry their weight and
// original index; contracted loops are dropped.
struct WeightedGraph {
  int n = 0;
  std::vector<std::tuple<int, int, double, int>> edges;  // (u, v, weight, original id)
};

// Weighted spanning tree count via the matrix-tree theorem (any cofactor of
// the weighted Laplacian). Zero when disconnected.
double tree_count(const WeightedGraph& g) {
  if (g.n <= 1) return 1.0;
  std::vector<Vec> lap(static_cast<std::size_t>(g.n - 1), Vec(static_cast<std::size_t>(g.n - 1), 0.0));
  for (const auto& [u, v, w, id] : g.edges) {
    if (u == v) continue;
    if (u < g.n - 1) lap[static_cast<std::size_t>(u)][static_cast<std::size_t>(u)] += w;
    if (v < g.n - 1) lap[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] += w;
    if (u < g.n - 1 && v < g.n - 1) {
      lap[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] -= w;
      lap[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] -= w;
    }
  }
  const double z = det_lu(std::move(lap));
  return std::max(0.0, z);
}

// Contract edge at position `pos` (merge endpoints, drop loops).
WeightedGraph contract(const WeightedGraph& g, std::size_t pos) {
  const auto [cu, cv, cw, cid] = g.edges[pos];
  const int keep = std::min(cu, cv);
  const int gone = std::max(cu, cv);
  WeightedGraph out;
  out.n = g.n - 1;
  out.edges.reserve(g.edges.size() - 1);
  auto remap = [&](int x) {
    if (x == gone) x = keep;
    return (x > gone) ? x - 1 : x;
  };
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (i == pos) continue;
    const auto& [u, v, w, id] = g.edges[i];
    const int nu = remap(u);
    const int nv = remap(v);
    if (nu == nv) continue;  // loop formed by contraction
    out.edges.emplace_back(nu, nv, w, id);
  }
  return out;
}

WeightedGraph remove_edge(const WeightedGraph& g, std::size_t pos) {
  WeightedGraph out;
  out.n = g.n;
  out.edges.reserve(g.edges.size() - 1);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (i != pos) out.edges.push_back(g.edges[i]);
  }
  return out;
}

// Geometric-mean renormalization of positive weights; marginals and the
// product distribution are invariant under positive scaling of lambda.
Vec renormalized(const Vec& lambda) {
  double lo = kInf, hi = 0.0, logsum = 0.0;
  for (double l : lambda) {
    lo = std::min(lo, l);
    hi = std::max(hi, l);
    logsum += std::log(l);
  }
  const bool extreme_ratio = (lo > 0.0 && hi / lo > 1e12);
  const bool extreme_magnitude = (lo < 1e-100 || hi > 1e100);
  if (!extreme_ratio && !extreme_magnitude) return lambda;
  const double gm = std::exp(logsum / static_cast<double>(lambda.size()));
  Vec out = lambda;
  for (double& l : out) l /= gm;
  return out;
}

void check_lambda(const Vec& lambda, int dim) {
  if (static_cast<int>(lambda.size()) != dim) {
    throw std::invalid_argument("counting: weight vector dimension mismatch");
  }
  for (double l : lambda) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw std::invalid_argument("counting: weights must be positive and finite");
    }
  }
}

// Elementary symmetric polynomials e_0..e_k of the given weights.
Vec elementary_symmetric(const Vec& lambda, int k) {
  Vec e(static_cast<std::size_t>(k + 1), 0.0);
  e[0] = 1.0;
  int seen = 0;
  for (double l : lambda) {
    ++seen;
    for (int j = std::min(k, seen); j >= 1; --j) {
      e[static_cast<std::size_t>(j)] += l * e[static_cast<std::size_t>(j - 1)];
    }
  }
  return e;
}

}  // namespace

CountingOracle CountingOracle::matrix_tree(Graph graph) {
  CountingOracle c;
  c.kind_ = Kind::MatrixTree;
  c.dim_ = graph.edge_count();
  c.graph_.push_back(std::move(graph));
  return c;
}

CountingOracle CountingOracle::k_subsets(int m, int k) {
  if (m <= 0 || k < 0 || k > m) {
    throw std::invalid_argument("k_subsets: need 0 <= k <= m, m >= 1");
  }
  CountingOracle c;
  c.kind_ = Kind::KSubsets;
  c.dim_ = m;
  c.k_ = k;
  return c;
}

CountingOracle CountingOracle::enumeration(std::vector<Vec> family) {
  if (family.empty()) throw std::invalid_argument("enumeration: empty family");
  const int m = static_cast<int>(family.front().size());
  for (const Vec& v : family) {
    if (static_cast<int>(v.size()) != m) {
      throw std::invalid_argument("enumeration: inconsistent dimensions");
    }
    for (double c : v) {
      if (c != 0.0 && c != 1.0) {
        throw std::invalid_argument("enumeration: family members must be 0/1 vectors");
      }
    }
  }
  CountingOracle c;
  c.kind_ = Kind::Enumeration;
  c.dim_ = m;
  c.family_ = std::move(family);
  return c;
}

const Graph& CountingOracle::graph() const {
  if (kind_ != Kind::MatrixTree) {
    throw std::invalid_argument("counting oracle has no underlying graph");
  }
  return graph_.front();
}

int CountingOracle::subset_k() const {
  if (kind_ != Kind::KSubsets) {
    throw std::invalid_argument("counting oracle is not a k-subset counter");
  }
  return k_;
}

double CountingOracle::partition_function(const Vec& lambda) const {
  check_lambda(lambda, dim_);
  switch (kind_) {
    case Kind::MatrixTree: {
      WeightedGraph wg;
      wg.n = graph_.front().n;
      for (int e = 0; e < dim_; ++e) {
        const auto [u, v] = graph_.front().edges[static_cast<std::size_t>(e)];
        wg.edges.emplace_back(u, v, lambda[static_cast<std::size_t>(e)], e);
      }
      return tree_count(wg);
    }
    case Kind::KSubsets:
      return elementary_symmetric(lambda, k_)[static_cast<std::size_t>(k_)];
    case Kind::Enumeration: {
      double z = 0.0;
      for (const Vec& u : family_) {
        double w = 1.0;
        for (int e = 0; e < dim_; ++e) {
          if (u[static_cast<std::size_t>(e)] == 1.0) w *= lambda[static_cast<std::size_t>(e)];
        }
        z += w;
      }
      return z;
    }
  }
  return 0.0;
}

Vec CountingOracle::marginals(const Vec& lambda_in) const {
  check_lambda(lambda_in, dim_);
  const Vec lambda = renormalized(lambda_in);
  Vec x(static_cast<std::size_t>(dim_), 0.0);
  switch (kind_) {
    case Kind::MatrixTree: {
      WeightedGraph wg;
      wg.n = graph_.front().n;
      for (int e = 0; e < dim_; ++e) {
        const auto [u, v] = graph_.front().edges[static_cast<std::size_t>(e)];
        wg.edges.emplace_back(u, v, lambda[static_cast<std::size_t>(e)], e);
      }
      const double z = tree_count(wg);
      if (z <= 0.0) {
        throw NoBasesError("marginals: the graph has no spanning trees");
      }
      // P[e in T] = lambda_e * Z(G/e) / Z(G).
      for (std::size_t pos = 0; pos < wg.edges.size(); ++pos) {
        const auto& [u, v, w, id] = wg.edges[pos];
        const double zc = tree_count(contract(wg, pos));
        x[static_cast<std::size_t>(id)] = std::clamp(w * zc / z, 0.0, 1.0);
      }
      return x;
    }
    case Kind::KSubsets: {
      const Vec e_all = elementary_symmetric(lambda, k_);
      const double z = e_all[static_cast<std::size_t>(k_)];
      if (z <= 0.0) throw NoBasesError("marginals: empty k-subset family");
      for (int e = 0; e < dim_; ++e) {
        Vec rest;
        rest.reserve(static_cast<std::size_t>(dim_ - 1));
        for (int j = 0; j < dim_; ++j) {
          if (j != e) rest.push_back(lambda[static_cast<std::size_t>(j)]);
        }
        const Vec er = elementary_symmetric(rest, std::max(0, k_ - 1));
        const double zc = (k_ >= 1) ? er[static_cast<std::size_t>(k_ - 1)] : 0.0;
        x[static_cast<std::size_t>(e)] =
            std::clamp(lambda[static_cast<std::size_t>(e)] * zc / z, 0.0, 1.0);
      }
      return x;
    }
    case Kind::Enumeration: {
      double z = 0.0;
      for (const Vec& u : family_) {
        double w = 1.0;
        for (int e = 0; e < dim_; ++e) {
          if (u[static_cast<std::size_t>(e)] == 1.0) w *= lambda[static_cast<std::size_t>(e)];
        }
        z += w;
        for (int e = 0; e < dim_; ++e) {
          if (u[static_cast<std::size_t>(e)] == 1.0) x[static_cast<std::size_t>(e)] += w;
        }
      }
      if (z <= 0.0) throw NoBasesError("marginals: empty family");
      for (double& v : x) v = std::clamp(v / z, 0.0, 1.0);
      return x;
    }
  }
  return x;
}

Vec CountingOracle::sample(const Vec& lambda_in, std::mt19937_64& rng) const {
  check_lambda(lambda_in, dim_);
  const Vec lambda = renormalized(lambda_in);
  Vec out(static_cast<std::size_t>(dim_), 0.0);

  if (kind_ == Kind::Enumeration) {
    // Categorical draw over the family by cumulative weight.
    double z = 0.0;
    std::vector<double> weights;
    weights.reserve(family_.size());
    for (const Vec& u : family_) {
      double w = 1.0;
      for (int e = 0; e < dim_; ++e) {
        if (u[static_cast<std::size_t>(e)] == 1.0) w *= lambda[static_cast<std::size_t>(e)];
      }
      weights.push_back(w);
      z += w;
    }
    if (z <= 0.0) throw NoBasesError("sample: empty family");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double target = unif(rng) * z;
    double acc = 0.0;
    std::size_t pick = family_.size() - 1;
    for (std::size_t i = 0; i < family_.size(); ++i) {
      acc += weights[i];
      if (target < acc) {
        pick = i;
        break;
      }
    }
    return family_[pick];
  }

  // Self-reducible exact sampling: visit the elements in a uniformly random
  // order and include each with its conditional marginal probability given
  // all earlier decisions (contract on include, delete on exclude).
  std::vector<int> order(static_cast<std::size_t>(dim_));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  if (kind_ == Kind::MatrixTree) {
    WeightedGraph cur;
    cur.n = graph_.front().n;
    for (int e = 0; e < dim_; ++e) {
      const auto [u, v] = graph_.front().edges[static_cast<std::size_t>(e)];
      cur.edges.emplace_back(u, v, lambda[static_cast<std::size_t>(e)], e);
    }
    if (tree_count(cur) <= 0.0) throw NoBasesError("sample: the graph has no spanning trees");
    for (int e : order) {
      std::size_t pos = cur.edges.size();
      for (std::size_t i = 0; i < cur.edges.size(); ++i) {
        if (std::get<3>(cur.edges[i]) == e) {
          pos = i;
          break;
        }
      }
      if (pos == cur.edges.size()) continue;  // dropped as a loop earlier
      const double w = std::get<2>(cur.edges[pos]);
      const double z_del = tree_count(remove_edge(cur, pos));
      const WeightedGraph contracted = contract(cur, pos);
      const double z_con = tree_count(contracted);
      const double total = z_del + w * z_con;  // = Z(cur) by deletion/contraction
      const double p = (total > 0.0) ? (w * z_con / total) : 0.0;
      if (unif(rng) < p) {
        out[static_cast<std::size_t>(e)] = 1.0;
        cur = contracted;
      } else {
        cur = remove_edge(cur, pos);
      }
    }
    return out;
  }

  // KSubsets: include e with probability lambda_e e_{t-1}(rest) / e_t(cur).
  std::vector<int> remaining;
  Vec rem_lambda;
  for (int e = 0; e < dim_; ++e) {
    remaining.push_back(e);
    rem_lambda.push_back(lambda[static_cast<std::size_t>(e)]);
  }
  int need = k_;
  for (int e : order) {
    if (need == 0) break;
    std::size_t pos = remaining.size();
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (remaining[i] == e) {
        pos = i;
        break;
      }
    }
    Vec rest;
    rest.reserve(rem_lambda.size() - 1);
    for (std::size_t i = 0; i < rem_lambda.size(); ++i) {
      if (i != pos) rest.push_back(rem_lambda[i]);
    }
    const Vec e_rest = elementary_symmetric(rest, need);
    const double z_inc = rem_lambda[pos] * e_rest[static_cast<std::size_t>(need - 1)];
    const double z_exc = (static_cast<int>(rest.size()) >= need) ? e_rest[static_cast<std::size_t>(need)] : 0.0;
    const double total = z_inc + z_exc;  // = e_need(current) by inclusion/exclusion
    const double p = (total > 0.0) ? z_inc / total : 0.0;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pos));
    rem_lambda.erase(rem_lambda.begin() + static_cast<std::ptrdiff_t>(pos));
    if (unif(rng) < p) {
      out[static_cast<std::size_t>(e)] = 1.0;
      --need;
    } else if (static_cast<int>(remaining.size()) < need) {
      // Numerically impossible branch: keep the sample valid regardless.
      out[static_cast<std::size_t>(e)] = 1.0;
      --need;
    }
  }
  return out;
}

double CountingOracle::log_count() const {
  switch (kind_) {
    case Kind::MatrixTree: {
      const Vec ones(static_cast<std::size_t>(dim_), 1.0);
      const double z = partition_function(ones);
      if (z <= 0.0) throw NoBasesError("log_count: the graph has no spanning trees");
      return std::log(z);
    }
    case Kind::KSubsets:
      return std::lgamma(static_cast<double>(dim_) + 1.0) -
             std::lgamma(static_cast<double>(k_) + 1.0) -
             std::lgamma(static_cast<double>(dim_ - k_) + 1.0);
    case Kind::Enumeration:
      return std::log(static_cast<double>(family_.size()));
  }
  return 0.0;
}

std::vector<std::pair<Vec, double>> caratheodory_decompose(
    const std::vector<Vec>& vertices, const Vec& x, double tol) {
  const HullDecomposition h = hull_decompose(vertices, x, tol);
  if (!h.inside) {
    throw InfeasibleError("caratheodory_decompose: point is outside the hull",
                          h.separator, h.rhs);
  }
  std::vector<std::pair<Vec, double>> out;
  out.reserve(h.support.size());
  for (const auto& [idx, w] : h.support) {
    out.emplace_back(vertices[static_cast<std::size_t>(idx)], w);
  }
  return out;
}

}  // namespace polygame
