#include "polygame/submodular.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "polygame/errors.hpp"

namespace polygame {

namespace {

bool near_int(double v) { return std::fabs(v - std::round(v)) <= 1e-9; }

// Sorting permutation by weight; ties break by index so greedy is deterministic.
std::vector<int> order_by_weight(const Vec& w, bool descending) {
  std::vector<int> order(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (w[a] != w[b]) return descending ? w[a] > w[b] : w[a] < w[b];
    return a < b;
  });
  return order;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

SubmodularOracle SubmodularOracle::explicit_table(GroundSet ground, std::vector<double> table) {
  SubmodularOracle f;
  f.kind_ = Kind::Explicit;
  f.ground_ = std::move(ground);
  const int m = f.ground_.size();
  if (m > kEnumerationCap)
    throw CapacityError("explicit tables are limited to m <= " + std::to_string(kEnumerationCap));
  if (table.size() != (std::size_t{1} << m))
    throw std::invalid_argument("explicit table must have exactly 2^m entries");
  f.table_ = std::move(table);
  f.validate_and_finish();
  return f;
}

SubmodularOracle SubmodularOracle::cardinality(GroundSet ground, std::vector<double> profile) {
  SubmodularOracle f;
  f.kind_ = Kind::Cardinality;
  f.ground_ = std::move(ground);
  if (profile.size() != static_cast<std::size_t>(f.ground_.size()) + 1)
    throw std::invalid_argument("cardinality profile must have m+1 entries g(0..m)");
  f.profile_ = std::move(profile);
  f.validate_and_finish();
  return f;
}

SubmodularOracle SubmodularOracle::uniform(int m, int k) {
  if (m <= 0) throw std::invalid_argument("ground set must be nonempty");
  if (k < 1 || k > m) throw std::invalid_argument("uniform matroid needs 1 <= k <= m");
  SubmodularOracle f;
  f.kind_ = Kind::Uniform;
  f.ground_ = GroundSet(m);
  f.k_ = k;
  f.profile_.resize(m + 1);
  for (int j = 0; j <= m; ++j) f.profile_[j] = std::min(j, k);
  f.validate_and_finish();
  return f;
}

SubmodularOracle SubmodularOracle::graphic(Graph graph) {
  SubmodularOracle f;
  f.kind_ = Kind::Graphic;
  const int m = graph.edge_count();
  if (m <= 0) throw std::invalid_argument("graph must have at least one edge");
  if (m > 63) throw CapacityError("graphic oracles are limited to 63 edges");
  f.ground_ = GroundSet(m);
  f.graph_ = std::move(graph);
  f.validate_and_finish();
  return f;
}

SubmodularOracle SubmodularOracle::partition(GroundSet ground, std::vector<std::vector<int>> blocks,
                                             std::vector<int> capacities) {
  SubmodularOracle f;
  f.kind_ = Kind::Partition;
  f.ground_ = std::move(ground);
  const int m = f.ground_.size();
  if (m > 63) throw CapacityError("partition oracles are limited to m <= 63");
  if (blocks.size() != capacities.size())
    throw std::invalid_argument("one capacity per block required");
  Mask covered = 0;
  for (const auto& block : blocks) {
    Mask bm = 0;
    for (int e : block) {
      if (e < 0 || e >= m) throw std::invalid_argument("block element out of range");
      bm |= Mask{1} << e;
    }
    if (std::popcount(bm) != static_cast<int>(block.size()) || (bm & covered) != 0)
      throw std::invalid_argument("blocks must be disjoint");
    covered |= bm;
    f.block_masks_.push_back(bm);
  }
  if (covered != (m == 64 ? ~Mask{0} : (Mask{1} << m) - 1))
    throw std::invalid_argument("blocks must cover the ground set");
  for (int c : capacities)
    if (c < 1) throw std::invalid_argument("capacities must be >= 1");
  f.capacities_ = std::move(capacities);
  f.validate_and_finish();
  return f;
}

void SubmodularOracle::validate_and_finish() {
  const int m = ground_.size();

  if (cardinality_based()) {
    if (std::fabs(profile_[0]) > 1e-12) throw std::invalid_argument("f(empty) must be 0");
    if (profile_[1] <= 0.0) throw std::invalid_argument("f must be positive on singletons");
    double prev_inc = kInf;
    bool unit_increments = true;
    for (int j = 1; j <= m; ++j) {
      const double inc = profile_[j] - profile_[j - 1];
      if (inc < -1e-12) throw std::invalid_argument("cardinality profile must be nondecreasing");
      if (inc > prev_inc + 1e-12)
        throw std::invalid_argument("cardinality profile increments must be nonincreasing");
      prev_inc = inc;
      if (!near_int(inc) || inc < -0.5 || inc > 1.5) unit_increments = false;
    }
    rank_ = profile_[m];
    matroid_ = unit_increments && near_int(profile_[m]);
    return;
  }

  if (kind_ == Kind::Graphic) {
    rank_ = graph_->rank_of(m == 63 ? ~Mask{0} >> 1 : (Mask{1} << m) - 1);
    matroid_ = true;
    // Loops were rejected by the Graph constructor, so every singleton has rank 1.
  } else if (kind_ == Kind::Partition) {
    rank_ = 0.0;
    for (std::size_t i = 0; i < block_masks_.size(); ++i)
      rank_ += std::min<double>(std::popcount(block_masks_[i]), capacities_[i]);
    matroid_ = true;
  } else {  // Explicit
    const std::size_t n = std::size_t{1} << m;
    if (std::fabs(table_[0]) > 1e-12) throw std::invalid_argument("f(empty) must be 0");
    const double scale = std::max(1.0, std::fabs(table_[n - 1]));
    const double slack = 1e-12 * scale;
    for (int e = 0; e < m; ++e)
      if (table_[Mask{1} << e] <= 0.0)
        throw std::invalid_argument("f must be positive on singletons");
    auto check_triple = [&](Mask s, int e, int g) {
      const Mask se = s | (Mask{1} << e);
      const Mask sg = s | (Mask{1} << g);
      if (table_[se] + table_[sg] + slack < table_[se | sg] + table_[s])
        throw std::invalid_argument("table is not submodular");
    };
    auto check_monotone = [&](Mask s, int e) {
      if (table_[s | (Mask{1} << e)] + slack < table_[s])
        throw std::invalid_argument("table is not monotone");
    };
    if (m <= 12) {
      for (Mask s = 0; s < n; ++s) {
        for (int e = 0; e < m; ++e) {
          if (s & (Mask{1} << e)) continue;
          check_monotone(s, e);
          for (int g = e + 1; g < m; ++g) {
            if (s & (Mask{1} << g)) continue;
            check_triple(s, e, g);
          }
        }
      }
      // Matroid rank functions are integer valued with 0/1 increments.
      matroid_ = true;
      for (Mask s = 0; s < n && matroid_; ++s) {
        if (!near_int(table_[s])) matroid_ = false;
        for (int e = 0; e < m && matroid_; ++e) {
          if (s & (Mask{1} << e)) continue;
          const double inc = table_[s | (Mask{1} << e)] - table_[s];
          if (!near_int(inc) || inc < -0.5 || inc > 1.5) matroid_ = false;
        }
      }
    } else {
      // Too large for the exhaustive sweep: spot-check random triples.
      std::mt19937_64 rng(0x5eed);
      for (int trial = 0; trial < 200; ++trial) {
        const Mask s = rng() & (n - 1);
        const int e = static_cast<int>(rng() % m);
        const int g = static_cast<int>(rng() % m);
        if ((s >> e) & 1) continue;
        check_monotone(s, e);
        if (g != e && !((s >> g) & 1)) check_triple(s, std::min(e, g), std::max(e, g));
      }
      matroid_ = false;
    }
    rank_ = table_[n - 1];
    return;
  }

  // Eager memo for structured kinds keeps enumeration loops cheap.
  if (m <= 16) {
    const std::size_t n = std::size_t{1} << m;
    table_.resize(n);
    for (Mask s = 0; s < n; ++s) table_[s] = value_raw(s);
  }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

double SubmodularOracle::value_raw(Mask subset) const {
  switch (kind_) {
    case Kind::Explicit:
      return table_[subset];
    case Kind::Cardinality:
    case Kind::Uniform:
      return profile_[std::popcount(subset)];
    case Kind::Graphic:
      return graph_->rank_of(subset);
    case Kind::Partition: {
      double v = 0.0;
      for (std::size_t i = 0; i < block_masks_.size(); ++i)
        v += std::min<double>(std::popcount(subset & block_masks_[i]), capacities_[i]);
      return v;
    }
  }
  return 0.0;  // unreachable
}

double SubmodularOracle::value(Mask subset) const {
  const int m = size();
  if (m > 63) throw CapacityError("mask evaluation requires m <= 63");
  if (m < 64 && (subset >> m) != 0) throw std::invalid_argument("subset mask out of range");
  if (!table_.empty()) return table_[subset];
  return value_raw(subset);
}

double SubmodularOracle::value(const std::vector<int>& subset) const {
  const int m = size();
  if (m <= 63) {
    Mask s = 0;
    for (int e : subset) {
      if (e < 0 || e >= m) throw std::invalid_argument("subset element out of range");
      s |= Mask{1} << e;
    }
    return value(s);
  }
  // Beyond 63 elements only cardinality-based oracles exist.
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!s.empty() && (s.front() < 0 || s.back() >= m))
    throw std::invalid_argument("subset element out of range");
  return profile_[s.size()];
}

const std::vector<double>& SubmodularOracle::profile() const {
  if (!cardinality_based())
    throw std::invalid_argument("profile() requires a cardinality-based oracle");
  return profile_;
}

const Graph& SubmodularOracle::graph() const {
  if (kind_ != Kind::Graphic) throw std::invalid_argument("graph() requires a graphic oracle");
  return *graph_;
}

int SubmodularOracle::uniform_k() const {
  if (kind_ != Kind::Uniform) throw std::invalid_argument("uniform_k() requires a uniform oracle");
  return k_;
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

bool is_member(const SubmodularOracle& f, const Vec& x, bool in_base, double tol) {
  const int m = f.size();
  if (static_cast<int>(x.size()) != m) throw std::invalid_argument("dimension mismatch");
  for (double xe : x)
    if (xe < -tol) return false;

  if (f.cardinality_based()) {
    Vec sorted = x;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const auto& g = f.profile();
    double prefix = 0.0;
    for (int k = 1; k <= m; ++k) {
      prefix += sorted[k - 1];
      if (prefix > g[k] + tol) return false;
    }
    if (in_base && std::fabs(prefix - g[m]) > tol) return false;
    return true;
  }

  if (m > kEnumerationCap)
    throw CapacityError("membership check by enumeration is limited to m <= " +
                        std::to_string(kEnumerationCap));
  const std::size_t n = std::size_t{1} << m;
  std::vector<double> sums(n, 0.0);
  for (std::size_t s = 1; s < n; ++s) {
    sums[s] = sums[s & (s - 1)] + x[std::countr_zero(s)];
    if (sums[s] > f.value(static_cast<Mask>(s)) + tol) return false;
  }
  if (in_base && std::fabs(sums[n - 1] - f.rank()) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Maximal tight set
// ---------------------------------------------------------------------------

Mask max_tight_set(const SubmodularOracle& f, const Vec& x, double tol) {
  const int m = f.size();
  if (static_cast<int>(x.size()) != m) throw std::invalid_argument("dimension mismatch");
  if (m > 63) throw CapacityError("max_tight_set requires m <= 63 for the mask result");

  if (f.cardinality_based()) {
    // A size-k set S is tight iff x(S) matches the top-k sum and that sum
    // reaches g(k); an outside element e joins some tight size-k set iff
    // top-(k-1) + x_e still reaches g(k) - tol.
    const auto& g = f.profile();
    std::vector<int> order = order_by_weight(x, /*descending=*/true);
    Vec prefix(m + 1, 0.0);
    for (int k = 1; k <= m; ++k) prefix[k] = prefix[k - 1] + x[order[k - 1]];
    Mask tight = 0;
    for (int k = 1; k <= m; ++k) {
      if (prefix[k] < g[k] - tol) continue;
      for (int i = 0; i < k; ++i) tight |= Mask{1} << order[i];
      for (int i = k; i < m; ++i)
        if (prefix[k - 1] + x[order[i]] >= g[k] - tol) tight |= Mask{1} << order[i];
    }
    return tight;
  }

  if (m > kEnumerationCap)
    throw CapacityError("max_tight_set by enumeration is limited to m <= " +
                        std::to_string(kEnumerationCap));
  const std::size_t n = std::size_t{1} << m;
  std::vector<double> sums(n, 0.0);
  Mask tight = 0;
  for (std::size_t s = 1; s < n; ++s) {
    sums[s] = sums[s & (s - 1)] + x[std::countr_zero(s)];
    if (f.value(static_cast<Mask>(s)) - sums[s] <= tol) tight |= static_cast<Mask>(s);
  }
  return tight;
}

// ---------------------------------------------------------------------------
// Line search: max { delta : x + delta d in P(f) }
// ---------------------------------------------------------------------------

namespace {

// Discrete Newton on the sorted-prefix constraints of a cardinality-based
// polymatroid: never touches individual subsets, so it handles any m.
double line_search_cardinality(const std::vector<double>& g, const Vec& x, const Vec& d) {
  const int m = static_cast<int>(x.size());
  const double scale = std::max(1.0, std::fabs(g[m]));
  const double term_tol = 1e-13 * scale;

  double d_total = vec_sum(d);
  double delta = (g[m] - vec_sum(x)) / d_total;  // S = E upper bound
  if (delta < -kFeasTol) throw std::invalid_argument("x is not in P(f)");
  delta = std::max(delta, 0.0);

  Vec y(m);
  std::vector<int> order(m);
  const int max_iters = 10 * m + 100;
  for (int iter = 0; iter < max_iters; ++iter) {
    for (int e = 0; e < m; ++e) y[e] = x[e] + delta * d[e];
    order = order_by_weight(y, /*descending=*/true);
    double prefix = 0.0, worst = -kInf;
    int worst_k = 0;
    for (int k = 1; k <= m; ++k) {
      prefix += y[order[k - 1]];
      const double viol = prefix - g[k];
      if (viol > worst) {
        worst = viol;
        worst_k = k;
      }
    }
    if (worst <= term_tol) return delta;
    double xs = 0.0, ds = 0.0;
    for (int i = 0; i < worst_k; ++i) {
      xs += x[order[i]];
      ds += d[order[i]];
    }
    if (ds <= 0.0) throw std::invalid_argument("x is not in P(f)");
    const double next = (g[worst_k] - xs) / ds;
    if (next >= delta) return std::max(next, 0.0);  // converged to rounding
    delta = next;
  }
  throw std::logic_error("cardinality line search failed to converge");
}

}  // namespace

double line_search(const SubmodularOracle& f, const Vec& x, const Vec& d) {
  const int m = f.size();
  if (static_cast<int>(x.size()) != m || static_cast<int>(d.size()) != m)
    throw std::invalid_argument("dimension mismatch");
  bool any = false;
  for (double de : d) {
    if (de < 0.0) throw std::invalid_argument("direction must be nonnegative");
    if (de > 0.0) any = true;
  }
  if (!any) throw std::invalid_argument("direction must be nonzero");

  if (f.cardinality_based()) return line_search_cardinality(f.profile(), x, d);

  if (m > kEnumerationCap)
    throw CapacityError("line search by enumeration is limited to m <= " +
                        std::to_string(kEnumerationCap));
  const std::size_t n = std::size_t{1} << m;
  std::vector<double> xs(n, 0.0), ds(n, 0.0), fv(n, 0.0);
  for (std::size_t s = 1; s < n; ++s) {
    const int e = std::countr_zero(s);
    xs[s] = xs[s & (s - 1)] + x[e];
    ds[s] = ds[s & (s - 1)] + d[e];
    fv[s] = f.value(static_cast<Mask>(s));
  }

  const double scale = std::max(1.0, std::fabs(f.rank()));
  const double term_tol = 1e-13 * scale;
  double delta = (fv[n - 1] - xs[n - 1]) / ds[n - 1];
  if (delta < -kFeasTol) throw std::invalid_argument("x is not in P(f)");
  delta = std::max(delta, 0.0);

  const int max_iters = 10 * m * m + 100;
  for (int iter = 0; iter < max_iters; ++iter) {
    double worst = -kInf;
    std::size_t worst_s = 0;
    for (std::size_t s = 1; s < n; ++s) {
      const double viol = xs[s] + delta * ds[s] - fv[s];
      if (viol > worst) {
        worst = viol;
        worst_s = s;
      }
    }
    if (worst <= term_tol) return delta;
    if (ds[worst_s] <= 0.0) throw std::invalid_argument("x is not in P(f)");
    const double next = (fv[worst_s] - xs[worst_s]) / ds[worst_s];
    if (next >= delta) return std::max(next, 0.0);
    delta = next;
  }
  throw std::logic_error("line search failed to converge");
}

// ---------------------------------------------------------------------------
// Greedy linear optimization over B(f)
// ---------------------------------------------------------------------------

Vec greedy_linear_opt(const SubmodularOracle& f, const Vec& w, bool maximize) {
  const int m = f.size();
  if (static_cast<int>(w.size()) != m) throw std::invalid_argument("dimension mismatch");
  const std::vector<int> order = order_by_weight(w, maximize);
  Vec x(m, 0.0);
  if (f.cardinality_based()) {
    const auto& g = f.profile();
    for (int i = 0; i < m; ++i) x[order[i]] = g[i + 1] - g[i];
    return x;
  }
  if (m > 63) throw CapacityError("greedy over masks requires m <= 63");
  Mask acc = 0;
  double prev = 0.0;
  for (int i = 0; i < m; ++i) {
    acc |= Mask{1} << order[i];
    const double v = f.value(acc);
    x[order[i]] = v - prev;
    prev = v;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Matroid enumeration
// ---------------------------------------------------------------------------

std::vector<Mask> enumerate_bases(const SubmodularOracle& f) {
  if (!f.matroid()) throw std::invalid_argument("base enumeration requires a matroid rank oracle");
  const int m = f.size();
  if (m > kEnumerationCap)
    throw CapacityError("base enumeration is limited to m <= " + std::to_string(kEnumerationCap));
  const int r = static_cast<int>(std::llround(f.rank()));
  std::vector<Mask> bases;
  const Mask n = Mask{1} << m;
  for (Mask s = 0; s < n; ++s)
    if (std::popcount(s) == r && f.value(s) > r - 0.5) bases.push_back(s);
  return bases;
}

std::vector<Mask> enumerate_circuits(const SubmodularOracle& f) {
  if (!f.matroid())
    throw std::invalid_argument("circuit enumeration requires a matroid rank oracle");
  const int m = f.size();
  if (m > kEnumerationCap)
    throw CapacityError("circuit enumeration is limited to m <= " + std::to_string(kEnumerationCap));
  std::vector<Mask> circuits;
  const Mask n = Mask{1} << m;
  for (Mask s = 1; s < n; ++s) {
    const int sz = std::popcount(s);
    if (f.value(s) > sz - 0.5) continue;  // independent
    bool minimal = true;
    for (Mask t = s; t != 0 && minimal; t &= t - 1) {
      const Mask sub = s & ~(t & (~t + 1));
      if (f.value(sub) < std::popcount(sub) - 0.5) minimal = false;
    }
    if (minimal) circuits.push_back(s);
  }
  return circuits;
}

}  // namespace polygame
