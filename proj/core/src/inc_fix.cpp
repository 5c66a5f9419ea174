#include "polygame/inc_fix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polygame/errors.hpp"

namespace polygame {

// ---------------------------------------------------------------------------
// Mirror maps
// ---------------------------------------------------------------------------

double MirrorMap::omega(const Vec& x) const {
  if (kind_ == Kind::Euclidean) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return 0.5 * s;
  }
  double s = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::invalid_argument("entropy potential needs x >= 0");
    if (v > 0.0) s += v * std::log(v) - v;
  }
  return s;
}

double MirrorMap::divergence(const Vec& x, const Vec& y) const {
  if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
  if (kind_ == Kind::Euclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - y[i];
      s += d * d;
    }
    return 0.5 * s;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] <= 0.0) throw std::invalid_argument("entropy divergence needs y > 0");
    if (x[i] < 0.0) throw std::invalid_argument("entropy divergence needs x >= 0");
    if (x[i] > 0.0) s += x[i] * std::log(x[i] / y[i]) - x[i];
    s += y[i];
  }
  return s;
}

Vec MirrorMap::gradient(const Vec& x) const {
  if (kind_ == Kind::Euclidean) return x;
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) throw std::invalid_argument("entropy gradient needs x > 0");
    g[i] = std::log(x[i]);
  }
  return g;
}

Vec MirrorMap::gradient_inverse(const Vec& g) const {
  if (kind_ == Kind::Euclidean) return g;
  Vec x(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) x[i] = std::exp(g[i]);
  return x;
}

// ---------------------------------------------------------------------------
// Level grouping
// ---------------------------------------------------------------------------

LevelPartition level_partition(const Vec& values, double tol) {
  LevelPartition out;
  const int m = static_cast<int>(values.size());
  std::vector<int> order(m);
  for (int e = 0; e < m; ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  for (int i = 0; i < m; ++i) {
    const double v = values[order[i]];
    if (out.blocks.empty() || v > out.levels.back() + tol) {
      out.blocks.emplace_back();
      out.levels.push_back(v);
    }
    out.blocks.back().push_back(order[i]);
  }
  for (auto& block : out.blocks) std::sort(block.begin(), block.end());
  return out;
}

// ---------------------------------------------------------------------------
// Increase-and-fix
// ---------------------------------------------------------------------------

namespace {

// Separable strictly convex objective driving the projection. Moving by
// gamma along the coordinate direction dir() on a set raises the gradient
// of every touched coordinate by the same delta, which is what lets the
// algorithm track gradient levels instead of coordinates.
struct SeparableTarget {
  enum class Kind { EuclidDist, EntropyDist, WeightedSqNorm };
  Kind kind;
  Vec param;  // y for the distances, w for the weighted norm

  double grad(int e, double xe) const {
    switch (kind) {
      case Kind::EuclidDist:
        return xe - param[e];
      case Kind::EntropyDist:
        return xe > 0.0 ? std::log(xe / param[e]) : -kInf;
      case Kind::WeightedSqNorm:
        return xe / param[e];
    }
    return 0.0;
  }

  double dir(int e, double xe) const {
    switch (kind) {
      case Kind::EuclidDist:
        return 1.0;
      case Kind::EntropyDist:
        return xe;
      case Kind::WeightedSqNorm:
        return param[e];
    }
    return 0.0;
  }

  // Gradient increase achieved by the feasible step gamma along dir().
  double delta_from_step(double gamma) const {
    if (kind == Kind::EntropyDist) return std::log1p(gamma);
    return gamma;
  }

  double apply(int e, double xe, double delta) const {
    switch (kind) {
      case Kind::EuclidDist:
        return xe + delta;
      case Kind::EntropyDist:
        return xe * std::exp(delta);
      case Kind::WeightedSqNorm:
        return xe + delta * param[e];
    }
    return xe;
  }
};

ProjectionResult inc_fix_core(const SubmodularOracle& f, const SeparableTarget& target,
                              Vec x) {
  const int m = f.size();
  ProjectionResult result;
  result.iterates.push_back(x);

  std::vector<bool> active(m, true);
  int active_count = m;
  const int inner_cap = 4 * m;
  int iteration = 0;

  Vec grads(m, 0.0);
  auto recompute_grads = [&] {
    for (int e = 0; e < m; ++e)
      if (active[e]) grads[e] = target.grad(e, x[e]);
  };
  auto min_active_grad = [&] {
    double g = kInf;
    for (int e = 0; e < m; ++e)
      if (active[e]) g = std::min(g, grads[e]);
    return g;
  };
  auto collect_level_set = [&](double gmin) {
    std::vector<int> set;
    for (int e = 0; e < m; ++e)
      if (active[e] && grads[e] <= gmin + kLevelTol) set.push_back(e);
    return set;
  };

  while (active_count > 0) {
    ++iteration;
    recompute_grads();
    double gmin = min_active_grad();
    std::vector<int> level_set = collect_level_set(gmin);
    int iter_inner = 0;

    while (true) {
      const Mask tight = max_tight_set(f, x, kFeasTol);
      bool meets = false;
      for (int e : level_set)
        if (tight & (Mask{1} << e)) {
          meets = true;
          break;
        }
      if (meets) break;

      if (++result.inner_steps > inner_cap)
        throw std::logic_error("inc-fix exceeded its inner iteration budget");
      ++iter_inner;

      Vec d(m, 0.0);
      bool movable = false;
      std::vector<int> stalled;
      for (int e : level_set) {
        d[e] = target.dir(e, x[e]);
        if (d[e] > 1e-300)
          movable = true;
        else
          stalled.push_back(e);
      }
      if (!movable) {
        // Entropy coordinates pinned at zero cannot rise multiplicatively;
        // fix them at zero (reachable only through underflow).
        ProjectionTraceStep step;
        step.iteration = iteration;
        step.fixed = level_set;
        step.level = -kInf;
        step.inner_steps = iter_inner;
        result.trace.push_back(step);
        for (int e : level_set) {
          active[e] = false;
          --active_count;
        }
        level_set.clear();
        break;
      }

      // eps1: feasible gradient increase along the level set.
      const double gamma = line_search(f, x, d);
      const double eps1 = target.delta_from_step(gamma);
      // eps2: gap to the next gradient level among the remaining elements.
      double next = kInf;
      for (int e = 0; e < m; ++e)
        if (active[e] && grads[e] > gmin + kLevelTol) next = std::min(next, grads[e]);
      const double eps2 = next - gmin;

      const double delta = std::min(eps1, eps2);
      if (!(delta > 0.0)) break;  // blocked: a tight set must be meeting us already

      for (int e : level_set) x[e] = target.apply(e, x[e], delta);
      result.iterates.push_back(x);

      recompute_grads();
      gmin = min_active_grad();
      level_set = collect_level_set(gmin);
    }

    if (level_set.empty()) continue;  // whole level set was stalled at zero

    const Mask tight = max_tight_set(f, x, kFeasTol);
    std::vector<int> fixed;
    for (int e : level_set)
      if (tight & (Mask{1} << e)) fixed.push_back(e);
    if (fixed.empty())
      throw std::logic_error("inc-fix inner loop exited without a tight element");

    ProjectionTraceStep step;
    step.iteration = iteration;
    step.fixed = fixed;
    step.level = gmin;
    step.inner_steps = iter_inner;
    result.trace.push_back(step);
    for (int e : fixed) {
      active[e] = false;
      --active_count;
    }
  }

  result.point = x;
  // Final gradient values define the output level partition; blocks whose
  // levels collide within tolerance merge (exact arithmetic keeps them
  // strictly separated).
  Vec final_grads(m, 0.0);
  for (int e = 0; e < m; ++e) final_grads[e] = target.grad(e, x[e]);
  LevelPartition parts = level_partition(final_grads, kLevelTol);
  result.partition = std::move(parts.blocks);
  result.levels = std::move(parts.levels);
  return result;
}

}  // namespace

ProjectionResult inc_fix(const SubmodularOracle& f, const MirrorMap& map, const Vec& y) {
  const int m = f.size();
  if (static_cast<int>(y.size()) != m) throw std::invalid_argument("dimension mismatch");

  SeparableTarget target;
  target.param = y;
  if (map.kind() == MirrorMap::Kind::Euclidean) {
    target.kind = SeparableTarget::Kind::EuclidDist;
    return inc_fix_core(f, target, Vec(m, 0.0));
  }

  target.kind = SeparableTarget::Kind::EntropyDist;
  for (double ye : y)
    if (ye <= 0.0) throw std::invalid_argument("entropy projection needs y > 0");
  // Start strictly inside P(f): half the largest feasible scaling of y.
  const double c_max = line_search(f, Vec(m, 0.0), y);
  Vec start(m);
  for (int e = 0; e < m; ++e) start[e] = 0.5 * c_max * y[e];
  return inc_fix_core(f, target, std::move(start));
}

ProjectionResult inc_fix_weighted_sqnorm(const SubmodularOracle& f, const Vec& w) {
  const int m = f.size();
  if (static_cast<int>(w.size()) != m) throw std::invalid_argument("dimension mismatch");
  for (double we : w)
    if (we <= 0.0) throw std::invalid_argument("weights must be positive");
  SeparableTarget target;
  target.kind = SeparableTarget::Kind::WeightedSqNorm;
  target.param = w;
  return inc_fix_core(f, target, Vec(m, 0.0));
}

bool verify_first_order(const SubmodularOracle& f, const MirrorMap& map, const Vec& y,
                        const Vec& x, LevelPartition* witness, double tol) {
  const int m = f.size();
  if (static_cast<int>(x.size()) != m || static_cast<int>(y.size()) != m)
    throw std::invalid_argument("dimension mismatch");
  if (map.kind() == MirrorMap::Kind::Entropy) {
    for (double ye : y)
      if (ye <= 0.0) throw std::invalid_argument("entropy divergence needs y > 0");
  }

  Vec grads(m);
  for (int e = 0; e < m; ++e) {
    if (map.kind() == MirrorMap::Kind::Euclidean)
      grads[e] = x[e] - y[e];
    else
      grads[e] = x[e] > 0.0 ? std::log(x[e] / y[e]) : -kInf;
  }
  LevelPartition parts = level_partition(grads, kLevelTol);
  if (witness) *witness = parts;

  if (!is_member(f, x, /*in_base=*/true, tol)) return false;

  const double scale = std::max(1.0, std::fabs(f.rank()));
  std::vector<int> prefix;
  for (const auto& block : parts.blocks) {
    prefix.insert(prefix.end(), block.begin(), block.end());
    double sum = 0.0;
    for (int e : prefix) sum += x[e];
    if (std::fabs(f.value(prefix) - sum) > tol * scale) return false;
  }
  return true;
}

}  // namespace polygame
