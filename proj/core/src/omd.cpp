#include "polygame/omd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polygame/errors.hpp"

namespace polygame {

Vec omd_step(const SubmodularOracle& f, const MirrorMap& map, const Vec& x,
             const Vec& loss, double eta) {
  if (x.size() != loss.size() || static_cast<int>(x.size()) != f.size()) {
    throw std::invalid_argument("omd_step: dimension mismatch");
  }
  if (!(eta > 0.0)) throw std::invalid_argument("omd_step: step size must be positive");
  Vec y(x.size(), 0.0);
  if (map.kind() == MirrorMap::Kind::Euclidean) {
    for (std::size_t e = 0; e < x.size(); ++e) y[e] = x[e] - eta * loss[e];
  } else {
    for (std::size_t e = 0; e < x.size(); ++e) {
      if (!(x[e] > 0.0)) {
        throw std::invalid_argument("omd_step: entropy update requires a positive iterate");
      }
      y[e] = x[e] * std::exp(-eta * loss[e]);
    }
  }
  return inc_fix(f, map, y).point;
}

namespace {

// Largest omega over the vertices of an oracle-backed base polytope. For a
// matroid every vertex is 0/1 with exactly rank(f) ones, so both maps have a
// closed form; otherwise fall back to vertex enumeration.
double max_omega_over_vertices(const StrategyPolytope& P, const MirrorMap& map) {
  if (P.is_base_polytope() && P.oracle().matroid()) {
    const double r = P.oracle().rank();
    return map.kind() == MirrorMap::Kind::Euclidean ? 0.5 * r : -r;
  }
  double best = -kInf;
  for (const Vec& v : P.vertices()) best = std::max(best, map.omega(v));
  return best;
}

}  // namespace

OmdResult solve_nash_omd(const Game& game, OmdConfig cfg) {
  if (!game.P.is_base_polytope()) {
    throw ConfigError("omd solver requires an oracle-backed row polytope");
  }
  const SubmodularOracle& f = game.P.oracle();
  const int m = f.size();
  const MirrorMap& map = cfg.map;

  // Mirror-map center: Bregman projection of the natural origin.
  Vec center;
  if (map.kind() == MirrorMap::Kind::Euclidean) {
    center = inc_fix(f, map, Vec(static_cast<std::size_t>(m), 0.0)).point;
  } else {
    center = inc_fix(f, map, Vec(static_cast<std::size_t>(m), 1.0)).point;
  }

  if (cfg.R2 == 0.0) {
    cfg.R2 = std::max(1e-12, max_omega_over_vertices(game.P, map) - map.omega(center));
  }
  if (cfg.G == 0.0) {
    double g = 0.0;
    for (const Vec& v : game.Q.vertices()) {
      const Vec lv = game.L.apply(v);
      if (map.kind() == MirrorMap::Kind::Euclidean) {
        g = std::max(g, std::sqrt(vec_dot(lv, lv)));
      } else {
        for (double c : lv) g = std::max(g, std::abs(c));
      }
    }
    cfg.G = g;
  }
  if (cfg.k == 0.0) {
    cfg.k = map.kind() == MirrorMap::Kind::Euclidean ? 1.0 : 1.0 / f.rank();
  }
  if (cfg.rounds == 0) {
    if (!(cfg.epsilon > 0.0)) {
      throw ConfigError("omd solver needs either a positive epsilon or explicit rounds");
    }
    // Gap bound 2 R G sqrt(2/(T k)) <= epsilon  <=>  T >= 8 R^2 G^2/(k eps^2).
    cfg.rounds = static_cast<int>(
        std::ceil(8.0 * cfg.R2 * cfg.G * cfg.G / (cfg.k * cfg.epsilon * cfg.epsilon)));
    cfg.rounds = std::max(cfg.rounds, 1);
  }
  const int T = cfg.rounds;
  const double R = std::sqrt(cfg.R2);
  if (cfg.eta == 0.0) {
    cfg.eta = (cfg.G > 0.0) ? (R / cfg.G) * std::sqrt(2.0 * cfg.k / static_cast<double>(T))
                            : 1.0;
  }

  Vec x = center;
  Vec sum_x(static_cast<std::size_t>(m), 0.0);
  Vec sum_v(static_cast<std::size_t>(game.Q.dim()), 0.0);
  Vec sum_loss(static_cast<std::size_t>(m), 0.0);
  double cumulative_loss = 0.0;

  TraceTable trace;
  trace.columns = {"round"};
  for (int e = 0; e < m; ++e) trace.columns.push_back("x" + std::to_string(e));
  for (int e = 0; e < m; ++e) trace.columns.push_back("loss" + std::to_string(e));
  trace.columns.insert(trace.columns.end(),
                       {"instant_loss", "cumulative_regret", "running_gap"});
  trace.rows.reserve(static_cast<std::size_t>(T));

  for (int t = 1; t <= T; ++t) {
    const BestResponse br = best_response_col(game, x);
    const Vec loss = game.L.apply(br.vertex);

    cumulative_loss += vec_dot(loss, x);
    for (int e = 0; e < m; ++e) {
      sum_x[static_cast<std::size_t>(e)] += x[static_cast<std::size_t>(e)];
      sum_loss[static_cast<std::size_t>(e)] += loss[static_cast<std::size_t>(e)];
    }
    for (int e = 0; e < game.Q.dim(); ++e) {
      sum_v[static_cast<std::size_t>(e)] += br.vertex[static_cast<std::size_t>(e)];
    }

    // Measured regret so far: realized loss minus the best fixed vertex in
    // hindsight against the cumulative loss vector.
    const Vec best_fixed = game.P.linopt(sum_loss, /*maximize=*/false);
    const double regret = cumulative_loss - vec_dot(sum_loss, best_fixed);

    Vec xbar = sum_x, vbar = sum_v;
    for (double& c : xbar) c /= static_cast<double>(t);
    for (double& c : vbar) c /= static_cast<double>(t);
    const double running_primal = best_response_col(game, xbar).value;
    const double running_dual = best_response_row(game, vbar).value;

    Vec row;
    row.reserve(static_cast<std::size_t>(2 * m + 4));
    row.push_back(static_cast<double>(t));
    row.insert(row.end(), x.begin(), x.end());
    row.insert(row.end(), loss.begin(), loss.end());
    row.push_back(vec_dot(loss, x));
    row.push_back(regret);
    row.push_back(running_primal - running_dual);
    trace.rows.push_back(std::move(row));

    if (t < T) x = omd_step(f, map, x, loss, cfg.eta);
  }

  Vec xbar = sum_x, ybar = sum_v;
  for (double& c : xbar) c /= static_cast<double>(T);
  for (double& c : ybar) c /= static_cast<double>(T);

  OmdResult out;
  out.certificate = certify(game, xbar, ybar, 1e-7);
  out.certificate.solver = std::string("omd-") + map.name();
  out.certificate.rounds = T;
  out.certificate.epsilon = cfg.epsilon;
  out.certificate.regret = trace.rows.back()[static_cast<std::size_t>(2 * m + 2)];
  out.certificate.regret_bound = R * cfg.G * std::sqrt(2.0 * T / cfg.k);
  out.certificate.gap_bound = 2.0 * R * cfg.G * std::sqrt(2.0 / (static_cast<double>(T) * cfg.k));
  out.trace = std::move(trace);
  out.resolved = cfg;
  return out;
}

}  // namespace polygame
