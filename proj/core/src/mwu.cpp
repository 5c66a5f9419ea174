#include "polygame/mwu.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "polygame/errors.hpp"

namespace polygame {

Vec mwu_update(const Vec& lambda, const Vec& loss, double beta, double F) {
  if (lambda.size() != loss.size()) {
    throw std::invalid_argument("mwu_update: dimension mismatch");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("mwu_update: beta must lie in (0, 1)");
  }
  if (!(F > 0.0)) throw std::invalid_argument("mwu_update: loss scale must be positive");
  Vec out(lambda.size(), 0.0);
  for (std::size_t e = 0; e < lambda.size(); ++e) {
    if (loss[e] < -1e-12) {
      throw std::invalid_argument("mwu_update: losses must be nonnegative");
    }
    out[e] = lambda[e] * std::pow(beta, std::max(0.0, loss[e]) / F);
  }
  return out;
}

namespace {

// Keep the multiplier vector in a safe floating-point window; the product
// distribution is invariant under positive scaling.
void renormalize_if_needed(Vec& lambda) {
  double lo = kInf, hi = 0.0, logsum = 0.0;
  for (double l : lambda) {
    lo = std::min(lo, l);
    hi = std::max(hi, l);
    logsum += std::log(l);
  }
  const bool extreme_ratio = (lo > 0.0 && hi / lo > 1e12);
  const bool extreme_magnitude = (lo < 1e-100 || hi > 1e100);
  if (!extreme_ratio && !extreme_magnitude) return;
  const double gm = std::exp(logsum / static_cast<double>(lambda.size()));
  for (double& l : lambda) l /= gm;
}

}  // namespace

MwuResult solve_nash_mwu(const Game& game, const CountingOracle& oracle, MwuConfig cfg) {
  const int m = game.P.dim();
  if (oracle.dim() != m) {
    throw ConfigError("mwu solver: counting oracle dimension does not match the row polytope");
  }

  // Shift the loss matrix to be entrywise nonnegative. Constant vertex mass
  // on both sides makes the shifted game strategically identical.
  double shift = std::max(0.0, -game.L.min_entry());
  if (shift > 0.0 && !(game.P.constant_vertex_mass() && game.Q.constant_vertex_mass())) {
    throw ConfigError(
        "mwu solver: negative losses require constant vertex mass on both polytopes");
  }
  const LossMatrix Ls = (shift > 0.0) ? game.L.shifted(shift) : game.L;
  const Game shifted_game(game.P, game.Q, Ls);

  if (cfg.F == 0.0) cfg.F = shifted_game.loss_scale();
  if (cfg.F <= 0.0) cfg.F = 1.0;  // all-zero losses: updates become no-ops
  const double F = cfg.F;
  if (!(cfg.epsilon > 0.0) && (cfg.rounds == 0 || cfg.beta == 0.0)) {
    throw ConfigError("mwu solver needs a positive epsilon (or explicit rounds and beta)");
  }
  double eps_prime = (cfg.epsilon > 0.0) ? cfg.epsilon / F : 0.0;
  if (cfg.beta == 0.0) {
    cfg.beta = 1.0 / (1.0 + std::sqrt(2.0) * eps_prime);
  } else if (cfg.epsilon <= 0.0) {
    eps_prime = (1.0 / cfg.beta - 1.0) / std::sqrt(2.0);  // invert beta's formula
  }
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0)) {
    throw ConfigError("mwu solver: beta must lie in (0, 1)");
  }
  if (cfg.rounds == 0) {
    const double ln_u = oracle.log_count();
    cfg.rounds = static_cast<int>(std::ceil(F * F * ln_u / (cfg.epsilon * cfg.epsilon)));
    cfg.rounds = std::max(cfg.rounds, 1);
  }
  const int T = cfg.rounds;
  const double eps1 = cfg.approx_marginal;
  const double eps2 = cfg.approx_response;
  const double membership_tol = 1e-6 + eps1 * static_cast<double>(m);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Vec> q_vertices;  // needed only for approximate responses
  if (eps2 > 0.0) q_vertices = game.Q.vertices();

  Vec lambda(static_cast<std::size_t>(m), 1.0);
  Vec sum_x(static_cast<std::size_t>(m), 0.0);
  Vec sum_v(static_cast<std::size_t>(game.Q.dim()), 0.0);
  Vec sum_loss(static_cast<std::size_t>(m), 0.0);
  double cumulative_loss = 0.0;

  const int qdim = game.Q.dim();
  TraceTable trace;
  trace.columns = {"round"};
  for (int e = 0; e < m; ++e) trace.columns.push_back("log_lambda" + std::to_string(e));
  for (int e = 0; e < m; ++e) trace.columns.push_back("x" + std::to_string(e));
  for (int e = 0; e < qdim; ++e) trace.columns.push_back("v" + std::to_string(e));
  trace.columns.insert(trace.columns.end(),
                       {"instant_loss", "cumulative_regret", "running_gap"});
  trace.rows.reserve(static_cast<std::size_t>(T));

  for (int t = 1; t <= T; ++t) {
    Vec x = oracle.marginals(lambda);
    if (eps1 > 0.0) {
      std::uniform_real_distribution<double> noise(-eps1, eps1);
      for (double& c : x) c = std::clamp(c + noise(rng), 0.0, 1.0);
    }
    if (!game.P.contains(x, membership_tol)) {
      throw IntegrityError("mwu solver: marginal point escaped the row polytope");
    }

    // Column player's (possibly eps2-suboptimal) response to x under the
    // shifted loss; a constant shift does not change the argmax.
    Vec v;
    const Vec w = Ls.apply_transpose(x);
    if (eps2 > 0.0) {
      double best = -kInf;
      for (const Vec& cand : q_vertices) best = std::max(best, vec_dot(w, cand));
      std::vector<const Vec*> near;
      for (const Vec& cand : q_vertices) {
        if (vec_dot(w, cand) >= best - eps2) near.push_back(&cand);
      }
      const std::size_t pick =
          std::min(near.size() - 1, static_cast<std::size_t>(unit(rng) * static_cast<double>(near.size())));
      v = *near[pick];
    } else {
      v = game.Q.linopt(w, /*maximize=*/true);
    }

    const Vec loss = Ls.apply(v);
    cumulative_loss += vec_dot(loss, x);
    for (int e = 0; e < m; ++e) {
      sum_x[static_cast<std::size_t>(e)] += x[static_cast<std::size_t>(e)];
      sum_loss[static_cast<std::size_t>(e)] += loss[static_cast<std::size_t>(e)];
    }
    for (int e = 0; e < game.Q.dim(); ++e) {
      sum_v[static_cast<std::size_t>(e)] += v[static_cast<std::size_t>(e)];
    }

    const Vec best_fixed = game.P.linopt(sum_loss, /*maximize=*/false);
    const double regret = cumulative_loss - vec_dot(sum_loss, best_fixed);

    Vec xbar = sum_x, vbar = sum_v;
    for (double& c : xbar) c /= static_cast<double>(t);
    for (double& c : vbar) c /= static_cast<double>(t);
    const double running_gap =
        best_response_col(game, xbar).value - best_response_row(game, vbar).value;

    Vec row;
    row.reserve(static_cast<std::size_t>(2 * m + qdim + 4));
    row.push_back(static_cast<double>(t));
    for (double l : lambda) row.push_back(std::log(l));
    row.insert(row.end(), x.begin(), x.end());
    row.insert(row.end(), v.begin(), v.end());
    row.push_back(vec_dot(loss, x));
    row.push_back(regret);
    row.push_back(running_gap);
    trace.rows.push_back(std::move(row));

    lambda = mwu_update(lambda, loss, cfg.beta, F);
    renormalize_if_needed(lambda);
  }

  Vec xbar = sum_x, ybar = sum_v;
  for (double& c : xbar) c /= static_cast<double>(T);
  for (double& c : ybar) c /= static_cast<double>(T);

  MwuResult out;
  out.certificate = certify(game, xbar, ybar, membership_tol);
  out.certificate.solver = "mwu";
  out.certificate.rounds = T;
  out.certificate.epsilon = cfg.epsilon;
  out.certificate.loss_shift = shift;
  out.certificate.approx_marginal = eps1;
  out.certificate.approx_response = eps2;
  out.certificate.regret = trace.rows.back()[static_cast<std::size_t>(2 * m + qdim + 2)];
  // Average regret of the exact simulation is at most (sqrt(2) eps' +
  // eps'^2) F; approximation adds F eps1 per round, and the response error
  // adds eps2 to the equilibrium gap of the averaged pair.
  const double avg_regret_bound = (std::sqrt(2.0) * eps_prime + eps_prime * eps_prime) * F;
  out.certificate.regret_bound = avg_regret_bound * static_cast<double>(T);
  out.certificate.gap_bound = 2.0 * (avg_regret_bound + F * eps1 + eps2);
  out.trace = std::move(trace);
  out.resolved = cfg;
  return out;
}

}  // namespace polygame
