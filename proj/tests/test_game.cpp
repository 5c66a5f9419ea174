#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "polygame/errors.hpp"
#include "polygame/game.hpp"
#include "polygame/polytope.hpp"
#include "polygame/simplex.hpp"
#include "polygame/submodular.hpp"

using namespace polygame;

namespace {

Game identity_tree_game(int n) {
  auto P = StrategyPolytope::spanning_trees(Graph::complete(n));
  auto Q = StrategyPolytope::spanning_trees(Graph::complete(n));
  const int m = P.dim();
  return Game(std::move(P), std::move(Q), LossMatrix::identity(m));
}

Game identity_uniform_game(int m, int k) {
  auto P = StrategyPolytope::matroid_bases(SubmodularOracle::uniform(m, k));
  auto Q = StrategyPolytope::matroid_bases(SubmodularOracle::uniform(m, k));
  return Game(std::move(P), std::move(Q), LossMatrix::identity(m));
}

}  // namespace

TEST_SUITE("game") {

TEST_CASE("loss matrix accessors and transforms") {
  const LossMatrix L(2, 3, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  CHECK(L.rows() == 2);
  CHECK(L.cols() == 3);
  CHECK(L.at(1, 2) == 6.0);
  CHECK(L.apply({1.0, 0.0, 1.0}) == Vec{4.0, 10.0});
  CHECK(L.apply_transpose({1.0, 1.0}) == Vec{5.0, 7.0, 9.0});
  CHECK(L.bilinear({1.0, 1.0}, {1.0, 0.0, 0.0}) == doctest::Approx(5.0));
  CHECK(L.min_entry() == 1.0);
  CHECK(L.max_abs_entry() == 6.0);
  CHECK(L.nonnegative());
  CHECK_FALSE(L.symmetric());
  CHECK(L.shifted(-1.0).at(0, 0) == 0.0);
  CHECK_FALSE(L.shifted(-2.0).nonnegative());

  const LossMatrix D = LossMatrix::diagonal({2.0, -3.0});
  CHECK(D.diagonal_matrix());
  CHECK(D.symmetric());
  CHECK(D.diagonal_entries() == Vec{2.0, -3.0});
  CHECK(LossMatrix::identity(3).diagonal_entries() == Vec{1.0, 1.0, 1.0});

  CHECK_THROWS_AS(LossMatrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(LossMatrix(1, 1, {std::nan("")}), std::invalid_argument);
}

TEST_CASE("dense simplex solves small linear programs") {
  // max x0 + x1 subject to x0 <= 1, x1 <= 1, x0 + x1 <= 1.5.
  const auto s = simplex_max({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}},
                             {1.0, 1.0, 1.5}, {1.0, 1.0});
  REQUIRE(s.optimal);
  CHECK(s.objective == doctest::Approx(1.5));
  CHECK(s.x[0] + s.x[1] == doctest::Approx(1.5));

  // max x0 subject to -x0 <= 1 is unbounded.
  const auto u = simplex_max({{-1.0}}, {1.0}, {1.0});
  CHECK(u.unbounded);
  CHECK_FALSE(u.optimal);
}

TEST_CASE("matrix game solver on classic payoff tables") {
  const auto pennies = solve_matrix_game({{1.0, -1.0}, {-1.0, 1.0}});
  CHECK(pennies.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(pennies.row_mixed[0] == doctest::Approx(0.5));
  CHECK(pennies.col_mixed[0] == doctest::Approx(0.5));

  const auto rps = solve_matrix_game(
      {{0.0, 1.0, -1.0}, {-1.0, 0.0, 1.0}, {1.0, -1.0, 0.0}});
  CHECK(rps.value == doctest::Approx(0.0).epsilon(1e-9));
  for (int i = 0; i < 3; ++i) {
    CHECK(rps.row_mixed[static_cast<std::size_t>(i)] == doctest::Approx(1.0 / 3.0));
    CHECK(rps.col_mixed[static_cast<std::size_t>(i)] == doctest::Approx(1.0 / 3.0));
  }

  const auto g = solve_matrix_game({{3.0, 1.0}, {0.0, 2.0}});
  CHECK(g.value == doctest::Approx(1.5));
  CHECK(g.row_mixed[0] == doctest::Approx(0.5));
  CHECK(g.col_mixed[0] == doctest::Approx(0.25));
  CHECK(g.col_mixed[1] == doctest::Approx(0.75));
}

TEST_CASE("hull decomposition finds weights inside and separators outside") {
  const std::vector<Vec> square = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};

  const auto mid = hull_decompose(square, {0.5, 0.5});
  REQUIRE(mid.inside);
  double total = 0.0;
  Vec recon(2, 0.0);
  for (const auto& [idx, w] : mid.support) {
    CHECK(w >= -1e-12);
    total += w;
    recon[0] += w * square[static_cast<std::size_t>(idx)][0];
    recon[1] += w * square[static_cast<std::size_t>(idx)][1];
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(linf_dist(recon, {0.5, 0.5}) <= 1e-8);
  CHECK(mid.support.size() <= 3);  // dim + 1 = 3 suffices for a basic solution

  const auto corner = hull_decompose(square, {1.0, 0.0});
  REQUIRE(corner.inside);

  const Vec out = {1.5, 0.5};
  const auto sep = hull_decompose(square, out);
  REQUIRE_FALSE(sep.inside);
  const double at_x = vec_dot(sep.separator, out);
  CHECK(at_x > sep.rhs);
  for (const Vec& u : square) CHECK(vec_dot(sep.separator, u) <= sep.rhs + 1e-9);
}

TEST_CASE("game construction checks dimensions and loss_scale is tight") {
  CHECK_THROWS_AS(Game(StrategyPolytope::spanning_trees(Graph::complete(3)),
                       StrategyPolytope::spanning_trees(Graph::complete(3)),
                       LossMatrix::identity(4)),
                  std::invalid_argument);
  CHECK(identity_tree_game(3).loss_scale() == doctest::Approx(2.0));
  CHECK(identity_tree_game(4).loss_scale() == doctest::Approx(3.0));
  CHECK(identity_uniform_game(4, 2).loss_scale() == doctest::Approx(2.0));
}

TEST_CASE("best responses optimize over the vertex set") {
  const Game g = identity_uniform_game(4, 2);
  const auto col = best_response_col(g, {1.0, 1.0, 0.0, 0.0});
  CHECK(col.vertex == Vec{1.0, 1.0, 0.0, 0.0});
  CHECK(col.value == doctest::Approx(2.0));
  const auto row = best_response_row(g, {1.0, 1.0, 0.0, 0.0});
  CHECK(row.vertex == Vec{0.0, 0.0, 1.0, 1.0});
  CHECK(row.value == doctest::Approx(0.0));

  // Symmetric fractional point: the response value is flat across vertices.
  const Game k3 = identity_tree_game(3);
  const double t = 2.0 / 3.0;
  CHECK(best_response_col(k3, {t, t, t}).value == doctest::Approx(4.0 / 3.0));
  CHECK(best_response_row(k3, {t, t, t}).value == doctest::Approx(4.0 / 3.0));

  // An all-zero loss matrix makes every response worthless.
  auto P = StrategyPolytope::matroid_bases(SubmodularOracle::uniform(3, 1));
  auto Q = StrategyPolytope::matroid_bases(SubmodularOracle::uniform(3, 1));
  const Game z(std::move(P), std::move(Q), LossMatrix(3, 3, Vec(9, 0.0)));
  CHECK(best_response_col(z, {1.0, 0.0, 0.0}).value == 0.0);
}

TEST_CASE("certify computes the exact duality gap") {
  const Game k3 = identity_tree_game(3);
  const double t = 2.0 / 3.0;
  const auto cert = certify(k3, {t, t, t}, {t, t, t});
  CHECK(cert.value == doctest::Approx(4.0 / 3.0));
  CHECK(cert.primal == doctest::Approx(4.0 / 3.0));
  CHECK(cert.dual == doctest::Approx(4.0 / 3.0));
  CHECK(cert.gap <= 1e-9);
  CHECK(cert.gap >= -1e-12);

  const Game u = identity_uniform_game(4, 2);
  const auto pure = certify(u, {1.0, 1.0, 0.0, 0.0}, {1.0, 1.0, 0.0, 0.0});
  CHECK(pure.value == doctest::Approx(2.0));
  CHECK(pure.primal == doctest::Approx(2.0));
  CHECK(pure.dual == doctest::Approx(0.0));
  CHECK(pure.gap == doctest::Approx(2.0));

  CHECK_THROWS_AS(certify(u, {1.0, 1.0, 1.0, 0.0}, {1.0, 1.0, 0.0, 0.0}),
                  InfeasibleError);
  CHECK_THROWS_AS(certify(u, {0.5, 0.5, 0.5, 0.5}, {2.0, 0.0, 0.0, 0.0}),
                  InfeasibleError);
}

TEST_CASE("enumeration LP reproduces known game values") {
  const auto k3 = lp_value_by_enumeration(identity_tree_game(3));
  CHECK(k3.value == doctest::Approx(4.0 / 3.0));
  CHECK(k3.gap <= 1e-9);
  CHECK(linf_dist(k3.x, {2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0}) <= 1e-9);

  const auto k4 = lp_value_by_enumeration(identity_tree_game(4));
  CHECK(k4.value == doctest::Approx(1.5));
  CHECK(k4.gap <= 1e-9);

  const auto u24 = lp_value_by_enumeration(identity_uniform_game(4, 2));
  CHECK(u24.value == doctest::Approx(1.0));
  CHECK(linf_dist(u24.x, {0.5, 0.5, 0.5, 0.5}) <= 1e-9);

  auto P = StrategyPolytope::explicit_vertices({{1.0, 0.0}});
  auto Q = StrategyPolytope::explicit_vertices({{0.0, 1.0}});
  const Game single(std::move(P), std::move(Q), LossMatrix(2, 2, {5.0, 7.0, 1.0, 2.0}));
  const auto sv = lp_value_by_enumeration(single);
  CHECK(sv.value == doctest::Approx(7.0));
  CHECK(sv.gap <= 1e-9);

  auto P0 = StrategyPolytope::spanning_trees(Graph::complete(3));
  auto Q0 = StrategyPolytope::spanning_trees(Graph::complete(3));
  const Game zero(std::move(P0), std::move(Q0), LossMatrix(3, 3, Vec(9, 0.0)));
  CHECK(lp_value_by_enumeration(zero).value == doctest::Approx(0.0));
}

TEST_CASE("loss is bilinear in both arguments") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    Vec data(12);
    for (double& v : data) v = entry(rng);
    const LossMatrix L(3, 4, data);
    Vec x1(3), x2(3), y(4);
    for (double& v : x1) v = entry(rng);
    for (double& v : x2) v = entry(rng);
    for (double& v : y) v = entry(rng);
    const double a = entry(rng), b = entry(rng);
    Vec mix(3);
    for (int i = 0; i < 3; ++i)
      mix[static_cast<std::size_t>(i)] = a * x1[static_cast<std::size_t>(i)] +
                                         b * x2[static_cast<std::size_t>(i)];
    const double lhs = L.bilinear(mix, y);
    const double rhs = a * L.bilinear(x1, y) + b * L.bilinear(x2, y);
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
  }
}

TEST_CASE("expected loss depends on vertex mixtures only through marginals") {
  // Two distinct mixtures over disjoint vertex pairs share the marginal
  // (1/2, 1/2, 1/2, 1/2); their expected losses agree against any opponent.
  const std::vector<Vec> mixA = {{1.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 1.0}};
  const std::vector<Vec> mixB = {{1.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 1.0}};
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> entry(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    Vec data(16), y(4);
    for (double& v : data) v = entry(rng);
    for (double& v : y) v = entry(rng);
    const LossMatrix L(4, 4, data);
    double lossA = 0.0, lossB = 0.0;
    for (const Vec& v : mixA) lossA += 0.5 * L.bilinear(v, y);
    for (const Vec& v : mixB) lossB += 0.5 * L.bilinear(v, y);
    const double marginal = L.bilinear({0.5, 0.5, 0.5, 0.5}, y);
    CHECK(std::fabs(lossA - lossB) <= 1e-12 * std::max(1.0, std::fabs(lossA)));
    CHECK(std::fabs(lossA - marginal) <= 1e-12 * std::max(1.0, std::fabs(lossA)));
  }
}

TEST_CASE("best-response value is convex in the queried strategy") {
  std::mt19937_64 rng(47);
  const Game g = identity_uniform_game(4, 2);
  const auto f = SubmodularOracle::uniform(4, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec x1 = polytest::random_base_point(f, rng);
    const Vec x2 = polytest::random_base_point(f, rng);
    Vec mid(4);
    for (int i = 0; i < 4; ++i)
      mid[static_cast<std::size_t>(i)] =
          0.5 * (x1[static_cast<std::size_t>(i)] + x2[static_cast<std::size_t>(i)]);
    const double vm = best_response_col(g, mid).value;
    const double v1 = best_response_col(g, x1).value;
    const double v2 = best_response_col(g, x2).value;
    CHECK(vm <= 0.5 * (v1 + v2) + 1e-12);
    // The row side minimizes, so its value is concave.
    const double wm = best_response_row(g, mid).value;
    const double w1 = best_response_row(g, x1).value;
    const double w2 = best_response_row(g, x2).value;
    CHECK(wm >= 0.5 * (w1 + w2) - 1e-12);
  }
}

}  // TEST_SUITE
