#include "polygame/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "polygame/errors.hpp"
#include "polygame/simplex.hpp"

namespace polygame {

LossMatrix::LossMatrix(int rows, int cols, Vec row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows_ <= 0 || cols_ <= 0) {
    throw std::invalid_argument("LossMatrix: dimensions must be positive");
  }
  if (data_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
    throw std::invalid_argument("LossMatrix: data size does not match dimensions");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw std::invalid_argument("LossMatrix: entries must be finite");
  }
}

LossMatrix LossMatrix::identity(int m) {
  Vec d(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    d[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(i)] = 1.0;
  }
  return LossMatrix(m, m, std::move(d));
}

LossMatrix LossMatrix::diagonal(Vec diag) {
  const int m = static_cast<int>(diag.size());
  Vec d(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    d[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(i)] =
        diag[static_cast<std::size_t>(i)];
  }
  return LossMatrix(m, m, std::move(d));
}

Vec LossMatrix::apply(const Vec& y) const {
  if (static_cast<int>(y.size()) != cols_) {
    throw std::invalid_argument("LossMatrix::apply: dimension mismatch");
  }
  Vec out(static_cast<std::size_t>(rows_), 0.0);
  for (int i = 0; i < rows_; ++i) {
    double acc = 0.0;
    const double* row = data_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_);
    for (int j = 0; j < cols_; ++j) acc += row[j] * y[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

Vec LossMatrix::apply_transpose(const Vec& x) const {
  if (static_cast<int>(x.size()) != rows_) {
    throw std::invalid_argument("LossMatrix::apply_transpose: dimension mismatch");
  }
  Vec out(static_cast<std::size_t>(cols_), 0.0);
  for (int i = 0; i < rows_; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    if (xi == 0.0) continue;
    const double* row = data_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_);
    for (int j = 0; j < cols_; ++j) out[static_cast<std::size_t>(j)] += xi * row[j];
  }
  return out;
}

double LossMatrix::bilinear(const Vec& x, const Vec& y) const {
  return vec_dot(x, apply(y));
}

double LossMatrix::min_entry() const {
  return *std::min_element(data_.begin(), data_.end());
}

double LossMatrix::max_abs_entry() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool LossMatrix::nonnegative(double tol) const {
  for (double v : data_) {
    if (v < -tol) return false;
  }
  return true;
}

bool LossMatrix::symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      if (std::abs(at(i, j) - at(j, i)) > tol) return false;
    }
  }
  return true;
}

bool LossMatrix::diagonal_matrix(double tol) const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      if (i != j && std::abs(at(i, j)) > tol) return false;
    }
  }
  return true;
}

Vec LossMatrix::diagonal_entries() const {
  if (rows_ != cols_) throw std::invalid_argument("diagonal_entries: matrix is not square");
  Vec d(static_cast<std::size_t>(rows_), 0.0);
  for (int i = 0; i < rows_; ++i) d[static_cast<std::size_t>(i)] = at(i, i);
  return d;
}

LossMatrix LossMatrix::shifted(double c) const {
  Vec d = data_;
  for (double& v : d) v += c;
  return LossMatrix(rows_, cols_, std::move(d));
}

Game::Game(StrategyPolytope p, StrategyPolytope q, LossMatrix loss)
    : P(std::move(p)), Q(std::move(q)), L(std::move(loss)) {
  if (L.rows() != P.dim() || L.cols() != Q.dim()) {
    std::ostringstream os;
    os << "Game: loss matrix is " << L.rows() << "x" << L.cols()
       << " but polytope dimensions are " << P.dim() << " and " << Q.dim();
    throw std::invalid_argument(os.str());
  }
}

double Game::loss_scale() const {
  constexpr std::size_t kPairCap = 1'000'000;
  std::vector<Vec> us, vs;
  bool enumerated = false;
  try {
    us = P.vertices();
    vs = Q.vertices();
    enumerated = us.size() * vs.size() <= kPairCap;
  } catch (const CapacityError&) {
    enumerated = false;
  }
  if (enumerated) {
    double best = 0.0;
    for (const Vec& u : us) {
      const Vec lu = L.apply_transpose(u);
      for (const Vec& v : vs) best = std::max(best, std::abs(vec_dot(lu, v)));
    }
    return best;
  }
  // 0/1 vertices: |u^T L v| <= max|L_ij| * |u|_1 * |v|_1.
  return L.max_abs_entry() * P.vertex_mass() * Q.vertex_mass();
}

BestResponse best_response_col(const Game& game, const Vec& x) {
  const Vec w = game.L.apply_transpose(x);
  BestResponse br;
  br.vertex = game.Q.linopt(w, /*maximize=*/true);
  br.value = vec_dot(w, br.vertex);
  return br;
}

BestResponse best_response_row(const Game& game, const Vec& y) {
  const Vec w = game.L.apply(y);
  BestResponse br;
  br.vertex = game.P.linopt(w, /*maximize=*/false);
  br.value = vec_dot(w, br.vertex);
  return br;
}

EquilibriumCertificate certify(const Game& game, const Vec& x, const Vec& y,
                               double membership_tol) {
  if (!game.P.contains(x, membership_tol)) {
    throw InfeasibleError("certify: row strategy is outside its polytope", x, 0.0);
  }
  if (!game.Q.contains(y, membership_tol)) {
    throw InfeasibleError("certify: column strategy is outside its polytope", y, 0.0);
  }
  EquilibriumCertificate cert;
  cert.x = x;
  cert.y = y;
  cert.value = game.L.bilinear(x, y);
  cert.primal = best_response_col(game, x).value;
  cert.dual = best_response_row(game, y).value;
  cert.gap = cert.primal - cert.dual;
  return cert;
}

GameValue lp_value_by_enumeration(const Game& game, double target_gap) {
  const std::vector<Vec> us = game.P.vertices();
  const std::vector<Vec> vs = game.Q.vertices();
  constexpr std::size_t kPairCap = 1'000'000;
  if (us.size() * vs.size() > kPairCap) {
    throw CapacityError("lp_value_by_enumeration: vertex pair count exceeds the cap");
  }
  std::vector<Vec> R(us.size(), Vec(vs.size(), 0.0));
  for (std::size_t i = 0; i < us.size(); ++i) {
    const Vec lu = game.L.apply_transpose(us[i]);
    for (std::size_t j = 0; j < vs.size(); ++j) {
      R[i][j] = vec_dot(lu, vs[j]);
    }
  }
  const MatrixGameSolution mg = solve_matrix_game(R);

  GameValue out;
  out.value = mg.value;
  out.x.assign(static_cast<std::size_t>(game.P.dim()), 0.0);
  for (std::size_t i = 0; i < us.size(); ++i) {
    const double p = mg.row_mixed[i];
    if (p == 0.0) continue;
    for (int e = 0; e < game.P.dim(); ++e) {
      out.x[static_cast<std::size_t>(e)] += p * us[i][static_cast<std::size_t>(e)];
    }
  }
  out.y.assign(static_cast<std::size_t>(game.Q.dim()), 0.0);
  for (std::size_t j = 0; j < vs.size(); ++j) {
    const double p = mg.col_mixed[j];
    if (p == 0.0) continue;
    for (int e = 0; e < game.Q.dim(); ++e) {
      out.y[static_cast<std::size_t>(e)] += p * vs[j][static_cast<std::size_t>(e)];
    }
  }
  const EquilibriumCertificate cert = certify(game, out.x, out.y, 1e-7);
  out.gap = cert.gap;
  if (!(out.gap <= target_gap)) {
    throw std::logic_error("lp_value_by_enumeration: certified gap exceeds the target");
  }
  return out;
}

}  // namespace polygame
