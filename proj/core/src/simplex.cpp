#include "polygame/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polygame/errors.hpp"

namespace polygame {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr int kMaxPivots = 200000;

// In-place tableau. rows x (cols + 1); last column is the rhs. `obj` has the
// reduced-cost row (length cols + 1, last entry = -objective value so far).
struct Tableau {
  int rows = 0;
  int cols = 0;
  std::vector<Vec> t;
  Vec obj;
  std::vector<int> basis;

  double& at(int i, int j) { return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  double rhs(int i) const { return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)]; }

  void pivot(int pr, int pc) {
    Vec& prow = t[static_cast<std::size_t>(pr)];
    const double piv = prow[static_cast<std::size_t>(pc)];
    for (double& v : prow) v /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == pr) continue;
      Vec& row = t[static_cast<std::size_t>(i)];
      const double factor = row[static_cast<std::size_t>(pc)];
      if (factor == 0.0) continue;
      for (int j = 0; j <= cols; ++j) {
        row[static_cast<std::size_t>(j)] -= factor * prow[static_cast<std::size_t>(j)];
      }
      row[static_cast<std::size_t>(pc)] = 0.0;
    }
    const double ofactor = obj[static_cast<std::size_t>(pc)];
    if (ofactor != 0.0) {
      for (int j = 0; j <= cols; ++j) {
        obj[static_cast<std::size_t>(j)] -= ofactor * prow[static_cast<std::size_t>(j)];
      }
      obj[static_cast<std::size_t>(pc)] = 0.0;
    }
    basis[static_cast<std::size_t>(pr)] = pc;
  }

  // Bland's rule: entering = smallest column index with negative reduced
  // cost; leaving = min ratio, ties broken by smallest basis variable.
  // Returns true at optimality, false when unbounded.
  bool run() {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      int pc = -1;
      for (int j = 0; j < cols; ++j) {
        if (obj[static_cast<std::size_t>(j)] < -kPivotTol) {
          pc = j;
          break;
        }
      }
      if (pc < 0) return true;
      int pr = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows; ++i) {
        const double a = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(pc)];
        if (a <= kPivotTol) continue;
        const double ratio = rhs(i) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 &&
             (pr < 0 || basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(pr)]))) {
          best_ratio = ratio;
          pr = i;
        }
      }
      if (pr < 0) return false;
      pivot(pr, pc);
    }
    throw std::logic_error("simplex exceeded the pivot budget");
  }
};

}  // namespace

SimplexSolution simplex_max(const std::vector<Vec>& A, const Vec& b, const Vec& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != m) {
    throw std::invalid_argument("simplex_max: b size mismatch");
  }
  for (const Vec& row : A) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("simplex_max: A column count mismatch");
    }
  }
  for (double bi : b) {
    if (bi < 0.0) throw std::invalid_argument("simplex_max: requires b >= 0");
  }

  Tableau tab;
  tab.rows = m;
  tab.cols = n + m;
  tab.t.assign(static_cast<std::size_t>(m), Vec(static_cast<std::size_t>(tab.cols + 1), 0.0));
  tab.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab.at(i, j) = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    tab.at(i, n + i) = 1.0;
    tab.at(i, tab.cols) = b[static_cast<std::size_t>(i)];
    tab.basis[static_cast<std::size_t>(i)] = n + i;
  }
  tab.obj.assign(static_cast<std::size_t>(tab.cols + 1), 0.0);
  for (int j = 0; j < n; ++j) tab.obj[static_cast<std::size_t>(j)] = -c[static_cast<std::size_t>(j)];

  SimplexSolution sol;
  const bool finite = tab.run();
  if (!finite) {
    sol.unbounded = true;
    return sol;
  }
  sol.optimal = true;
  sol.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) {
    const int bv = tab.basis[static_cast<std::size_t>(i)];
    if (bv < n) sol.x[static_cast<std::size_t>(bv)] = tab.rhs(i);
  }
  // For max c.x with Ax <= b the optimal dual multipliers are the reduced
  // costs sitting under the slack columns.
  sol.dual.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    sol.dual[static_cast<std::size_t>(i)] = std::max(0.0, tab.obj[static_cast<std::size_t>(n + i)]);
  }
  // With obj initialized to -c, pivoting accumulates +c.x in the rhs cell.
  sol.objective = tab.obj[static_cast<std::size_t>(tab.cols)];
  return sol;
}

MatrixGameSolution solve_matrix_game(const std::vector<Vec>& R) {
  const int nr = static_cast<int>(R.size());
  if (nr == 0) throw std::invalid_argument("solve_matrix_game: empty matrix");
  const int nc = static_cast<int>(R.front().size());
  if (nc == 0) throw std::invalid_argument("solve_matrix_game: empty matrix");
  double lo = R[0][0];
  for (const Vec& row : R) {
    if (static_cast<int>(row.size()) != nc) {
      throw std::invalid_argument("solve_matrix_game: ragged matrix");
    }
    for (double v : row) lo = std::min(lo, v);
  }
  const double shift = 1.0 - lo;  // entries of the shifted matrix are >= 1

  // Row player minimizes. With R' = R + shift > 0 solve
  //   max 1.s  s.t.  R'^T s <= 1, s >= 0        (variables: one per row)
  // Then value' = 1 / sum(s), x* = s * value', and the column mixed strategy
  // comes from the dual multipliers of the nc constraints.
  std::vector<Vec> A(static_cast<std::size_t>(nc), Vec(static_cast<std::size_t>(nr), 0.0));
  for (int j = 0; j < nc; ++j) {
    for (int i = 0; i < nr; ++i) {
      A[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          R[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + shift;
    }
  }
  const Vec b(static_cast<std::size_t>(nc), 1.0);
  const Vec c(static_cast<std::size_t>(nr), 1.0);
  SimplexSolution lp = simplex_max(A, b, c);
  if (!lp.optimal || lp.objective <= 0.0) {
    throw std::logic_error("matrix game LP failed to solve");
  }
  const double inv_value = lp.objective;  // = 1 / value'
  MatrixGameSolution out;
  out.row_mixed.assign(static_cast<std::size_t>(nr), 0.0);
  for (int i = 0; i < nr; ++i) {
    out.row_mixed[static_cast<std::size_t>(i)] =
        std::max(0.0, lp.x[static_cast<std::size_t>(i)] / inv_value);
  }
  out.col_mixed.assign(static_cast<std::size_t>(nc), 0.0);
  double dual_sum = 0.0;
  for (double d : lp.dual) dual_sum += d;
  if (dual_sum <= 0.0) throw std::logic_error("matrix game LP produced a zero dual");
  for (int j = 0; j < nc; ++j) {
    out.col_mixed[static_cast<std::size_t>(j)] = lp.dual[static_cast<std::size_t>(j)] / dual_sum;
  }
  out.value = 1.0 / inv_value - shift;

  // Normalize tiny negative rounding in the mixed strategies.
  auto renorm = [](Vec& p) {
    double s = 0.0;
    for (double& v : p) {
      v = std::max(0.0, v);
      s += v;
    }
    for (double& v : p) v /= s;
  };
  renorm(out.row_mixed);
  renorm(out.col_mixed);
  return out;
}

namespace {

// Separating hyperplane LP: max w.x - w0 over |w|_inf <= 1 subject to
// w.u <= w0 for every vertex u. Positive optimum certifies separation.
bool separating_hyperplane(const std::vector<Vec>& verts, const Vec& x,
                           double tol, Vec* w_out, double* rhs_out) {
  const int m = static_cast<int>(x.size());
  const int nv = static_cast<int>(verts.size());
  // Variables: p (m), q (m), r, s with w = p - q and w0 = r - s.
  const int n = 2 * m + 2;
  std::vector<Vec> A;
  Vec b;
  A.reserve(static_cast<std::size_t>(nv + 2 * m));
  for (int vi = 0; vi < nv; ++vi) {
    Vec row(static_cast<std::size_t>(n), 0.0);
    for (int e = 0; e < m; ++e) {
      const double ve = verts[static_cast<std::size_t>(vi)][static_cast<std::size_t>(e)];
      row[static_cast<std::size_t>(e)] = ve;
      row[static_cast<std::size_t>(m + e)] = -ve;
    }
    row[static_cast<std::size_t>(2 * m)] = -1.0;
    row[static_cast<std::size_t>(2 * m + 1)] = 1.0;
    A.push_back(std::move(row));
    b.push_back(0.0);
  }
  for (int e = 0; e < 2 * m; ++e) {
    Vec row(static_cast<std::size_t>(n), 0.0);
    row[static_cast<std::size_t>(e)] = 1.0;
    A.push_back(std::move(row));
    b.push_back(1.0);
  }
  Vec c(static_cast<std::size_t>(n), 0.0);
  for (int e = 0; e < m; ++e) {
    c[static_cast<std::size_t>(e)] = x[static_cast<std::size_t>(e)];
    c[static_cast<std::size_t>(m + e)] = -x[static_cast<std::size_t>(e)];
  }
  c[static_cast<std::size_t>(2 * m)] = -1.0;
  c[static_cast<std::size_t>(2 * m + 1)] = 1.0;

  SimplexSolution lp = simplex_max(A, b, c);
  if (!lp.optimal || lp.objective <= tol) return false;
  w_out->assign(static_cast<std::size_t>(m), 0.0);
  for (int e = 0; e < m; ++e) {
    (*w_out)[static_cast<std::size_t>(e)] =
        lp.x[static_cast<std::size_t>(e)] - lp.x[static_cast<std::size_t>(m + e)];
  }
  *rhs_out = lp.x[static_cast<std::size_t>(2 * m)] - lp.x[static_cast<std::size_t>(2 * m + 1)];
  return true;
}

}  // namespace

HullDecomposition hull_decompose(const std::vector<Vec>& verts, const Vec& x, double tol) {
  const int m = static_cast<int>(x.size());
  const int nv = static_cast<int>(verts.size());
  if (nv == 0) throw std::invalid_argument("hull_decompose: no vertices");
  for (const Vec& v : verts) {
    if (static_cast<int>(v.size()) != m) {
      throw std::invalid_argument("hull_decompose: vertex dimension mismatch");
    }
  }

  // Phase-1 feasibility for  V theta = x, 1.theta = 1, theta >= 0:
  // minimize the artificial mass. Rows are sign-flipped so rhs >= 0 and the
  // artificial identity is a feasible starting basis.
  const int rows = m + 1;
  Tableau tab;
  tab.rows = rows;
  tab.cols = nv + rows;
  tab.t.assign(static_cast<std::size_t>(rows), Vec(static_cast<std::size_t>(tab.cols + 1), 0.0));
  tab.basis.resize(static_cast<std::size_t>(rows));
  double scale = 1.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < rows; ++i) {
    const double rhs = (i < m) ? x[static_cast<std::size_t>(i)] : 1.0;
    const double sgn = (rhs < 0.0) ? -1.0 : 1.0;
    for (int j = 0; j < nv; ++j) {
      const double a = (i < m) ? verts[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] : 1.0;
      tab.at(i, j) = sgn * a;
    }
    tab.at(i, nv + i) = 1.0;
    tab.at(i, tab.cols) = sgn * rhs;
    tab.basis[static_cast<std::size_t>(i)] = nv + i;
  }
  // Objective: max -(sum of artificials); price out the initial basis.
  tab.obj.assign(static_cast<std::size_t>(tab.cols + 1), 0.0);
  for (int j = 0; j < rows; ++j) tab.obj[static_cast<std::size_t>(nv + j)] = 1.0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j <= tab.cols; ++j) {
      tab.obj[static_cast<std::size_t>(j)] -= tab.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  if (!tab.run()) throw std::logic_error("hull feasibility LP reported unbounded");
  // Objective was max -(sum of artificials), so the accumulated value is
  // -(artificial mass) and the mass itself is its negation.
  const double artificial_mass = -tab.obj[static_cast<std::size_t>(tab.cols)];

  HullDecomposition out;
  if (std::abs(artificial_mass) <= tol * scale) {
    out.inside = true;
    for (int i = 0; i < rows; ++i) {
      const int bv = tab.basis[static_cast<std::size_t>(i)];
      if (bv < nv && tab.rhs(i) > 1e-12) {
        out.support.emplace_back(bv, tab.rhs(i));
      }
    }
    double total = 0.0;
    for (auto& [idx, w] : out.support) total += w;
    for (auto& [idx, w] : out.support) w /= total;
    std::sort(out.support.begin(), out.support.end());
    return out;
  }

  out.inside = false;
  Vec w;
  double rhs = 0.0;
  if (separating_hyperplane(verts, x, tol, &w, &rhs)) {
    out.separator = std::move(w);
    out.rhs = rhs;
  } else {
    // Phase-1 said "marginally outside" but no separator clears the
    // tolerance: treat as inside-on-the-boundary without a decomposition.
    out.inside = true;
  }
  return out;
}

}  // namespace polygame
