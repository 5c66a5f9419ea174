#ifndef POLYGAME_SNE_HPP
#define POLYGAME_SNE_HPP

#include <optional>
#include <vector>

#include "polygame/game.hpp"
#include "polygame/graph.hpp"
#include "polygame/inc_fix.hpp"
#include "polygame/submodular.hpp"
#include "polygame/vec.hpp"

namespace polygame {

// Verdict for "x is a symmetric Nash equilibrium of the matroid game with
// symmetric loss L". The four equivalent characterizations are evaluated
// independently on the level partition E = P_1 | ... | P_k of the gradient
// w = L x (levels ascending):
//   equal_base_cost:        every base B has the same cost w(B);
//   bases_meet_blocks:      |B n P_i| = rank(P_i) for every base and block;
//   mass_matches_rank:      x(P_i) = rank(P_i) for every block;
//   circuits_within_blocks: every circuit lies inside a single block.
struct SneVerdict {
  bool is_sne = false;
  std::vector<std::vector<int>> blocks;
  Vec levels;

  bool equal_base_cost = false;
  bool bases_meet_blocks = false;
  bool mass_matches_rank = false;
  bool circuits_within_blocks = false;

  double base_cost_min = 0.0;
  double base_cost_max = 0.0;
  std::optional<Mask> witness_base;     // violates equal cost / block counts
  std::optional<Mask> witness_circuit;  // spans two blocks
  int witness_block = -1;               // block whose mass misses its rank
};

// Requires: f is a matroid rank oracle, L is symmetric, x in B(f).
SneVerdict check_sne(const SubmodularOracle& f, const LossMatrix& L, const Vec& x);

// Lexicographically optimal base w.r.t. positive weights w: the base of f
// maximizing the sorted vector (x_e / w_e) lexicographically from the
// smallest entry up; equivalently argmin of sum_e x_e^2 / (2 w_e) over B(f).
Vec lex_optimal_base(const SubmodularOracle& f, const Vec& w);

// For a positive diagonal L, the unique SNE candidate is the lex-optimal
// base w.r.t. w_e = 1 / L_ee. Returns it when it verifies, nullopt when the
// game has no symmetric equilibrium on B(f).
std::optional<Vec> solve_sne_diagonal(const SubmodularOracle& f, const LossMatrix& L,
                                      SneVerdict* verdict = nullptr);

// Diagonal loss making a strictly positive x in B(f) a symmetric Nash
// equilibrium: L = diag(1/x_e).
LossMatrix construct_loss(const Vec& x);

// Blockwise uniform density of a connected multigraph: inside every
// biconnected block B, every vertex subset S (|S| >= 2) must satisfy
// |E(S)| / (|S| - 1) <= |E_B| / (|V_B| - 1]. Equivalent to the uniform
// identity-loss strategy (|E_B|-proportional) being an SNE on each block.
struct DensityReport {
  struct Block {
    std::vector<int> edges;
    double density = 0.0;  // |E_B| / (|V_B| - 1)
    bool uniform = true;
    std::vector<int> witness_vertices;  // densest violating subset, if any
    double witness_density = 0.0;
  };
  std::vector<Block> blocks;
  bool all_uniform = true;
};
bool is_uniformly_dense_blockwise(const Graph& g, DensityReport* report = nullptr);

}  // namespace polygame

#endif  // POLYGAME_SNE_HPP
