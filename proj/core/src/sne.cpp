#include "polygame/sne.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polygame/errors.hpp"

namespace polygame {

SneVerdict check_sne(const SubmodularOracle& f, const LossMatrix& L, const Vec& x) {
  const int m = f.size();
  if (!f.matroid()) {
    throw std::invalid_argument("check_sne: the oracle must be a matroid rank function");
  }
  if (L.rows() != m || L.cols() != m || static_cast<int>(x.size()) != m) {
    throw std::invalid_argument("check_sne: dimension mismatch");
  }
  if (!L.symmetric(1e-9)) {
    throw std::invalid_argument("check_sne: the loss matrix must be symmetric");
  }
  if (!is_member(f, x, /*in_base=*/true, 1e-6)) {
    throw std::invalid_argument("check_sne: x must lie in the base polytope");
  }

  SneVerdict verdict;
  const Vec w = L.apply(x);
  const LevelPartition partition = level_partition(w, kLevelTol);
  verdict.blocks = partition.blocks;
  verdict.levels = partition.levels;

  const double wscale = std::max(1.0, linf_norm(w));
  const double cost_tol = kLevelTol * wscale * static_cast<double>(m);

  std::vector<Mask> block_masks;
  std::vector<int> block_ranks;
  for (const std::vector<int>& blk : verdict.blocks) {
    const Mask bm = indices_to_mask(blk);
    block_masks.push_back(bm);
    block_ranks.push_back(static_cast<int>(std::llround(f.value(bm))));
  }

  const std::vector<Mask> bases = enumerate_bases(f);

  // (ii) all bases cost the same under w, and
  // (iii) every base meets every block in exactly rank(block) elements.
  verdict.equal_base_cost = true;
  verdict.bases_meet_blocks = true;
  verdict.base_cost_min = kInf;
  verdict.base_cost_max = -kInf;
  for (Mask b : bases) {
    const double cost = mask_sum(w, b);
    verdict.base_cost_min = std::min(verdict.base_cost_min, cost);
    verdict.base_cost_max = std::max(verdict.base_cost_max, cost);
    for (std::size_t i = 0; i < block_masks.size(); ++i) {
      if (std::popcount(b & block_masks[i]) != block_ranks[i]) {
        verdict.bases_meet_blocks = false;
        if (!verdict.witness_base.has_value()) verdict.witness_base = b;
      }
    }
  }
  if (verdict.base_cost_max - verdict.base_cost_min > cost_tol) {
    verdict.equal_base_cost = false;
    // Witness: a base achieving the extreme cost.
    for (Mask b : bases) {
      if (mask_sum(w, b) >= verdict.base_cost_max - 1e-15 * wscale) {
        if (!verdict.witness_base.has_value()) verdict.witness_base = b;
        break;
      }
    }
  }

  // (iv) the mass of x on each block equals the block's rank.
  verdict.mass_matches_rank = true;
  for (std::size_t i = 0; i < block_masks.size(); ++i) {
    const double mass = mask_sum(x, block_masks[i]);
    if (std::abs(mass - static_cast<double>(block_ranks[i])) >
        kFeasTol * std::max(1.0, std::abs(f.rank())) * static_cast<double>(m)) {
      verdict.mass_matches_rank = false;
      if (verdict.witness_block < 0) verdict.witness_block = static_cast<int>(i);
    }
  }

  // (v) no circuit crosses a block boundary.
  verdict.circuits_within_blocks = true;
  for (Mask c : enumerate_circuits(f)) {
    bool inside_one = false;
    for (Mask bm : block_masks) {
      if ((c & ~bm) == 0) {
        inside_one = true;
        break;
      }
    }
    if (!inside_one) {
      verdict.circuits_within_blocks = false;
      if (!verdict.witness_circuit.has_value()) verdict.witness_circuit = c;
    }
  }

  verdict.is_sne = verdict.mass_matches_rank;
  return verdict;
}

Vec lex_optimal_base(const SubmodularOracle& f, const Vec& w) {
  if (static_cast<int>(w.size()) != f.size()) {
    throw std::invalid_argument("lex_optimal_base: weight dimension mismatch");
  }
  for (double c : w) {
    if (!(c > 0.0)) throw std::invalid_argument("lex_optimal_base: weights must be positive");
  }
  return inc_fix_weighted_sqnorm(f, w).point;
}

std::optional<Vec> solve_sne_diagonal(const SubmodularOracle& f, const LossMatrix& L,
                                      SneVerdict* verdict) {
  const int m = f.size();
  if (L.rows() != m || L.cols() != m) {
    throw std::invalid_argument("solve_sne_diagonal: dimension mismatch");
  }
  if (!L.diagonal_matrix(1e-12)) {
    throw std::invalid_argument("solve_sne_diagonal: the loss matrix must be diagonal");
  }
  const Vec diag = L.diagonal_entries();
  Vec w(diag.size(), 0.0);
  for (std::size_t e = 0; e < diag.size(); ++e) {
    if (!(diag[e] > 0.0)) {
      throw std::invalid_argument("solve_sne_diagonal: diagonal entries must be positive");
    }
    w[e] = 1.0 / diag[e];
  }
  const Vec x = lex_optimal_base(f, w);
  const SneVerdict v = check_sne(f, L, x);
  if (verdict != nullptr) *verdict = v;
  if (v.is_sne) return x;
  return std::nullopt;
}

LossMatrix construct_loss(const Vec& x) {
  Vec diag(x.size(), 0.0);
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (!(x[e] > 0.0)) {
      throw std::invalid_argument("construct_loss: requires a strictly positive point");
    }
    diag[e] = 1.0 / x[e];
  }
  return LossMatrix::diagonal(std::move(diag));
}

bool is_uniformly_dense_blockwise(const Graph& g, DensityReport* report) {
  DensityReport local;
  const std::vector<std::vector<int>> blocks = g.biconnected_components();
  for (const std::vector<int>& block_edges : blocks) {
    DensityReport::Block rb;
    rb.edges = block_edges;

    // Collect and index the block's vertices.
    std::vector<int> verts;
    for (int e : block_edges) {
      const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
      verts.push_back(u);
      verts.push_back(v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const int nb = static_cast<int>(verts.size());
    if (nb > 10) {
      throw CapacityError("is_uniformly_dense_blockwise: block has more than 10 vertices");
    }
    auto local_index = [&](int v) {
      return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };

    rb.density = static_cast<double>(block_edges.size()) / static_cast<double>(nb - 1);

    // Every vertex subset S with |S| >= 2 must satisfy
    // |E(S)| / (|S|-1) <= block density.
    rb.uniform = true;
    for (Mask s = 1; s < (Mask{1} << nb); ++s) {
      const int size = std::popcount(s);
      if (size < 2) continue;
      int inside = 0;
      for (int e : block_edges) {
        const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
        const Mask mu = Mask{1} << local_index(u);
        const Mask mv = Mask{1} << local_index(v);
        if ((s & mu) != 0 && (s & mv) != 0) ++inside;
      }
      const double density = static_cast<double>(inside) / static_cast<double>(size - 1);
      if (density > rb.density + 1e-12 && density > rb.witness_density) {
        rb.uniform = false;
        rb.witness_density = density;
        rb.witness_vertices.clear();
        for (int i = 0; i < nb; ++i) {
          if ((s >> i) & 1) rb.witness_vertices.push_back(verts[static_cast<std::size_t>(i)]);
        }
      }
    }
    local.all_uniform = local.all_uniform && rb.uniform;
    local.blocks.push_back(std::move(rb));
  }
  const bool all_uniform = local.all_uniform;
  if (report != nullptr) *report = std::move(local);
  return all_uniform;
}

}  // namespace polygame
