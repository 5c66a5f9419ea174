#ifndef POLYGAME_GRAPH_HPP
#define POLYGAME_GRAPH_HPP

#include <utility>
#include <vector>

#include "polygame/vec.hpp"

namespace polygame {

// Undirected multigraph on vertices {0, .., n-1}. Parallel edges are distinct
// elements (they carry their own index); self-loops are rejected because a
// loop is a rank-zero element of the graphic matroid.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  Graph() = default;
  Graph(int n_vertices, std::vector<std::pair<int, int>> edge_list);

  static Graph complete(int n_vertices);

  int edge_count() const { return static_cast<int>(edges.size()); }

  // Rank of an edge subset in the graphic matroid (size of a spanning forest
  // of the sub-multigraph picked out by the subset).
  int rank_of(Mask edge_subset) const;
  int rank_of(const std::vector<int>& edge_ids) const;

  bool connected() const;

  // True iff the edge subset is a spanning tree of the whole graph.
  bool is_spanning_tree(Mask edge_subset) const;

  // Blocks (2-edge-connected pieces plus bridges) as lists of edge indices.
  // Every edge lands in exactly one block.
  std::vector<std::vector<int>> biconnected_components() const;
};

}  // namespace polygame

#endif  // POLYGAME_GRAPH_HPP
