#include "polygame/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polygame {

namespace {

// Tiny union-find over at most n vertices, path halving + union by size.
struct Dsu {
  explicit Dsu(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  // Returns true if the edge joined two components.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    return true;
  }

  std::vector<int> parent;
  std::vector<int> size;
};

}  // namespace

Graph::Graph(int n_vertices, std::vector<std::pair<int, int>> edge_list)
    : n(n_vertices), edges(std::move(edge_list)) {
  if (n <= 0) throw std::invalid_argument("graph needs at least one vertex");
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not supported");
  }
}

Graph Graph::complete(int n_vertices) {
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n_vertices; ++u)
    for (int v = u + 1; v < n_vertices; ++v) es.emplace_back(u, v);
  return Graph(n_vertices, std::move(es));
}

int Graph::rank_of(Mask edge_subset) const {
  Dsu dsu(n);
  int rank = 0;
  for (Mask s = edge_subset; s != 0; s &= s - 1) {
    int e = static_cast<int>(std::countr_zero(s));
    if (dsu.unite(edges[e].first, edges[e].second)) ++rank;
  }
  return rank;
}

int Graph::rank_of(const std::vector<int>& edge_ids) const {
  Dsu dsu(n);
  int rank = 0;
  for (int e : edge_ids)
    if (dsu.unite(edges[e].first, edges[e].second)) ++rank;
  return rank;
}

bool Graph::connected() const {
  Dsu dsu(n);
  int components = n;
  for (const auto& [u, v] : edges)
    if (dsu.unite(u, v)) --components;
  return components == 1;
}

bool Graph::is_spanning_tree(Mask edge_subset) const {
  if (std::popcount(edge_subset) != n - 1) return false;
  return rank_of(edge_subset) == n - 1;
}

std::vector<std::vector<int>> Graph::biconnected_components() const {
  const int m = edge_count();
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // vertex -> (neighbor, edge id)
  for (int e = 0; e < m; ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, e);
    adj[edges[e].second].emplace_back(edges[e].first, e);
  }

  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> edge_stack;
  std::vector<std::vector<int>> blocks;
  int timer = 0;

  struct Frame {
    int v;
    int parent_edge;
    std::size_t next;
  };

  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [w, e] = adj[f.v][f.next++];
        if (e == f.parent_edge) continue;
        if (disc[w] == -1) {
          edge_stack.push_back(e);
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.push_back(e);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        int child = f.v;
        int tree_edge = f.parent_edge;
        stack.pop_back();
        if (stack.empty()) continue;
        int parent = stack.back().v;
        low[parent] = std::min(low[parent], low[child]);
        if (low[child] >= disc[parent]) {
          // parent is an articulation point (or the root): close the block.
          std::vector<int> block;
          while (!edge_stack.empty()) {
            int e = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(e);
            if (e == tree_edge) break;
          }
          std::sort(block.begin(), block.end());
          blocks.push_back(std::move(block));
        }
      }
    }
  }
  return blocks;
}

}  // namespace polygame
