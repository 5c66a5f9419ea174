#ifndef POLYGAME_SUBMODULAR_HPP
#define POLYGAME_SUBMODULAR_HPP

#include <optional>
#include <vector>

#include "polygame/graph.hpp"
#include "polygame/ground_set.hpp"
#include "polygame/vec.hpp"

namespace polygame {

// Hard ceiling for code paths that enumerate all 2^m subsets.
inline constexpr int kEnumerationCap = 20;

// Value oracle for a normalized (f(empty) = 0), monotone submodular function
// with f({e}) > 0 for every element. All instances are immutable after
// construction and safe to share across threads.
//
// P(f)  = { x >= 0 : x(U) <= f(U) for all U }   (the polymatroid)
// B(f)  = P(f) intersect { x(E) = f(E) }        (the base polytope)
class SubmodularOracle {
 public:
  enum class Kind { Explicit, Cardinality, Uniform, Graphic, Partition };

  // f(S) given by a table indexed by subset bitmask (size 2^m, m <= 20).
  static SubmodularOracle explicit_table(GroundSet ground, std::vector<double> table);

  // f(S) = g(|S|) for a concave profile g(0..m) with g(0) = 0,
  // nonincreasing increments and g(1) > 0. Works for any m.
  static SubmodularOracle cardinality(GroundSet ground, std::vector<double> profile);

  // f(S) = min(|S|, k): rank function of the uniform matroid U(k, m).
  static SubmodularOracle uniform(int m, int k);

  // Rank function of the graphic matroid of a multigraph; elements are edges.
  static SubmodularOracle graphic(Graph graph);

  // f(S) = sum_i min(|S & B_i|, c_i) for a partition into blocks with
  // integer capacities c_i >= 1: rank function of the partition matroid.
  static SubmodularOracle partition(GroundSet ground, std::vector<std::vector<int>> blocks,
                                    std::vector<int> capacities);

  Kind kind() const { return kind_; }
  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  double rank() const { return rank_; }  // f(E)

  // Oracle evaluation. The mask form requires m <= 63.
  double value(Mask subset) const;
  double value(const std::vector<int>& subset) const;

  // True when f(S) depends on |S| only (Kind Cardinality or Uniform).
  bool cardinality_based() const {
    return kind_ == Kind::Cardinality || kind_ == Kind::Uniform;
  }
  // g(0..m) for cardinality-based kinds.
  const std::vector<double>& profile() const;

  // True when f is (validated to be) a matroid rank function: integer valued
  // with unit increments.
  bool matroid() const { return matroid_; }

  const Graph& graph() const;  // Kind::Graphic only
  int uniform_k() const;       // Kind::Uniform only

 private:
  SubmodularOracle() = default;
  void validate_and_finish();
  double value_raw(Mask subset) const;

  Kind kind_ = Kind::Explicit;
  GroundSet ground_;
  double rank_ = 0.0;
  bool matroid_ = false;

  std::vector<double> table_;             // Explicit, or eager memo for small m
  std::vector<double> profile_;           // Cardinality / Uniform
  int k_ = 0;                             // Uniform
  std::optional<Graph> graph_;            // Graphic
  std::vector<Mask> block_masks_;         // Partition
  std::vector<int> capacities_;           // Partition
};

// x in P(f) (or B(f) when in_base), within tolerance. Cardinality-based
// oracles use an O(m log m) sorted-prefix check; everything else enumerates
// all subsets (m <= kEnumerationCap).
bool is_member(const SubmodularOracle& f, const Vec& x, bool in_base = false,
               double tol = kFeasTol);

// Maximal set T with x(T) = f(T), empty mask if none. Unique because tight
// sets are closed under union. Pre: x in P(f).
Mask max_tight_set(const SubmodularOracle& f, const Vec& x, double tol = kFeasTol);

// max { delta >= 0 : x + delta * d in P(f) } for d >= 0, d != 0.
// Pre: x in P(f). Discrete Newton (Dinkelbach) iteration; cardinality-based
// oracles take a sorted-prefix fast path that never enumerates subsets.
double line_search(const SubmodularOracle& f, const Vec& x, const Vec& d);

// Edmonds' greedy: the vertex of B(f) optimizing a linear objective.
// Ascending weight order minimizes, descending maximizes; ties break by
// element index, so the output is deterministic.
Vec greedy_linear_opt(const SubmodularOracle& f, const Vec& w, bool maximize);

// All bases of a matroid rank oracle, as masks in ascending mask order.
std::vector<Mask> enumerate_bases(const SubmodularOracle& f);

// All circuits (minimal dependent sets) of a matroid rank oracle.
std::vector<Mask> enumerate_circuits(const SubmodularOracle& f);

}  // namespace polygame

#endif  // POLYGAME_SUBMODULAR_HPP
