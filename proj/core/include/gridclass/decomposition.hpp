#pragma once

#include <utility>
#include <vector>

#include "gridclass/gridding.hpp"
#include "gridclass/matrix.hpp"

namespace gridclass {

/// Directed graph on the points of a gridded permutation (1-based positions):
/// x -> y whenever x and y share a grid row and/or column and x precedes y in
/// the common orientation induced by the pmm sequences. Within a line the edge
/// relation is a strict total order (all forward pairs present).
class OrientationDigraph {
public:
  OrientationDigraph() = default;
  explicit OrientationDigraph(int n);

  int size() const { return n_; }
  bool edge(int from, int to) const;
  void add_edge(int from, int to);
  const std::vector<int>& successors(int from) const;
  const std::vector<int>& predecessors(int to) const;
  /// All edges, sorted.
  std::vector<std::pair<int, int>> edges() const;

  /// Induced subdigraph on a subset of points (positions renumbered 1..k in
  /// ascending order of the original positions).
  OrientationDigraph induced(const std::vector<int>& positions) const;

  /// Strongly connected components, numbered in some topological order of the
  /// condensation; component id per point (1-based positions).
  std::pair<std::vector<int>, int> strongly_connected_components() const;

private:
  int n_ = 0;
  std::vector<char> mat_;
  std::vector<std::vector<int>> out_, in_;
};

/// Exact edge set of the orientation digraph. Requires pmm sequences on the
/// matrix of the gridding.
OrientationDigraph orientation_digraph(const GriddedPermutation& gridded);

/// Places left's points into the first copy and right's into the second copy
/// of the doubled grid, then collapses: every point of left that shares a line
/// with a point of right precedes it in orientation. Same matrix required.
GriddedPermutation m_sum(const GriddedPermutation& left, const GriddedPermutation& right);

/// Folds a list with m_sum; the empty list gives the empty gridded permutation.
GriddedPermutation m_sum_fold(const GriddingMatrix& matrix,
                              const std::vector<GriddedPermutation>& parts);

/// True iff the orientation digraph has exactly one strongly connected
/// component, i.e. the gridded permutation is not a sum of two nonempty ones.
bool is_indivisible(const GriddedPermutation& gridded);

/// The canonical decomposition into indivisibles: folding the result with
/// m_sum reproduces the input; the multiset of parts is the invariant, the
/// order is the topological order of strongly connected components with
/// earliest-position tie-breaking.
std::vector<GriddedPermutation> decompose(const GriddedPermutation& gridded);

/// For a non-singleton indivisible gridded permutation: an indivisible gridded
/// subpermutation formed from last points of cells around some cycle of the
/// row-column graph (one point per cell).
GriddedPermutation last_points_indivisible(const GriddedPermutation& gridded);

/// The two indivisibles with exactly one point in each cell of the cycle, one
/// per traversal direction (direction A first).
std::pair<GriddedPermutation, GriddedPermutation> minimal_indivisibles(
    const GriddingMatrix& matrix, const CycleDescriptor& cycle);

namespace detail {

/// The line shared by two cells: (true, column index) or (false, row index).
std::pair<bool, int> shared_line(Cell a, Cell b);

/// Positions of the last points of nonempty cells that form a shortest (hence
/// chordless) directed cycle, in directed-cycle order.
std::vector<int> last_cycle_positions(const GriddedPermutation& gridded);

/// One minimal indivisible, for the cells around a cycle in traversal order.
GriddedPermutation minimal_indivisible_for(const GriddingMatrix& matrix,
                                           const std::vector<Cell>& cell_order);

}  // namespace detail

}  // namespace gridclass
