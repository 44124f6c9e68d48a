#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gridclass/budget.hpp"
#include "gridclass/matrix.hpp"
#include "gridclass/permutation.hpp"

namespace gridclass {

/// A permutation together with a staircase-consistent cell assignment:
/// column indices weakly increase with position, row indices weakly increase
/// with value, zero cells are empty, and the points of each nonzero cell form
/// a monotone sequence of the prescribed sign.
class GriddedPermutation {
public:
  GriddedPermutation(Permutation perm, GriddingMatrix matrix, std::vector<Cell> cell_of);

  const Permutation& perm() const { return perm_; }
  const GriddingMatrix& matrix() const { return matrix_; }
  int size() const { return perm_.size(); }
  /// Cell of the point at a 1-based position.
  Cell cell_at(int pos) const;
  const std::vector<Cell>& cells() const { return cell_of_; }

  /// Positions (ascending) of the points in a cell.
  std::vector<int> points_in_cell(Cell c) const;
  /// Per column: positions in position order.
  std::vector<std::vector<int>> column_orders() const;
  /// Per row: positions in value order.
  std::vector<std::vector<int>> row_orders() const;

  /// Gridded subpermutation on the given 1-based positions (cells inherited).
  GriddedPermutation subpermutation(std::vector<int> positions) const;

  /// Same matrix entries, same permutation, same cell assignment.
  bool same_gridding(const GriddedPermutation& other) const;

  std::string str() const;

private:
  Permutation perm_;
  GriddingMatrix matrix_;
  std::vector<Cell> cell_of_;
};

/// Builds a gridded permutation from cut lines: v_cuts are the m-1 weakly
/// increasing positions after which the vertical lines fall (values in 0..n),
/// h_cuts likewise for values. Errors on invalid cuts or invariant violations.
GriddedPermutation make_gridded(const Permutation& perm, const GriddingMatrix& matrix,
                                const std::vector<int>& v_cuts, const std::vector<int>& h_cuts);

/// All distinct cell assignments of perm over the matrix (exhaustive).
std::vector<GriddedPermutation> enumerate_griddings(const Permutation& perm,
                                                    const GriddingMatrix& matrix,
                                                    const Budget* budget = nullptr, int jobs = 1);

/// Number of distinct griddings, without materializing them.
std::uint64_t count_griddings(const Permutation& perm, const GriddingMatrix& matrix,
                              const Budget* budget = nullptr, int jobs = 1);

/// Some witness gridding if perm lies in the grid class, short-circuiting on
/// the first success.
std::optional<GriddedPermutation> member(const Permutation& perm, const GriddingMatrix& matrix,
                                         const Budget* budget = nullptr);

/// Gridded containment: an embedding whose points land in identical cells.
/// Errors when the two matrices differ.
std::optional<Embedding> gridded_contains(const GriddedPermutation& pattern,
                                          const GriddedPermutation& host);

namespace detail {

/// Enumerates cell assignments of perm over matrix; visit returning false
/// aborts the search. The first vertical cut can be restricted to a range for
/// parallel partitioning (ignored for single-column matrices).
void for_each_gridding(const Permutation& perm, const GriddingMatrix& matrix,
                       const std::function<bool(const std::vector<Cell>&)>& visit,
                       const Budget* budget = nullptr, int v1_lo = 0, int v1_hi = -1);

}  // namespace detail

}  // namespace gridclass
