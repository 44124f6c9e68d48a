#pragma once

#include <vector>

#include "gridclass/gridding.hpp"
#include "gridclass/matrix.hpp"

namespace gridclass {

/// Builds gridded permutations point by point without coordinates: each point
/// carries a cell, a slot in its column's position order and a slot in its
/// row's value order. Insertion slots are expressed in the orientation order
/// of the line, as induced by the pmm sequences, so constructions can follow
/// the orientation digraph directly. The final permutation is obtained by
/// ranking the two orders.
class GriddedAssembly {
public:
  /// Where a new point lands within one line's orientation order.
  struct Slot {
    enum Kind { OrientFront, OrientBack, JustAfter, JustBefore } kind = OrientFront;
    int anchor = 0;  // point id for JustAfter / JustBefore

    static Slot front() { return {OrientFront, 0}; }
    static Slot back() { return {OrientBack, 0}; }
    static Slot after(int point) { return {JustAfter, point}; }
    static Slot before(int point) { return {JustBefore, point}; }
  };

  explicit GriddedAssembly(GriddingMatrix matrix);

  const GriddingMatrix& matrix() const { return matrix_; }
  int size() const { return static_cast<int>(cell_.size()); }
  Cell cell_of(int point) const { return cell_[static_cast<size_t>(point)]; }

  /// Adds a point to a cell; returns its id (0-based, stable).
  int add(Cell cell, Slot column_slot, Slot row_slot);

  /// Appends every point of a gridded permutation at the orientation front or
  /// back of all its lines, preserving internal order; returns the ids in
  /// position order. Used to concatenate whole summands.
  std::vector<int> absorb(const GriddedPermutation& part, bool orient_front);

  /// Ranks the orders into a gridded permutation. position_of: id -> 1-based
  /// position in the result (optional out-parameter).
  GriddedPermutation finish(std::vector<int>* position_of = nullptr) const;

private:
  std::vector<int>& column_list(int col) { return cols_[static_cast<size_t>(col)]; }
  std::vector<int>& row_list(int row) { return rows_[static_cast<size_t>(row)]; }
  void insert(std::vector<int>& line, int sign, Slot slot, int point);

  GriddingMatrix matrix_;
  std::vector<Cell> cell_;
  std::vector<std::vector<int>> cols_;  // point ids in position order
  std::vector<std::vector<int>> rows_;  // point ids in value order
};

}  // namespace gridclass
