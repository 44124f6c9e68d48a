#include "gridclass/assembly.hpp"

#include <algorithm>

namespace gridclass {

GriddedAssembly::GriddedAssembly(GriddingMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.pmm()) throw error("assembly requires pmm sequences");
  cols_.assign(static_cast<size_t>(matrix_.cols()) + 1, {});
  rows_.assign(static_cast<size_t>(matrix_.rows()) + 1, {});
}

void GriddedAssembly::insert(std::vector<int>& line, int sign, Slot slot, int point) {
  // the stored order is position/value order; orientation order reverses it
  // when the line's sign is -1
  auto it = line.begin();
  switch (slot.kind) {
    case Slot::OrientFront:
      it = sign == 1 ? line.begin() : line.end();
      break;
    case Slot::OrientBack:
      it = sign == 1 ? line.end() : line.begin();
      break;
    case Slot::JustAfter:
    case Slot::JustBefore: {
      auto at = std::find(line.begin(), line.end(), slot.anchor);
      if (at == line.end()) throw error("assembly: anchor point not on this line");
      const bool after = (slot.kind == Slot::JustAfter) == (sign == 1);
      it = after ? at + 1 : at;
      break;
    }
  }
  line.insert(it, point);
}

int GriddedAssembly::add(Cell cell, Slot column_slot, Slot row_slot) {
  if (matrix_.entry(cell) == 0) throw error("assembly: cannot place a point in a zero cell");
  const int id = size();
  cell_.push_back(cell);
  insert(column_list(cell.col), matrix_.col_sign(cell.col), column_slot, id);
  insert(row_list(cell.row), matrix_.row_sign(cell.row), row_slot, id);
  return id;
}

std::vector<int> GriddedAssembly::absorb(const GriddedPermutation& part, bool orient_front) {
  if (!part.matrix().same_entries(matrix_))
    throw error("assembly: matrix mismatch");
  const int base = size();
  std::vector<int> ids(static_cast<size_t>(part.size()));
  for (int p = 1; p <= part.size(); ++p) {
    cell_.push_back(part.cell_at(p));
    ids[static_cast<size_t>(p) - 1] = base + p - 1;
  }
  // splice each of the part's lines as a block, keeping its internal order
  const auto part_cols = part.column_orders();
  for (int i = 1; i <= matrix_.cols(); ++i) {
    std::vector<int> block;
    for (int p : part_cols[static_cast<size_t>(i)]) block.push_back(base + p - 1);
    auto& line = column_list(i);
    const bool front = orient_front == (matrix_.col_sign(i) == 1);
    line.insert(front ? line.begin() : line.end(), block.begin(), block.end());
  }
  const auto part_rows = part.row_orders();
  for (int j = 1; j <= matrix_.rows(); ++j) {
    std::vector<int> block;
    for (int p : part_rows[static_cast<size_t>(j)]) block.push_back(base + p - 1);
    auto& line = row_list(j);
    const bool front = orient_front == (matrix_.row_sign(j) == 1);
    line.insert(front ? line.begin() : line.end(), block.begin(), block.end());
  }
  return ids;
}

GriddedPermutation GriddedAssembly::finish(std::vector<int>* position_of) const {
  const int n = size();
  std::vector<int> pos(static_cast<size_t>(n), 0), val(static_cast<size_t>(n), 0);
  int next = 1;
  for (int i = 1; i <= matrix_.cols(); ++i)
    for (int id : cols_[static_cast<size_t>(i)]) pos[static_cast<size_t>(id)] = next++;
  next = 1;
  for (int j = 1; j <= matrix_.rows(); ++j)
    for (int id : rows_[static_cast<size_t>(j)]) val[static_cast<size_t>(id)] = next++;
  std::vector<int> values(static_cast<size_t>(n), 0);
  std::vector<Cell> cells(static_cast<size_t>(n));
  for (int id = 0; id < n; ++id) {
    values[static_cast<size_t>(pos[static_cast<size_t>(id)]) - 1] = val[static_cast<size_t>(id)];
    cells[static_cast<size_t>(pos[static_cast<size_t>(id)]) - 1] = cell_[static_cast<size_t>(id)];
  }
  if (position_of) *position_of = pos;
  return GriddedPermutation(Permutation(std::move(values)), matrix_, std::move(cells));
}

}  // namespace gridclass
