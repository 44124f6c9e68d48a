#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gridclass/permutation.hpp"

namespace gridclass {

/// A cell address: column from the left, row from the bottom, both 1-based.
struct Cell {
  int col = 0;
  int row = 0;
  auto operator<=>(const Cell&) const = default;
};

/// Column and row sign sequences witnessing that a gridding matrix is a
/// partial multiplication matrix: every nonzero entry(i,j) equals col[i]*row[j].
struct PmmSequences {
  std::vector<int> col_seq;  // one of +1/-1 per column
  std::vector<int> row_seq;
};

/// An m x n matrix over {-1,0,+1}, indexed (column,row) from the lower left.
class GriddingMatrix {
public:
  GriddingMatrix() = default;
  GriddingMatrix(int cols, int rows);

  /// Parses rows printed top-to-bottom, entries space-separated; rows are
  /// separated by newlines or '/'. The top text row becomes row j = n.
  static GriddingMatrix parse(std::string_view text);

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  int entry(int col, int row) const;
  int entry(Cell c) const { return entry(c.col, c.row); }
  void set(int col, int row, int sign);

  const std::optional<PmmSequences>& pmm() const { return pmm_; }
  void set_pmm(PmmSequences seqs);
  /// Sign of the orientation along a column line: +1 means left-to-right.
  int col_sign(int col) const;
  /// Sign of the orientation along a row line: +1 means bottom-to-top.
  int row_sign(int row) const;

  std::vector<Cell> nonzero_cells() const;  // lexicographic order
  int nonzero_count() const;

  bool same_entries(const GriddingMatrix& other) const;
  /// Rows printed top-to-bottom with aligned columns.
  std::string str() const;

private:
  int cols_ = 0, rows_ = 0;
  std::vector<int> entries_;  // (col-1) + (row-1)*cols_
  std::optional<PmmSequences> pmm_;
};

/// Bipartite graph on column vertices 1..m and row vertices 1'..n', one
/// sign-labelled edge per nonzero entry. Row vertex j is stored as id m+j.
struct RowColumnGraph {
  int cols = 0, rows = 0;
  std::vector<std::vector<int>> adj;  // vertex id (1..m+n) -> neighbours
  std::vector<Cell> edges;            // one per nonzero entry, lexicographic

  int vertex_count() const { return cols + rows; }
  bool is_row_vertex(int v) const { return v > cols; }
  int column_vertex(int col) const { return col; }
  int row_vertex(int row) const { return cols + row; }
  /// Component id per vertex (0-based), and the number of components.
  std::pair<std::vector<int>, int> components() const;
};

RowColumnGraph row_column_graph(const GriddingMatrix& m);

enum class MatrixClass { Acyclic, Cyclic, Unicyclic, Pseudoforest, Polycyclic };

std::string to_string(MatrixClass c);

/// Most specific of Acyclic / Cyclic / Unicyclic / Pseudoforest / Polycyclic.
MatrixClass classify(const GriddingMatrix& m);

/// One cycle of the row-column graph. Cells are listed in a canonical cyclic
/// order: starting at the lexicographically least cell on the cycle, towards
/// its lexicographically smaller neighbour. Vertices alternate between the
/// lines shared by consecutive cells (vertices[t] joins cells[t] and cells[t+1]).
struct CycleDescriptor {
  std::vector<Cell> cells;
  std::vector<int> vertices;  // RowColumnGraph vertex ids
  int sign = 1;

  int length() const { return static_cast<int>(cells.size()); }
  /// Canonical label (1-based) of the cell next to `label` in direction A.
  int next_label(int label) const { return label % length() + 1; }
  int prev_label(int label) const { return (label + length() - 2) % length() + 1; }
};

/// One descriptor per cyclic component. Errors on polycyclic input.
std::vector<CycleDescriptor> cycles(const GriddingMatrix& m);

/// Sign propagation over every component of the row-column graph, seeding the
/// lowest-numbered column vertex of each component with +1 (rows, when a
/// component has no column vertex). On an inconsistency returns a negative
/// cycle as witness.
std::variant<PmmSequences, CycleDescriptor> pmm_sequences(const GriddingMatrix& m);

/// The 2m x 2n doubling, by per-entry substitution blocks.
GriddingMatrix double_matrix(const GriddingMatrix& m);

/// Returns a partial multiplication matrix with the same grid class: the input
/// with sequences attached when possible, else its doubling. The flag reports
/// whether doubling happened. Errors on polycyclic input.
std::pair<GriddingMatrix, bool> normalize_to_pmm(const GriddingMatrix& m);

/// The matrix itself if pmm sequences are already attached, else a copy with
/// canonical sequences. Errors when the matrix has a negative cycle.
GriddingMatrix with_pmm(const GriddingMatrix& m);

}  // namespace gridclass
