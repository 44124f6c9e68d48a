#include "gridclass/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace gridclass {

GriddingMatrix::GriddingMatrix(int cols, int rows) : cols_(cols), rows_(rows) {
  if (cols < 1 || rows < 1) throw error("matrix dimensions must be positive");
  entries_.assign(static_cast<size_t>(cols) * static_cast<size_t>(rows), 0);
}

GriddingMatrix GriddingMatrix::parse(std::string_view text) {
  std::string buf(text);
  for (char& c : buf)
    if (c == '/') c = '\n';
  std::vector<std::vector<int>> lines;
  std::istringstream in(buf);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::vector<int> vals;
    std::string tok;
    while (row >> tok) {
      if (tok != "-1" && tok != "0" && tok != "1" && tok != "+1")
        throw error("illegal matrix entry: " + tok);
      vals.push_back(tok == "-1" ? -1 : (tok == "0" ? 0 : 1));
    }
    if (!vals.empty()) lines.push_back(std::move(vals));
  }
  if (lines.empty()) throw error("empty matrix");
  const int n = static_cast<int>(lines.size());
  const int m = static_cast<int>(lines[0].size());
  for (const auto& l : lines)
    if (static_cast<int>(l.size()) != m) throw error("ragged matrix rows");
  GriddingMatrix out(m, n);
  for (int t = 0; t < n; ++t) {
    const int j = n - t;  // top text row is row j = n
    for (int i = 1; i <= m; ++i) out.set(i, j, lines[static_cast<size_t>(t)][static_cast<size_t>(i) - 1]);
  }
  return out;
}

int GriddingMatrix::entry(int col, int row) const {
  if (col < 1 || col > cols_ || row < 1 || row > rows_) throw error("cell out of range");
  return entries_[static_cast<size_t>(col - 1) + static_cast<size_t>(row - 1) * static_cast<size_t>(cols_)];
}

void GriddingMatrix::set(int col, int row, int sign) {
  if (col < 1 || col > cols_ || row < 1 || row > rows_) throw error("cell out of range");
  if (sign < -1 || sign > 1) throw error("entry must be -1, 0 or 1");
  entries_[static_cast<size_t>(col - 1) + static_cast<size_t>(row - 1) * static_cast<size_t>(cols_)] = sign;
}

void GriddingMatrix::set_pmm(PmmSequences seqs) {
  if (static_cast<int>(seqs.col_seq.size()) != cols_ ||
      static_cast<int>(seqs.row_seq.size()) != rows_)
    throw error("pmm sequence lengths do not match the matrix");
  for (int i = 1; i <= cols_; ++i)
    for (int j = 1; j <= rows_; ++j)
      if (entry(i, j) != 0 &&
          entry(i, j) != seqs.col_seq[static_cast<size_t>(i) - 1] * seqs.row_seq[static_cast<size_t>(j) - 1])
        throw error("sequences do not factor the matrix");
  pmm_ = std::move(seqs);
}

int GriddingMatrix::col_sign(int col) const {
  if (!pmm_) throw error("matrix has no pmm sequences");
  if (col < 1 || col > cols_) throw error("column out of range");
  return pmm_->col_seq[static_cast<size_t>(col) - 1];
}

int GriddingMatrix::row_sign(int row) const {
  if (!pmm_) throw error("matrix has no pmm sequences");
  if (row < 1 || row > rows_) throw error("row out of range");
  return pmm_->row_seq[static_cast<size_t>(row) - 1];
}

std::vector<Cell> GriddingMatrix::nonzero_cells() const {
  std::vector<Cell> out;
  for (int i = 1; i <= cols_; ++i)
    for (int j = 1; j <= rows_; ++j)
      if (entry(i, j) != 0) out.push_back({i, j});
  return out;
}

int GriddingMatrix::nonzero_count() const {
  return static_cast<int>(nonzero_cells().size());
}

bool GriddingMatrix::same_entries(const GriddingMatrix& other) const {
  return cols_ == other.cols_ && rows_ == other.rows_ && entries_ == other.entries_;
}

std::string GriddingMatrix::str() const {
  std::string out;
  for (int j = rows_; j >= 1; --j) {
    for (int i = 1; i <= cols_; ++i) {
      const int e = entry(i, j);
      out += (e < 0 ? "-1" : (e > 0 ? " 1" : " 0"));
      if (i < cols_) out += ' ';
    }
    if (j > 1) out += '\n';
  }
  return out;
}

RowColumnGraph row_column_graph(const GriddingMatrix& m) {
  RowColumnGraph g;
  g.cols = m.cols();
  g.rows = m.rows();
  g.adj.assign(static_cast<size_t>(g.vertex_count()) + 1, {});
  for (const Cell c : m.nonzero_cells()) {
    g.edges.push_back(c);
    g.adj[static_cast<size_t>(g.column_vertex(c.col))].push_back(g.row_vertex(c.row));
    g.adj[static_cast<size_t>(g.row_vertex(c.row))].push_back(g.column_vertex(c.col));
  }
  return g;
}

std::pair<std::vector<int>, int> RowColumnGraph::components() const {
  std::vector<int> comp(static_cast<size_t>(vertex_count()) + 1, -1);
  int count = 0;
  for (int s = 1; s <= vertex_count(); ++s) {
    if (comp[static_cast<size_t>(s)] != -1) continue;
    std::deque<int> queue{s};
    comp[static_cast<size_t>(s)] = count;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : adj[static_cast<size_t>(v)])
        if (comp[static_cast<size_t>(w)] == -1) {
          comp[static_cast<size_t>(w)] = count;
          queue.push_back(w);
        }
    }
    ++count;
  }
  return {comp, count};
}

std::string to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::Acyclic: return "acyclic";
    case MatrixClass::Cyclic: return "cyclic";
    case MatrixClass::Unicyclic: return "unicyclic";
    case MatrixClass::Pseudoforest: return "pseudoforest";
    case MatrixClass::Polycyclic: return "polycyclic";
  }
  return "?";
}

namespace {

// edge and vertex counts per component; the cycle space dimension of a
// connected component is E - V + 1
struct ComponentCensus {
  std::vector<int> vertices, edges;
};

ComponentCensus census(const RowColumnGraph& g, const std::vector<int>& comp, int count) {
  ComponentCensus c;
  c.vertices.assign(static_cast<size_t>(count), 0);
  c.edges.assign(static_cast<size_t>(count), 0);
  for (int v = 1; v <= g.vertex_count(); ++v) ++c.vertices[static_cast<size_t>(comp[static_cast<size_t>(v)])];
  for (const Cell e : g.edges) ++c.edges[static_cast<size_t>(comp[static_cast<size_t>(e.col)])];
  return c;
}

// Canonical form: start at the lexicographically least cell, towards its
// lexicographically smaller neighbour; recompute shared-line vertices and sign.
CycleDescriptor canonical_cycle(const GriddingMatrix& m, std::vector<Cell> cells) {
  const int l = static_cast<int>(cells.size());
  const int least = static_cast<int>(std::min_element(cells.begin(), cells.end()) - cells.begin());
  std::rotate(cells.begin(), cells.begin() + least, cells.end());
  if (cells[static_cast<size_t>(l) - 1] < cells[1])
    std::reverse(cells.begin() + 1, cells.end());
  CycleDescriptor out;
  out.cells = std::move(cells);
  out.sign = 1;
  for (int t = 0; t < l; ++t) {
    const Cell a = out.cells[static_cast<size_t>(t)];
    const Cell b = out.cells[static_cast<size_t>((t + 1) % l)];
    if (a.col == b.col)
      out.vertices.push_back(a.col);
    else if (a.row == b.row)
      out.vertices.push_back(m.cols() + a.row);
    else
      throw error("cycle cells are not line-adjacent");
    out.sign *= m.entry(a);
  }
  return out;
}

// The unique cycle of a unicyclic component, found by peeling leaves.
std::vector<Cell> component_cycle_cells(const GriddingMatrix& m, const RowColumnGraph& g,
                                        const std::vector<int>& comp, int which) {
  std::vector<int> degree(static_cast<size_t>(g.vertex_count()) + 1, 0);
  std::vector<bool> alive(static_cast<size_t>(g.vertex_count()) + 1, false);
  for (int v = 1; v <= g.vertex_count(); ++v) {
    if (comp[static_cast<size_t>(v)] != which) continue;
    alive[static_cast<size_t>(v)] = true;
    degree[static_cast<size_t>(v)] = static_cast<int>(g.adj[static_cast<size_t>(v)].size());
  }
  std::deque<int> leaves;
  for (int v = 1; v <= g.vertex_count(); ++v)
    if (alive[static_cast<size_t>(v)] && degree[static_cast<size_t>(v)] <= 1) leaves.push_back(v);
  while (!leaves.empty()) {
    const int v = leaves.front();
    leaves.pop_front();
    alive[static_cast<size_t>(v)] = false;
    for (int w : g.adj[static_cast<size_t>(v)])
      if (alive[static_cast<size_t>(w)] && --degree[static_cast<size_t>(w)] == 1) leaves.push_back(w);
  }
  int start = 0;
  for (int v = 1; v <= g.vertex_count(); ++v)
    if (alive[static_cast<size_t>(v)]) {
      start = v;
      break;
    }
  if (!start) throw error("component has no cycle");
  std::vector<int> walk{start};
  int prev = 0, cur = start;
  do {
    int next = 0;
    for (int w : g.adj[static_cast<size_t>(cur)])
      if (alive[static_cast<size_t>(w)] && w != prev) {
        next = w;
        break;
      }
    prev = cur;
    cur = next;
    walk.push_back(cur);
  } while (cur != start);
  walk.pop_back();
  std::vector<Cell> cells;
  const int l = static_cast<int>(walk.size());
  for (int t = 0; t < l; ++t) {
    const int a = walk[static_cast<size_t>(t)];
    const int b = walk[static_cast<size_t>((t + 1) % l)];
    const int col = std::min(a, b);
    const int row = std::max(a, b) - g.cols;
    cells.push_back({col, row});
  }
  return cells;
}

}  // namespace

MatrixClass classify(const GriddingMatrix& m) {
  const RowColumnGraph g = row_column_graph(m);
  const auto [comp, count] = g.components();
  const ComponentCensus c = census(g, comp, count);
  int cyclic_components = 0;
  for (int k = 0; k < count; ++k) {
    const int dim = c.edges[static_cast<size_t>(k)] - c.vertices[static_cast<size_t>(k)] + 1;
    if (dim >= 2) return MatrixClass::Polycyclic;
    if (dim == 1) ++cyclic_components;
  }
  if (cyclic_components == 0) return MatrixClass::Acyclic;
  if (cyclic_components == 1) {
    // exactly a cycle: one component covering every vertex, all of degree 2
    if (count == 1 && static_cast<int>(g.edges.size()) == g.vertex_count()) return MatrixClass::Cyclic;
    return MatrixClass::Unicyclic;
  }
  return MatrixClass::Pseudoforest;
}

std::vector<CycleDescriptor> cycles(const GriddingMatrix& m) {
  if (classify(m) == MatrixClass::Polycyclic)
    throw error("cycles: unsupported class (polycyclic matrix)");
  const RowColumnGraph g = row_column_graph(m);
  const auto [comp, count] = g.components();
  const ComponentCensus c = census(g, comp, count);
  std::vector<CycleDescriptor> out;
  for (int k = 0; k < count; ++k)
    if (c.edges[static_cast<size_t>(k)] - c.vertices[static_cast<size_t>(k)] + 1 == 1)
      out.push_back(canonical_cycle(m, component_cycle_cells(m, g, comp, k)));
  std::sort(out.begin(), out.end(),
            [](const CycleDescriptor& a, const CycleDescriptor& b) { return a.cells[0] < b.cells[0]; });
  return out;
}

std::variant<PmmSequences, CycleDescriptor> pmm_sequences(const GriddingMatrix& m) {
  const RowColumnGraph g = row_column_graph(m);
  const int n = g.vertex_count();
  std::vector<int> sign(static_cast<size_t>(n) + 1, 0);
  std::vector<int> parent(static_cast<size_t>(n) + 1, 0);
  for (int s = 1; s <= n; ++s) {
    if (sign[static_cast<size_t>(s)] != 0) continue;
    sign[static_cast<size_t>(s)] = 1;  // lowest vertex of the component seeds +1
    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : g.adj[static_cast<size_t>(v)]) {
        const int col = std::min(v, w);
        const int row = std::max(v, w) - g.cols;
        const int e = m.entry(col, row);
        const int needed = e * sign[static_cast<size_t>(v)];
        if (sign[static_cast<size_t>(w)] == 0) {
          sign[static_cast<size_t>(w)] = needed;
          parent[static_cast<size_t>(w)] = v;
          queue.push_back(w);
        } else if (sign[static_cast<size_t>(w)] != needed) {
          // conflict: the tree paths to v and w plus the edge vw close a
          // negative cycle
          std::vector<int> pv{v}, pw{w};
          for (int x = v; x != s; x = parent[static_cast<size_t>(x)]) pv.push_back(parent[static_cast<size_t>(x)]);
          for (int x = w; x != s; x = parent[static_cast<size_t>(x)]) pw.push_back(parent[static_cast<size_t>(x)]);
          // drop the shared tail beyond the lowest common ancestor
          while (pv.size() >= 2 && pw.size() >= 2 && pv[pv.size() - 2] == pw[pw.size() - 2]) {
            pv.pop_back();
            pw.pop_back();
          }
          std::vector<int> walk(pv.rbegin(), pv.rend());
          walk.insert(walk.end(), pw.begin(), pw.end() - 1);
          std::vector<Cell> cells;
          const int l = static_cast<int>(walk.size());
          for (int t = 0; t < l; ++t) {
            const int a = walk[static_cast<size_t>(t)];
            const int b = walk[static_cast<size_t>((t + 1) % l)];
            cells.push_back({std::min(a, b), std::max(a, b) - g.cols});
          }
          CycleDescriptor witness = canonical_cycle(m, std::move(cells));
          assert(witness.sign == -1);
          return witness;
        }
      }
    }
  }
  PmmSequences seqs;
  for (int i = 1; i <= g.cols; ++i) seqs.col_seq.push_back(sign[static_cast<size_t>(i)]);
  for (int j = 1; j <= g.rows; ++j) seqs.row_seq.push_back(sign[static_cast<size_t>(g.cols + j)]);
  return seqs;
}

GriddingMatrix double_matrix(const GriddingMatrix& m) {
  GriddingMatrix out(2 * m.cols(), 2 * m.rows());
  for (int i = 1; i <= m.cols(); ++i) {
    for (int j = 1; j <= m.rows(); ++j) {
      switch (m.entry(i, j)) {
        case 1:
          out.set(2 * i - 1, 2 * j - 1, 1);
          out.set(2 * i, 2 * j, 1);
          break;
        case -1:
          out.set(2 * i - 1, 2 * j, -1);
          out.set(2 * i, 2 * j - 1, -1);
          break;
        default: break;
      }
    }
  }
  return out;
}

std::pair<GriddingMatrix, bool> normalize_to_pmm(const GriddingMatrix& m) {
  if (classify(m) == MatrixClass::Polycyclic)
    throw error("normalize_to_pmm: polycyclic matrix");
  auto attempt = pmm_sequences(m);
  if (auto* seqs = std::get_if<PmmSequences>(&attempt)) {
    GriddingMatrix out = m;
    out.set_pmm(std::move(*seqs));
    return {out, false};
  }
  GriddingMatrix doubled = double_matrix(m);
  auto second = pmm_sequences(doubled);
  auto* seqs = std::get_if<PmmSequences>(&second);
  if (!seqs) throw error("doubling produced a negative cycle");  // cannot happen
  doubled.set_pmm(std::move(*seqs));
  return {doubled, true};
}

GriddingMatrix with_pmm(const GriddingMatrix& m) {
  if (m.pmm()) return m;
  auto attempt = pmm_sequences(m);
  if (auto* seqs = std::get_if<PmmSequences>(&attempt)) {
    GriddingMatrix out = m;
    out.set_pmm(std::move(*seqs));
    return out;
  }
  throw error("matrix has a negative cycle; normalize to a pmm first");
}

}  // namespace gridclass
