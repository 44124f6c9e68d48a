#include "gridclass/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "gridclass/assembly.hpp"

namespace gridclass {

OrientationDigraph::OrientationDigraph(int n) : n_(n) {
  mat_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  out_.assign(static_cast<size_t>(n) + 1, {});
  in_.assign(static_cast<size_t>(n) + 1, {});
}

bool OrientationDigraph::edge(int from, int to) const {
  return mat_[static_cast<size_t>(from - 1) * static_cast<size_t>(n_) + static_cast<size_t>(to - 1)] != 0;
}

void OrientationDigraph::add_edge(int from, int to) {
  auto& cell = mat_[static_cast<size_t>(from - 1) * static_cast<size_t>(n_) + static_cast<size_t>(to - 1)];
  if (cell) return;
  cell = 1;
  out_[static_cast<size_t>(from)].push_back(to);
  in_[static_cast<size_t>(to)].push_back(from);
}

const std::vector<int>& OrientationDigraph::successors(int from) const {
  return out_[static_cast<size_t>(from)];
}

const std::vector<int>& OrientationDigraph::predecessors(int to) const {
  return in_[static_cast<size_t>(to)];
}

std::vector<std::pair<int, int>> OrientationDigraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 1; a <= n_; ++a)
    for (int b : out_[static_cast<size_t>(a)]) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  return out;
}

OrientationDigraph OrientationDigraph::induced(const std::vector<int>& positions) const {
  std::vector<int> sorted(positions);
  std::sort(sorted.begin(), sorted.end());
  OrientationDigraph sub(static_cast<int>(sorted.size()));
  for (size_t a = 0; a < sorted.size(); ++a)
    for (size_t b = 0; b < sorted.size(); ++b)
      if (a != b && edge(sorted[a], sorted[b]))
        sub.add_edge(static_cast<int>(a) + 1, static_cast<int>(b) + 1);
  return sub;
}

std::pair<std::vector<int>, int> OrientationDigraph::strongly_connected_components() const {
  // Kosaraju with explicit stacks
  std::vector<int> order;
  order.reserve(static_cast<size_t>(n_));
  std::vector<char> seen(static_cast<size_t>(n_) + 1, 0);
  for (int s = 1; s <= n_; ++s) {
    if (seen[static_cast<size_t>(s)]) continue;
    std::vector<std::pair<int, size_t>> stack{{s, 0}};
    seen[static_cast<size_t>(s)] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < out_[static_cast<size_t>(v)].size()) {
        const int w = out_[static_cast<size_t>(v)][idx++];
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(static_cast<size_t>(n_) + 1, 0);
  int count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[static_cast<size_t>(*it)]) continue;
    ++count;
    std::deque<int> queue{*it};
    comp[static_cast<size_t>(*it)] = count;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : in_[static_cast<size_t>(v)])
        if (!comp[static_cast<size_t>(w)]) {
          comp[static_cast<size_t>(w)] = count;
          queue.push_back(w);
        }
    }
  }
  return {comp, count};
}

OrientationDigraph orientation_digraph(const GriddedPermutation& gridded) {
  const GriddingMatrix& m = gridded.matrix();
  if (!m.pmm()) throw error("orientation digraph requires pmm sequences");
  OrientationDigraph d(gridded.size());
  const auto cols = gridded.column_orders();
  for (int i = 1; i <= m.cols(); ++i) {
    auto line = cols[static_cast<size_t>(i)];  // position order
    if (m.col_sign(i) == -1) std::reverse(line.begin(), line.end());
    for (size_t a = 0; a < line.size(); ++a)
      for (size_t b = a + 1; b < line.size(); ++b) d.add_edge(line[a], line[b]);
  }
  const auto rows = gridded.row_orders();
  for (int j = 1; j <= m.rows(); ++j) {
    auto line = rows[static_cast<size_t>(j)];  // value order
    if (m.row_sign(j) == -1) std::reverse(line.begin(), line.end());
    for (size_t a = 0; a < line.size(); ++a)
      for (size_t b = a + 1; b < line.size(); ++b) d.add_edge(line[a], line[b]);
  }
  return d;
}

GriddedPermutation m_sum(const GriddedPermutation& left, const GriddedPermutation& right) {
  if (!left.matrix().same_entries(right.matrix())) throw error("m_sum: matrix mismatch");
  GriddedAssembly assembly(with_pmm(left.matrix()));
  assembly.absorb(left, false);
  assembly.absorb(right, false);  // after left in every shared line
  return assembly.finish();
}

GriddedPermutation m_sum_fold(const GriddingMatrix& matrix,
                              const std::vector<GriddedPermutation>& parts) {
  GriddedAssembly assembly(with_pmm(matrix));
  for (const auto& part : parts) assembly.absorb(part, false);
  return assembly.finish();
}

bool is_indivisible(const GriddedPermutation& gridded) {
  if (gridded.size() == 0) return false;
  const auto [comp, count] = orientation_digraph(gridded).strongly_connected_components();
  return count == 1;
}

std::vector<GriddedPermutation> decompose(const GriddedPermutation& gridded) {
  const int n = gridded.size();
  if (n == 0) return {};
  const OrientationDigraph d = orientation_digraph(gridded);
  const auto [comp, count] = d.strongly_connected_components();
  std::vector<std::vector<int>> members(static_cast<size_t>(count) + 1);
  for (int p = 1; p <= n; ++p) members[static_cast<size_t>(comp[static_cast<size_t>(p)])].push_back(p);
  // condensation in-degrees
  std::vector<std::vector<int>> succ(static_cast<size_t>(count) + 1);
  std::vector<int> indeg(static_cast<size_t>(count) + 1, 0);
  for (const auto [a, b] : d.edges()) {
    const int ca = comp[static_cast<size_t>(a)], cb = comp[static_cast<size_t>(b)];
    if (ca != cb) succ[static_cast<size_t>(ca)].push_back(cb);
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  for (int c = 1; c <= count; ++c)
    for (int t : succ[static_cast<size_t>(c)]) ++indeg[static_cast<size_t>(t)];
  // topological order; among sources pick the one whose earliest point comes
  // first, which makes the emitted order canonical
  std::vector<GriddedPermutation> parts;
  std::vector<char> done(static_cast<size_t>(count) + 1, 0);
  for (int step = 0; step < count; ++step) {
    int best = 0;
    for (int c = 1; c <= count; ++c)
      if (!done[static_cast<size_t>(c)] && indeg[static_cast<size_t>(c)] == 0)
        if (!best || members[static_cast<size_t>(c)][0] < members[static_cast<size_t>(best)][0]) best = c;
    if (!best) throw error("decompose: cyclic condensation");  // cannot happen
    done[static_cast<size_t>(best)] = 1;
    for (int t : succ[static_cast<size_t>(best)]) --indeg[static_cast<size_t>(t)];
    parts.push_back(gridded.subpermutation(members[static_cast<size_t>(best)]));
  }
  return parts;
}

namespace detail {

std::pair<bool, int> shared_line(Cell a, Cell b) {
  if (a.col == b.col && a.row != b.row) return {true, a.col};
  if (a.row == b.row && a.col != b.col) return {false, a.row};
  throw error("cells do not share exactly one line");
}

GriddedPermutation minimal_indivisible_for(const GriddingMatrix& matrix,
                                           const std::vector<Cell>& cell_order) {
  GriddedAssembly assembly(matrix);
  const int l = static_cast<int>(cell_order.size());
  std::vector<int> ids(static_cast<size_t>(l));
  using Slot = GriddedAssembly::Slot;
  ids[0] = assembly.add(cell_order[0], Slot::front(), Slot::front());
  for (int t = 1; t < l; ++t) {
    const auto [in_is_col, in_line] = shared_line(cell_order[static_cast<size_t>(t) - 1],
                                                  cell_order[static_cast<size_t>(t)]);
    Slot col_slot = Slot::front(), row_slot = Slot::front();
    (in_is_col ? col_slot : row_slot) = Slot::after(ids[static_cast<size_t>(t) - 1]);
    if (t == l - 1) {
      // closing the directed cycle: precede the first point on the other line
      const auto [out_is_col, out_line] = shared_line(cell_order[static_cast<size_t>(t)], cell_order[0]);
      (void)out_line;
      (out_is_col ? col_slot : row_slot) = Slot::before(ids[0]);
    }
    ids[static_cast<size_t>(t)] = assembly.add(cell_order[static_cast<size_t>(t)], col_slot, row_slot);
  }
  return assembly.finish();
}

}  // namespace detail

namespace detail {

std::vector<int> last_cycle_positions(const GriddedPermutation& gridded) {
  const GriddingMatrix& m = gridded.matrix();
  const OrientationDigraph d = orientation_digraph(gridded);
  // last point of each nonempty cell in its orientation
  std::vector<int> last;
  for (const Cell c : m.nonzero_cells()) {
    const auto pts = gridded.points_in_cell(c);
    if (pts.empty()) continue;
    last.push_back(m.col_sign(c.col) == 1 ? pts.back() : pts.front());
  }
  std::sort(last.begin(), last.end());
  const OrientationDigraph sub = d.induced(last);
  // a shortest directed cycle in the induced digraph is chordless, so its
  // cells trace a cycle of the row-column graph with one point per cell
  const int k = sub.size();
  std::vector<int> best_cycle;
  for (int s = 1; s <= k; ++s) {
    std::vector<int> dist(static_cast<size_t>(k) + 1, -1), from(static_cast<size_t>(k) + 1, 0);
    std::deque<int> queue{s};
    dist[static_cast<size_t>(s)] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : sub.successors(v)) {
        if (w == s) {
          std::vector<int> cycle{v};
          for (int x = v; x != s; x = from[static_cast<size_t>(x)]) cycle.push_back(from[static_cast<size_t>(x)]);
          std::reverse(cycle.begin(), cycle.end());
          if (best_cycle.empty() || cycle.size() < best_cycle.size()) best_cycle = cycle;
          queue.clear();
          break;
        }
        if (dist[static_cast<size_t>(w)] == -1) {
          dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
          from[static_cast<size_t>(w)] = v;
          queue.push_back(w);
        }
      }
    }
  }
  if (best_cycle.empty()) throw error("no directed cycle among the cells' last points");
  std::vector<int> positions;
  for (int v : best_cycle) positions.push_back(last[static_cast<size_t>(v) - 1]);
  return positions;
}

}  // namespace detail

GriddedPermutation last_points_indivisible(const GriddedPermutation& gridded) {
  if (gridded.size() <= 1 || !is_indivisible(gridded))
    throw error("last_points_indivisible: non-singleton indivisible input required");
  return gridded.subpermutation(detail::last_cycle_positions(gridded));
}

std::pair<GriddedPermutation, GriddedPermutation> minimal_indivisibles(
    const GriddingMatrix& matrix, const CycleDescriptor& cycle) {
  const GriddingMatrix m = with_pmm(matrix);
  if (cycle.length() < 4) throw error("minimal_indivisibles: invalid cycle");
  std::vector<Cell> forward = cycle.cells;
  std::vector<Cell> backward{forward[0]};
  backward.insert(backward.end(), forward.rbegin(), forward.rend() - 1);
  return {detail::minimal_indivisible_for(m, forward),
          detail::minimal_indivisible_for(m, backward)};
}

}  // namespace gridclass
