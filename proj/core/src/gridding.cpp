#include "gridclass/gridding.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "containment.hpp"

namespace gridclass {

GriddedPermutation::GriddedPermutation(Permutation perm, GriddingMatrix matrix,
                                       std::vector<Cell> cell_of)
    : perm_(std::move(perm)), matrix_(std::move(matrix)), cell_of_(std::move(cell_of)) {
  const int n = perm_.size();
  if (static_cast<int>(cell_of_.size()) != n)
    throw error("gridding: one cell per point required");
  for (const Cell c : cell_of_) {
    if (c.col < 1 || c.col > matrix_.cols() || c.row < 1 || c.row > matrix_.rows())
      throw error("gridding: cell out of range");
    if (matrix_.entry(c) == 0) throw error("gridding: nonempty zero cell");
  }
  for (int p = 2; p <= n; ++p)
    if (cell_at(p).col < cell_at(p - 1).col)
      throw error("gridding: columns must weakly increase with position");
  int prev_row = 1;
  for (int v = 1; v <= n; ++v) {
    const int r = cell_at(perm_.position_of(v)).row;
    if (r < prev_row) throw error("gridding: rows must weakly increase with value");
    prev_row = r;
  }
  // per-cell monotonicity of the prescribed sign
  std::vector<int> last_pos(static_cast<size_t>(matrix_.cols()) * static_cast<size_t>(matrix_.rows()) + 1, 0);
  for (int v = 1; v <= n; ++v) {
    const int p = perm_.position_of(v);
    const Cell c = cell_at(p);
    const size_t key = static_cast<size_t>(c.col - 1) +
                       static_cast<size_t>(c.row - 1) * static_cast<size_t>(matrix_.cols()) + 1;
    if (last_pos[key] != 0) {
      const int e = matrix_.entry(c);
      if (e == 1 && p < last_pos[key])
        throw error("gridding: cell must be increasing");
      if (e == -1 && p > last_pos[key])
        throw error("gridding: cell must be decreasing");
    }
    last_pos[key] = p;
  }
}

Cell GriddedPermutation::cell_at(int pos) const {
  if (pos < 1 || pos > size()) throw error("position out of range");
  return cell_of_[static_cast<size_t>(pos) - 1];
}

std::vector<int> GriddedPermutation::points_in_cell(Cell c) const {
  std::vector<int> out;
  for (int p = 1; p <= size(); ++p)
    if (cell_at(p) == c) out.push_back(p);
  return out;
}

std::vector<std::vector<int>> GriddedPermutation::column_orders() const {
  std::vector<std::vector<int>> out(static_cast<size_t>(matrix_.cols()) + 1);
  for (int p = 1; p <= size(); ++p) out[static_cast<size_t>(cell_at(p).col)].push_back(p);
  return out;
}

std::vector<std::vector<int>> GriddedPermutation::row_orders() const {
  std::vector<std::vector<int>> out(static_cast<size_t>(matrix_.rows()) + 1);
  for (int v = 1; v <= size(); ++v) {
    const int p = perm_.position_of(v);
    out[static_cast<size_t>(cell_at(p).row)].push_back(p);
  }
  return out;
}

GriddedPermutation GriddedPermutation::subpermutation(std::vector<int> positions) const {
  std::sort(positions.begin(), positions.end());
  std::vector<Cell> sub_cells;
  sub_cells.reserve(positions.size());
  for (int p : positions) sub_cells.push_back(cell_at(p));
  return GriddedPermutation(perm_.subsequence_pattern(positions), matrix_, std::move(sub_cells));
}

bool GriddedPermutation::same_gridding(const GriddedPermutation& other) const {
  return matrix_.same_entries(other.matrix_) && perm_ == other.perm_ && cell_of_ == other.cell_of_;
}

std::string GriddedPermutation::str() const {
  std::ostringstream out;
  out << perm_.str() << " @";
  for (int p = 1; p <= size(); ++p)
    out << " (" << cell_at(p).col << "," << cell_at(p).row << ")";
  return out.str();
}

GriddedPermutation make_gridded(const Permutation& perm, const GriddingMatrix& matrix,
                                const std::vector<int>& v_cuts, const std::vector<int>& h_cuts) {
  const int n = perm.size();
  if (static_cast<int>(v_cuts.size()) != matrix.cols() - 1 ||
      static_cast<int>(h_cuts.size()) != matrix.rows() - 1)
    throw error("make_gridded: wrong number of cut lines");
  auto check = [n](const std::vector<int>& cuts) {
    int prev = 0;
    for (int c : cuts) {
      if (c < prev || c > n) throw error("make_gridded: cuts must be weakly increasing in 0..n");
      prev = c;
    }
  };
  check(v_cuts);
  check(h_cuts);
  std::vector<Cell> cells(static_cast<size_t>(n));
  for (int p = 1; p <= n; ++p) {
    int col = 1;
    while (col <= static_cast<int>(v_cuts.size()) && p > v_cuts[static_cast<size_t>(col) - 1]) ++col;
    int row = 1;
    while (row <= static_cast<int>(h_cuts.size()) && perm.at(p) > h_cuts[static_cast<size_t>(row) - 1]) ++row;
    cells[static_cast<size_t>(p) - 1] = {col, row};
  }
  return GriddedPermutation(perm, matrix, std::move(cells));
}

namespace detail {
namespace {

// Cut enumeration in two phases: vertical cuts first (with a per-column
// feasibility DP pruning each choice), then horizontal cuts chosen bottom row
// upwards, extending each value band point by point so that a violation cuts
// the whole branch.
struct GriddingEnumerator {
  const Permutation& perm;
  const GriddingMatrix& m;
  const std::function<bool(const std::vector<Cell>&)>& visit;
  const Budget* budget;
  int v1_lo, v1_hi;

  int n, cols, rows;
  std::vector<int> pos_of;  // value -> position
  std::vector<int> col_of;  // position -> column
  std::vector<int> row_of;  // value -> row
  bool stopped = false;
  std::uint64_t steps = 0;

  GriddingEnumerator(const Permutation& p, const GriddingMatrix& mat,
                     const std::function<bool(const std::vector<Cell>&)>& v, const Budget* b,
                     int lo, int hi)
      : perm(p), m(mat), visit(v), budget(b), v1_lo(lo), v1_hi(hi) {
    n = perm.size();
    cols = m.cols();
    rows = m.rows();
    pos_of.assign(static_cast<size_t>(n) + 1, 0);
    for (int p2 = 1; p2 <= n; ++p2) pos_of[static_cast<size_t>(perm.at(p2))] = p2;
    col_of.assign(static_cast<size_t>(n) + 1, 0);
    row_of.assign(static_cast<size_t>(n) + 1, 0);
  }

  void tick() {
    if (budget && (++steps & 0xff) == 1) budget->check();
  }

  // Can the points of a column (positions lo+1..hi) be split by value
  // thresholds into monotone runs matching the column's entries bottom-up?
  bool column_feasible(int col, int plo, int phi) {
    std::vector<int> pts;  // positions of the column, in value order
    for (int v = 1; v <= n; ++v)
      if (pos_of[static_cast<size_t>(v)] > plo && pos_of[static_cast<size_t>(v)] <= phi)
        pts.push_back(pos_of[static_cast<size_t>(v)]);
    const int t = static_cast<int>(pts.size());
    if (t == 0) return true;
    // mono[s][s'] for bands of consecutive value-ranks (s,s']
    std::vector<std::vector<int>> band(static_cast<size_t>(t) + 1,
                                       std::vector<int>(static_cast<size_t>(t) + 1, 0));
    for (int s = 0; s < t; ++s) {
      bool inc = true, dec = true;
      for (int e = s + 1; e <= t; ++e) {
        if (e > s + 1) {
          if (pts[static_cast<size_t>(e) - 1] < pts[static_cast<size_t>(e) - 2]) inc = false;
          if (pts[static_cast<size_t>(e) - 1] > pts[static_cast<size_t>(e) - 2]) dec = false;
        }
        band[static_cast<size_t>(s)][static_cast<size_t>(e)] = (inc ? 1 : 0) | (dec ? 2 : 0);
      }
    }
    std::vector<char> feas(static_cast<size_t>(t) + 1, 0), next(static_cast<size_t>(t) + 1, 0);
    feas[0] = 1;
    for (int j = 1; j <= rows; ++j) {
      std::fill(next.begin(), next.end(), 0);
      const int e = m.entry(col, j);
      for (int s = 0; s <= t; ++s) {
        if (!feas[static_cast<size_t>(s)]) continue;
        next[static_cast<size_t>(s)] = 1;  // empty band
        if (e == 0) continue;
        for (int s2 = s + 1; s2 <= t; ++s2)
          if (band[static_cast<size_t>(s)][static_cast<size_t>(s2)] & (e == 1 ? 1 : 2))
            next[static_cast<size_t>(s2)] = 1;
      }
      feas.swap(next);
    }
    return feas[static_cast<size_t>(t)] != 0;
  }

  void choose_column_cut(int col, int prev_cut) {
    if (stopped) return;
    tick();
    if (col == cols) {
      if (!column_feasible(col, prev_cut, n)) return;
      for (int p = prev_cut + 1; p <= n; ++p) col_of[static_cast<size_t>(p)] = col;
      choose_row_cut(1, 0);
      return;
    }
    const int lo = (col == 1 && v1_lo > 0) ? v1_lo : prev_cut;
    const int hi = (col == 1 && v1_hi >= 0) ? v1_hi : n;
    for (int c = std::max(lo, prev_cut); c <= hi; ++c) {
      for (int p = prev_cut + 1; p <= c; ++p) col_of[static_cast<size_t>(p)] = col;
      if (column_feasible(col, prev_cut, c)) choose_column_cut(col + 1, c);
      if (stopped) return;
    }
  }

  void choose_row_cut(int row, int prev_cut) {
    if (stopped) return;
    tick();
    // extend the band for this row value by value; a violation stops larger cuts too
    std::vector<int> last_pos(static_cast<size_t>(cols) + 1, 0);
    const bool last_row = row == rows;
    const int high = last_row ? n : n;  // last band is forced to reach n
    for (int h = prev_cut; h <= high; ++h) {
      if (h > prev_cut) {
        const int v = h;
        const int p = pos_of[static_cast<size_t>(v)];
        const int col = col_of[static_cast<size_t>(p)];
        const int e = m.entry(col, row);
        if (e == 0) return;
        const int lp = last_pos[static_cast<size_t>(col)];
        if (lp != 0 && ((e == 1 && p < lp) || (e == -1 && p > lp))) return;
        last_pos[static_cast<size_t>(col)] = p;
        row_of[static_cast<size_t>(v)] = row;
      }
      if (last_row) {
        if (h == n) emit();
        continue;
      }
      choose_row_cut(row + 1, h);
      if (stopped) return;
    }
  }

  void emit() {
    std::vector<Cell> cells(static_cast<size_t>(n));
    for (int p = 1; p <= n; ++p)
      cells[static_cast<size_t>(p) - 1] = {col_of[static_cast<size_t>(p)],
                                           row_of[static_cast<size_t>(perm.at(p))]};
    if (!visit(cells)) stopped = true;
  }

  void run() { choose_column_cut(1, 0); }
};

}  // namespace

void for_each_gridding(const Permutation& perm, const GriddingMatrix& matrix,
                       const std::function<bool(const std::vector<Cell>&)>& visit,
                       const Budget* budget, int v1_lo, int v1_hi) {
  GriddingEnumerator e(perm, matrix, visit, budget, v1_lo, v1_hi);
  e.run();
}

}  // namespace detail

namespace {

template <typename Visit>
void run_partitioned(const Permutation& perm, const GriddingMatrix& matrix, const Budget* budget,
                     int jobs, const Visit& make_visit) {
  const int n = perm.size();
  if (jobs <= 1 || matrix.cols() == 1 || n == 0) {
    detail::for_each_gridding(perm, matrix, make_visit(0), budget);
    return;
  }
  jobs = std::min(jobs, n + 1);
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex mu;
  for (int w = 0; w < jobs; ++w) {
    const int lo = w * (n + 1) / jobs;
    const int hi = (w + 1) * (n + 1) / jobs - 1;
    workers.emplace_back([&, lo, hi, w]() {
      try {
        detail::for_each_gridding(perm, matrix, make_visit(w), budget, lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<GriddedPermutation> enumerate_griddings(const Permutation& perm,
                                                    const GriddingMatrix& matrix,
                                                    const Budget* budget, int jobs) {
  std::set<std::vector<Cell>> assignments;  // dedup by cell assignment
  std::mutex mu;
  run_partitioned(perm, matrix, budget, jobs, [&](int) {
    return [&](const std::vector<Cell>& cells) {
      std::lock_guard<std::mutex> lock(mu);
      assignments.insert(cells);
      return true;
    };
  });
  std::vector<GriddedPermutation> out;
  out.reserve(assignments.size());
  for (const auto& cells : assignments) out.emplace_back(perm, matrix, cells);
  return out;
}

std::uint64_t count_griddings(const Permutation& perm, const GriddingMatrix& matrix,
                              const Budget* budget, int jobs) {
  std::atomic<std::uint64_t> count{0};
  run_partitioned(perm, matrix, budget, jobs, [&](int) {
    return [&count](const std::vector<Cell>&) {
      ++count;
      return true;
    };
  });
  return count.load();
}

std::optional<GriddedPermutation> member(const Permutation& perm, const GriddingMatrix& matrix,
                                         const Budget* budget) {
  std::optional<std::vector<Cell>> witness;
  detail::for_each_gridding(
      perm, matrix,
      [&](const std::vector<Cell>& cells) {
        witness = cells;
        return false;  // short-circuit on the first gridding
      },
      budget);
  if (!witness) return std::nullopt;
  return GriddedPermutation(perm, matrix, std::move(*witness));
}

std::optional<Embedding> gridded_contains(const GriddedPermutation& pattern,
                                          const GriddedPermutation& host) {
  if (!pattern.matrix().same_entries(host.matrix()))
    throw error("gridded_contains: matrix mismatch");
  detail::ContainmentSearch s(pattern.perm(), host.perm(), [&](int j, int i) {
    return pattern.cell_at(j) == host.cell_at(i);
  });
  return s.first();
}

}  // namespace gridclass
