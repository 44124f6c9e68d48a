#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately avoid the library's search paths: containment by plain
// recursion, gridded enumeration by direct cell-count/interleaving
// generation, coil recognition by forced-assignment checking of C1..C4.

#include <functional>
#include <random>
#include <vector>

#include "gridclass/coil.hpp"
#include "gridclass/decomposition.hpp"
#include "gridclass/gridding.hpp"
#include "gridclass/matrix.hpp"
#include "gridclass/permutation.hpp"

namespace testsupport {

using namespace gridclass;

// ---- fixture matrices -------------------------------------------------

// the 4-cycle of the skew-merged permutations
inline GriddingMatrix msm() { return with_pmm(GriddingMatrix::parse("-1 1\n1 -1")); }
// the 6-cycle used by most of the figures
inline GriddingMatrix m3() { return with_pmm(GriddingMatrix::parse("-1 0 1\n0 1 1\n1 -1 0")); }
// 2x2 with a negative 4-cycle (not a pmm until doubled)
inline GriddingMatrix neg2() { return GriddingMatrix::parse("1 -1\n1 1"); }
// 2x2 positive cycle with a multiply-gridded coil of length 8
inline GriddingMatrix updown2() { return with_pmm(GriddingMatrix::parse("-1 -1\n1 1")); }
// unicyclic 2x4 carrier of the counterexample family
inline GriddingMatrix carrier4() { return with_pmm(GriddingMatrix::parse("0 -1 1 1\n-1 1 -1 0")); }

inline Permutation perm(const char* text) { return Permutation::parse(text); }

// ---- permutations -----------------------------------------------------

template <typename F>
void for_all_perms(int n, F visit) {
  std::vector<int> vals(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = i + 1;
  do {
    visit(Permutation(vals));
  } while (std::next_permutation(vals.begin(), vals.end()));
}

inline Permutation random_perm(int n, std::mt19937& rng) {
  std::vector<int> vals(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = i + 1;
  std::shuffle(vals.begin(), vals.end(), rng);
  return Permutation(std::move(vals));
}

// containment by plain recursion, no pruning
inline bool naive_contains(const Permutation& pat, const Permutation& host) {
  std::function<bool(int, std::vector<int>&)> go = [&](int next, std::vector<int>& chosen) {
    const int k = pat.size();
    if (static_cast<int>(chosen.size()) == k) {
      for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) {
          const bool up = pat.at(a) < pat.at(b);
          if (up != (host.at(chosen[static_cast<size_t>(a) - 1]) <
                     host.at(chosen[static_cast<size_t>(b) - 1])))
            return false;
        }
      return true;
    }
    for (int i = next; i <= host.size(); ++i) {
      chosen.push_back(i);
      if (go(i + 1, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  };
  std::vector<int> chosen;
  return go(1, chosen);
}

// ---- gridded permutations ----------------------------------------------

// All gridded permutations of length n over m, generated from cell counts and
// per-line interleavings: the position order within each column and the value
// order within each row are arbitrary interleavings of the column's / row's
// cells, and the k-th point of a cell by position is bound to its k-th (or
// reverse for decreasing cells) point by value.
template <typename F>
void for_all_gridded(const GriddingMatrix& m, int n, F visit) {
  if (n == 0) {
    visit(GriddedPermutation(Permutation(), m, {}));
    return;
  }
  const auto cells = m.nonzero_cells();
  const int T = static_cast<int>(cells.size());
  std::vector<int> counts(static_cast<size_t>(T), 0);
  std::vector<std::vector<int>> colseq(static_cast<size_t>(m.cols()) + 1);
  std::vector<std::vector<int>> rowseq(static_cast<size_t>(m.rows()) + 1);

  auto emit = [&]() {
    std::vector<int> col_base(static_cast<size_t>(m.cols()) + 2, 0);
    std::vector<int> row_base(static_cast<size_t>(m.rows()) + 2, 0);
    for (int c = 1; c <= m.cols(); ++c)
      col_base[static_cast<size_t>(c) + 1] =
          col_base[static_cast<size_t>(c)] + static_cast<int>(colseq[static_cast<size_t>(c)].size());
    for (int r = 1; r <= m.rows(); ++r)
      row_base[static_cast<size_t>(r) + 1] =
          row_base[static_cast<size_t>(r)] + static_cast<int>(rowseq[static_cast<size_t>(r)].size());
    std::vector<std::vector<int>> pos_of_occ(static_cast<size_t>(T));
    for (int c = 1; c <= m.cols(); ++c)
      for (size_t s = 0; s < colseq[static_cast<size_t>(c)].size(); ++s)
        pos_of_occ[static_cast<size_t>(colseq[static_cast<size_t>(c)][s])].push_back(
            col_base[static_cast<size_t>(c)] + static_cast<int>(s) + 1);
    std::vector<int> vals(static_cast<size_t>(n), 0);
    std::vector<Cell> cellv(static_cast<size_t>(n));
    std::vector<int> seen(static_cast<size_t>(T), 0);
    for (int r = 1; r <= m.rows(); ++r) {
      for (size_t s = 0; s < rowseq[static_cast<size_t>(r)].size(); ++s) {
        const int t = rowseq[static_cast<size_t>(r)][s];
        const int v = row_base[static_cast<size_t>(r)] + static_cast<int>(s) + 1;
        const int q = seen[static_cast<size_t>(t)]++;
        const int o = m.entry(cells[static_cast<size_t>(t)]) == 1 ? q : counts[static_cast<size_t>(t)] - 1 - q;
        const int p = pos_of_occ[static_cast<size_t>(t)][static_cast<size_t>(o)];
        vals[static_cast<size_t>(p) - 1] = v;
        cellv[static_cast<size_t>(p) - 1] = cells[static_cast<size_t>(t)];
      }
    }
    visit(GriddedPermutation(Permutation(vals), m, cellv));
  };

  std::function<void(int)> rows_iter = [&](int j) {
    if (j > m.rows()) {
      emit();
      return;
    }
    std::vector<int> base = rowseq[static_cast<size_t>(j)];
    std::sort(base.begin(), base.end());
    do {
      rowseq[static_cast<size_t>(j)] = base;
      rows_iter(j + 1);
    } while (std::next_permutation(base.begin(), base.end()));
    rowseq[static_cast<size_t>(j)] = base;
  };
  std::function<void(int)> cols_iter = [&](int i) {
    if (i > m.cols()) {
      rows_iter(1);
      return;
    }
    std::vector<int> base = colseq[static_cast<size_t>(i)];
    std::sort(base.begin(), base.end());
    do {
      colseq[static_cast<size_t>(i)] = base;
      cols_iter(i + 1);
    } while (std::next_permutation(base.begin(), base.end()));
    colseq[static_cast<size_t>(i)] = base;
  };
  std::function<void(int, int)> choose = [&](int t, int left) {
    if (t == T - 1) {
      counts[static_cast<size_t>(t)] = left;
      for (auto& s : colseq) s.clear();
      for (auto& s : rowseq) s.clear();
      for (int t2 = 0; t2 < T; ++t2)
        for (int q = 0; q < counts[static_cast<size_t>(t2)]; ++q) {
          colseq[static_cast<size_t>(cells[static_cast<size_t>(t2)].col)].push_back(t2);
          rowseq[static_cast<size_t>(cells[static_cast<size_t>(t2)].row)].push_back(t2);
        }
      cols_iter(1);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[static_cast<size_t>(t)] = c;
      choose(t + 1, left - c);
    }
  };
  choose(0, n);
}

// random gridded permutation by random counts and interleavings
inline GriddedPermutation random_gridded(const GriddingMatrix& m, int n, std::mt19937& rng) {
  const auto cells = m.nonzero_cells();
  const int T = static_cast<int>(cells.size());
  std::vector<int> counts(static_cast<size_t>(T), 0);
  for (int i = 0; i < n; ++i) ++counts[static_cast<size_t>(rng() % static_cast<unsigned>(T))];
  std::vector<std::vector<int>> colseq(static_cast<size_t>(m.cols()) + 1);
  std::vector<std::vector<int>> rowseq(static_cast<size_t>(m.rows()) + 1);
  for (int t = 0; t < T; ++t)
    for (int q = 0; q < counts[static_cast<size_t>(t)]; ++q) {
      colseq[static_cast<size_t>(cells[static_cast<size_t>(t)].col)].push_back(t);
      rowseq[static_cast<size_t>(cells[static_cast<size_t>(t)].row)].push_back(t);
    }
  for (auto& s : colseq) std::shuffle(s.begin(), s.end(), rng);
  for (auto& s : rowseq) std::shuffle(s.begin(), s.end(), rng);
  std::vector<int> col_base(static_cast<size_t>(m.cols()) + 2, 0);
  std::vector<int> row_base(static_cast<size_t>(m.rows()) + 2, 0);
  for (int c = 1; c <= m.cols(); ++c)
    col_base[static_cast<size_t>(c) + 1] =
        col_base[static_cast<size_t>(c)] + static_cast<int>(colseq[static_cast<size_t>(c)].size());
  for (int r = 1; r <= m.rows(); ++r)
    row_base[static_cast<size_t>(r) + 1] =
        row_base[static_cast<size_t>(r)] + static_cast<int>(rowseq[static_cast<size_t>(r)].size());
  std::vector<std::vector<int>> pos_of_occ(static_cast<size_t>(T));
  for (int c = 1; c <= m.cols(); ++c)
    for (size_t s = 0; s < colseq[static_cast<size_t>(c)].size(); ++s)
      pos_of_occ[static_cast<size_t>(colseq[static_cast<size_t>(c)][s])].push_back(
          col_base[static_cast<size_t>(c)] + static_cast<int>(s) + 1);
  std::vector<int> vals(static_cast<size_t>(n), 0);
  std::vector<Cell> cellv(static_cast<size_t>(n));
  std::vector<int> seen(static_cast<size_t>(T), 0);
  for (int r = 1; r <= m.rows(); ++r)
    for (size_t s = 0; s < rowseq[static_cast<size_t>(r)].size(); ++s) {
      const int t = rowseq[static_cast<size_t>(r)][s];
      const int v = row_base[static_cast<size_t>(r)] + static_cast<int>(s) + 1;
      const int q = seen[static_cast<size_t>(t)]++;
      const int o =
          m.entry(cells[static_cast<size_t>(t)]) == 1 ? q : counts[static_cast<size_t>(t)] - 1 - q;
      const int p = pos_of_occ[static_cast<size_t>(t)][static_cast<size_t>(o)];
      vals[static_cast<size_t>(p) - 1] = v;
      cellv[static_cast<size_t>(p) - 1] = cells[static_cast<size_t>(t)];
    }
  return GriddedPermutation(Permutation(std::move(vals)), m, std::move(cellv));
}

// ---- coil oracle --------------------------------------------------------

// Forced-assignment C1..C4 recognizer, independent of build_coil: given a
// start cell and direction, C1 fixes how many points each cell holds and the
// within-cell orientation order fixes which point is which v_i (later indices
// come earlier); the axioms are then checked against the orientation digraph.
inline bool naive_is_coil(const GriddedPermutation& g) {
  const GriddingMatrix& m = g.matrix();
  const int n = g.size();
  for (const CycleDescriptor& cycle : cycles(m)) {
    const int l = cycle.length();
    if (n <= l) continue;
    for (Cell c : m.nonzero_cells()) {
      const bool on_cycle =
          std::find(cycle.cells.begin(), cycle.cells.end(), c) != cycle.cells.end();
      if (!on_cycle && !g.points_in_cell(c).empty()) goto next_cycle;
    }
    {
      const OrientationDigraph d = orientation_digraph(g);
      for (int start = 1; start <= l; ++start) {
        for (int dir : {1, -1}) {
          std::vector<int> v(static_cast<size_t>(n) + 1, 0);
          bool ok = true;
          for (int t = 1; t <= l && ok; ++t) {
            const int label = ((start - 1 + dir * (t - 1)) % l + l) % l + 1;
            const Cell cell = cycle.cells[static_cast<size_t>(label) - 1];
            auto pts = g.points_in_cell(cell);  // ascending positions
            if (m.col_sign(cell.col) == -1) std::reverse(pts.begin(), pts.end());
            // pts is now the within-cell orientation order; indices t, t+l, ...
            // are assigned from the latest backwards
            std::vector<int> slots;
            for (int i = t; i <= n; i += l) slots.push_back(i);
            if (static_cast<int>(pts.size()) != static_cast<int>(slots.size())) {
              ok = false;
              break;
            }
            for (size_t s = 0; s < pts.size(); ++s)
              v[static_cast<size_t>(slots[slots.size() - 1 - s])] = pts[s];
          }
          if (!ok) continue;
          for (int i = 2; i <= n && ok; ++i)
            if (!d.edge(v[static_cast<size_t>(i) - 1], v[static_cast<size_t>(i)])) ok = false;
          for (int i = l + 2; i <= n && ok; ++i)
            if (!d.edge(v[static_cast<size_t>(i)], v[static_cast<size_t>(i - l - 1)])) ok = false;
          if (ok && !d.edge(v[static_cast<size_t>(l) + 1], v[1])) ok = false;
          if (ok) return true;
        }
      }
    }
  next_cycle:;
  }
  return false;
}

// divisibility by subset enumeration against the m_sum definition
inline bool naive_is_divisible(const GriddedPermutation& g) {
  const int n = g.size();
  if (n < 2) return false;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> left, right;
    for (int p = 1; p <= n; ++p)
      (mask >> (p - 1) & 1u ? left : right).push_back(p);
    const GriddedPermutation sum = m_sum(g.subpermutation(left), g.subpermutation(right));
    if (sum.same_gridding(g)) return true;
  }
  return false;
}

}  // namespace testsupport
