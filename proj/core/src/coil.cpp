#include "gridclass/coil.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "gridclass/assembly.hpp"

namespace gridclass {

char to_char(Chirality c) { return c == Chirality::A ? 'A' : 'B'; }

Chirality chirality_from(char c) {
  if (c == 'A' || c == 'a') return Chirality::A;
  if (c == 'B' || c == 'b') return Chirality::B;
  throw error("chirality must be A or B");
}

int CoilCertificate::label_of(int t) const {
  const int l = cycle.length();
  const int offset = chirality == Chirality::A ? (t - 1) : -(t - 1);
  return ((start_cell - 1 + offset) % l + l) % l + 1;
}

namespace {

GriddedPermutation ensure_pmm(const GriddedPermutation& g) {
  if (g.matrix().pmm()) return g;
  return GriddedPermutation(g.perm(), with_pmm(g.matrix()), g.cells());
}

}  // namespace

std::pair<GriddedPermutation, CoilCertificate> build_coil(const GriddingMatrix& matrix,
                                                          const CycleDescriptor& cycle,
                                                          int start_cell, Chirality chirality,
                                                          int length) {
  const GriddingMatrix m = with_pmm(matrix);
  const int l = cycle.length();
  if (start_cell < 1 || start_cell > l) throw error("build_coil: invalid start cell");
  if (length <= l) throw error("build_coil: length must exceed the cycle length");
  CoilCertificate cert{cycle, start_cell, chirality, length, {}};
  std::vector<Cell> seq(static_cast<size_t>(l));  // traversal order of the cells
  for (int t = 1; t <= l; ++t)
    seq[static_cast<size_t>(t) - 1] = cycle.cells[static_cast<size_t>(cert.label_of(t)) - 1];

  using Slot = GriddedAssembly::Slot;
  GriddedAssembly assembly(m);
  std::vector<int> ids(static_cast<size_t>(length));
  ids[0] = assembly.add(seq[0], Slot::front(), Slot::front());
  for (int i = 2; i <= length; ++i) {
    const Cell cell = seq[static_cast<size_t>((i - 1) % l)];
    const Cell prev = seq[static_cast<size_t>((i - 2) % l)];
    // v_{i-1} is first on the shared line; the new point goes right after it,
    // and ahead of everything on its other line
    const auto in = detail::shared_line(prev, cell);
    Slot col_slot = Slot::front(), row_slot = Slot::front();
    (in.first ? col_slot : row_slot) = Slot::after(ids[static_cast<size_t>(i) - 2]);
    if (i == l) {
      const auto out = detail::shared_line(cell, seq[0]);
      (out.first ? col_slot : row_slot) = Slot::before(ids[0]);  // closes the base cycle
    }
    ids[static_cast<size_t>(i) - 1] = assembly.add(cell, col_slot, row_slot);
  }
  std::vector<int> pos;
  GriddedPermutation gridded = assembly.finish(&pos);
  cert.order.resize(static_cast<size_t>(length));
  for (int i = 0; i < length; ++i)
    cert.order[static_cast<size_t>(i)] = pos[static_cast<size_t>(ids[static_cast<size_t>(i)])];
  return {std::move(gridded), std::move(cert)};
}

Permutation coil_permutation(const GriddingMatrix& matrix, const CycleDescriptor& cycle,
                             int start_cell, Chirality chirality, int length) {
  return build_coil(matrix, cycle, start_cell, chirality, length).first.perm();
}

std::optional<CoilCertificate> is_gridded_coil(const GriddedPermutation& gridded) {
  const int n = gridded.size();
  for (const CycleDescriptor& cycle : cycles(gridded.matrix())) {
    if (n <= cycle.length()) continue;
    for (int start = 1; start <= cycle.length(); ++start) {
      for (Chirality chir : {Chirality::A, Chirality::B}) {
        auto [candidate, cert] = build_coil(gridded.matrix(), cycle, start, chir, n);
        if (candidate.same_gridding(gridded)) return cert;
      }
    }
  }
  return std::nullopt;
}

std::vector<int> last_point_positions(const GriddedPermutation& gridded) {
  return detail::last_cycle_positions(ensure_pmm(gridded));
}

CoilDecomposition coil_decomposition(const GriddedPermutation& gridded, int seed) {
  const GriddedPermutation g = ensure_pmm(gridded);
  const GriddingMatrix& m = g.matrix();
  if (classify(m) != MatrixClass::Cyclic)
    throw error("coil_decomposition: cyclic matrix required");
  if (g.size() <= 1) throw error("coil_decomposition: non-singleton input required");
  if (!is_indivisible(g)) throw error("coil_decomposition: indivisible input required");
  const Cell seed_cell = g.cell_at(seed);
  const auto cell_points = g.points_in_cell(seed_cell);
  const int cell_last =
      m.col_sign(seed_cell.col) == 1 ? cell_points.back() : cell_points.front();
  if (seed != cell_last) throw error("coil_decomposition: seed must be the last point of its cell");

  const OrientationDigraph d = orientation_digraph(g);
  const int n = g.size();
  std::vector<int> layer(static_cast<size_t>(n) + 1, -1);
  layer[static_cast<size_t>(seed)] = 0;
  std::deque<int> queue{seed};
  int depth = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    depth = std::max(depth, layer[static_cast<size_t>(v)]);
    for (int w : d.successors(v))
      if (layer[static_cast<size_t>(w)] == -1) {
        layer[static_cast<size_t>(w)] = layer[static_cast<size_t>(v)] + 1;
        queue.push_back(w);
      }
  }
  CoilDecomposition dec;
  dec.seed = seed;
  dec.boxes.assign(static_cast<size_t>(depth) + 1, {});
  for (int p = 1; p <= n; ++p) {
    if (layer[static_cast<size_t>(p)] == -1)
      throw error("coil_decomposition: point unreachable from the seed");
    dec.boxes[static_cast<size_t>(layer[static_cast<size_t>(p)])].push_back(p);
  }
  const CycleDescriptor cycle = cycles(m)[0];
  const int l = cycle.length();
  for (int i = 0; i <= depth; ++i) {
    auto& box = dec.boxes[static_cast<size_t>(i)];
    std::sort(box.begin(), box.end());
    const Cell cell = g.cell_at(box[0]);
    for (int p : box)
      if (g.cell_at(p) != cell) throw error("coil_decomposition: box spans several cells");
    dec.box_cells.push_back(cell);
    dec.coil_points.push_back(m.col_sign(cell.col) == 1 ? box.front() : box.back());
  }
  // the box cells must walk the cycle
  for (int i = 0; i + 1 <= depth; ++i)
    detail::shared_line(dec.box_cells[static_cast<size_t>(i)], dec.box_cells[static_cast<size_t>(i) + 1]);
  for (int i = 0; i + l <= depth; ++i)
    if (dec.box_cells[static_cast<size_t>(i)] != dec.box_cells[static_cast<size_t>(i + l)])
      throw error("coil_decomposition: box cells do not wrap the cycle");
  return dec;
}

CoilDecomposition coil_decomposition(const GriddedPermutation& gridded) {
  const GriddedPermutation g = ensure_pmm(gridded);
  const auto seeds = last_point_positions(g);
  int seed = seeds[0];
  for (int s : seeds)
    if (g.cell_at(s) < g.cell_at(seed)) seed = s;
  return coil_decomposition(g, seed);
}

namespace {

// (a) l singleton leading boxes, (b) fat box l+1, (c) a first-box mate that
// points at the next coil point
bool good_decomposition(const CoilDecomposition& dec, const OrientationDigraph& d, int l) {
  const int k = dec.length();
  bool leading_singletons = k >= l;
  for (int i = 0; leading_singletons && i < l; ++i)
    if (dec.boxes[static_cast<size_t>(i)].size() != 1) leading_singletons = false;
  if (leading_singletons) return true;
  if (k >= l + 1 && dec.boxes[static_cast<size_t>(l)].size() >= 2) return true;
  for (int i = 1; i <= std::min(l, k - 1); ++i) {
    const int vnext = dec.coil_points[static_cast<size_t>(i)];
    for (int x : dec.boxes[static_cast<size_t>(i) - 1])
      if (x != dec.coil_points[static_cast<size_t>(i) - 1] && d.edge(x, vnext)) return true;
  }
  return false;
}

}  // namespace

CoilDecomposition good_coil_decomposition(const GriddedPermutation& gridded) {
  const GriddedPermutation g = ensure_pmm(gridded);
  const int l = cycles(g.matrix())[0].length();
  const OrientationDigraph d = orientation_digraph(g);
  auto seeds = last_point_positions(g);
  std::sort(seeds.begin(), seeds.end(), [&](int a, int b) { return g.cell_at(a) < g.cell_at(b); });
  for (int seed : seeds) {
    CoilDecomposition dec = coil_decomposition(g, seed);
    if (good_decomposition(dec, d, l)) return dec;
  }
  throw error("good_coil_decomposition: no admissible seed (internal error)");
}

namespace detail {

BoxGridding grid_by_boxes(const GriddedPermutation& host, const std::vector<std::vector<int>>& boxes,
                          const std::vector<Cell>& box_cells, int first_box_index) {
  const GriddingMatrix& m = host.matrix();
  const int count = static_cast<int>(boxes.size());
  if (count == 0 || boxes.size() != box_cells.size()) throw error("grid_by_boxes: bad box list");

  // pair consecutive boxes into shared refined columns / rows
  std::vector<int> colblock(static_cast<size_t>(count), -1), rowblock(static_cast<size_t>(count), -1);
  struct Block {
    int mline = 0;       // column / row of the host matrix
    int max_index = 0;   // larger box index in the block; orders blocks in a line
    std::vector<int> members;
  };
  std::vector<Block> colblocks, rowblocks;
  auto new_block = [&](std::vector<Block>& blocks, std::vector<int>& of, int t, int u, int mline) {
    Block b;
    b.mline = mline;
    b.max_index = first_box_index + std::max(t, u);
    b.members = u >= 0 ? std::vector<int>{t, u} : std::vector<int>{t};
    of[static_cast<size_t>(t)] = static_cast<int>(blocks.size());
    if (u >= 0) of[static_cast<size_t>(u)] = static_cast<int>(blocks.size());
    blocks.push_back(std::move(b));
  };
  for (int t = 0; t + 1 < count; ++t) {
    const auto [is_col, line] = shared_line(box_cells[static_cast<size_t>(t)], box_cells[static_cast<size_t>(t) + 1]);
    if (is_col)
      new_block(colblocks, colblock, t, t + 1, line);
    else
      new_block(rowblocks, rowblock, t, t + 1, line);
  }
  for (int t = 0; t < count; ++t) {
    if (colblock[static_cast<size_t>(t)] == -1)
      new_block(colblocks, colblock, t, -1, box_cells[static_cast<size_t>(t)].col);
    if (rowblock[static_cast<size_t>(t)] == -1)
      new_block(rowblocks, rowblock, t, -1, box_cells[static_cast<size_t>(t)].row);
  }

  // left-to-right: host columns in order; within a column, blocks with larger
  // indices come earlier in orientation, so earlier by position iff the
  // column's sign is +1 (bottom-to-top likewise for rows)
  auto rank_blocks = [&](std::vector<Block>& blocks, bool is_col) {
    std::vector<int> order(blocks.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const Block& x = blocks[static_cast<size_t>(a)];
      const Block& y = blocks[static_cast<size_t>(b)];
      if (x.mline != y.mline) return x.mline < y.mline;
      const int sign = is_col ? m.col_sign(x.mline) : m.row_sign(x.mline);
      return sign == 1 ? x.max_index > y.max_index : x.max_index < y.max_index;
    });
    std::vector<int> rank(blocks.size());
    for (size_t i = 0; i < order.size(); ++i) rank[static_cast<size_t>(order[i])] = static_cast<int>(i) + 1;
    return rank;
  };
  const std::vector<int> colrank = rank_blocks(colblocks, true);
  const std::vector<int> rowrank = rank_blocks(rowblocks, false);

  GriddingMatrix refined(static_cast<int>(colblocks.size()), static_cast<int>(rowblocks.size()));
  std::vector<Cell> ncell(static_cast<size_t>(count));
  for (int t = 0; t < count; ++t) {
    const Cell nc{colrank[static_cast<size_t>(colblock[static_cast<size_t>(t)])],
                  rowrank[static_cast<size_t>(rowblock[static_cast<size_t>(t)])]};
    ncell[static_cast<size_t>(t)] = nc;
    refined.set(nc.col, nc.row, m.entry(box_cells[static_cast<size_t>(t)]));
  }
  auto seqs = pmm_sequences(refined);
  refined.set_pmm(std::get<PmmSequences>(seqs));

  std::vector<int> positions;
  std::vector<std::pair<int, Cell>> assignment;  // (host position, refined cell)
  for (int t = 0; t < count; ++t)
    for (int p : boxes[static_cast<size_t>(t)]) assignment.emplace_back(p, ncell[static_cast<size_t>(t)]);
  std::sort(assignment.begin(), assignment.end());
  std::vector<Cell> cells;
  for (const auto& [p, c] : assignment) {
    positions.push_back(p);
    cells.push_back(c);
  }
  GriddedPermutation body(host.perm().subsequence_pattern(positions), refined, std::move(cells));
  return {std::move(refined), std::move(body), std::move(ncell)};
}

}  // namespace detail

std::pair<GriddingMatrix, GriddedPermutation> regrid_to_acyclic(const GriddedPermutation& gridded) {
  const GriddedPermutation g = ensure_pmm(gridded);
  if (classify(g.matrix()) != MatrixClass::Cyclic)
    throw error("regrid_to_acyclic: cyclic matrix required");
  if (g.size() == 1) {
    GriddingMatrix n(1, 1);
    n.set(1, 1, g.matrix().entry(g.cell_at(1)));
    n.set_pmm(std::get<PmmSequences>(pmm_sequences(n)));
    return {n, GriddedPermutation(g.perm(), n, {Cell{1, 1}})};
  }
  if (!is_indivisible(g)) throw error("regrid_to_acyclic: indivisible input required");
  const CoilDecomposition dec = coil_decomposition(g);
  auto bg = detail::grid_by_boxes(g, dec.boxes, dec.box_cells, 1);
  return {std::move(bg.refined), std::move(bg.body)};
}

GriddedPermutation end_inflate(const GriddedPermutation& coil, const CoilCertificate& cert) {
  auto [check, cert2] = build_coil(coil.matrix(), cert.cycle, cert.start_cell, cert.chirality,
                                   cert.length);
  if (!check.same_gridding(coil)) throw error("end_inflate: not the certified coil");
  const int n = coil.size();
  struct Pt {
    int x, y;
    Cell cell;
  };
  std::vector<Pt> pts;
  pts.reserve(static_cast<size_t>(n) + 2);
  for (int p = 1; p <= n; ++p) pts.push_back({2 * p, 2 * coil.perm().at(p), coil.cell_at(p)});
  for (int end : {cert.order.front(), cert.order.back()}) {
    const Cell cell = coil.cell_at(end);
    const int dir = coil.matrix().entry(cell);  // 12 in a positive cell, 21 in a negative one
    pts.push_back({2 * end + 1, 2 * coil.perm().at(end) + dir, cell});
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x; });
  std::vector<int> ys;
  std::vector<Cell> cells;
  for (const Pt& p : pts) {
    ys.push_back(p.y);
    cells.push_back(p.cell);
  }
  return GriddedPermutation(Permutation::pattern_of(ys), coil.matrix(), std::move(cells));
}

CoilType coil_type(const CoilCertificate& cert) {
  return {cert.start_cell, cert.label_of(2), cert.label_of(cert.length)};
}

std::optional<CoilHit> longest_coil_contained(const Permutation& perm,
                                              const GriddingMatrix& matrix) {
  if (classify(matrix) == MatrixClass::Polycyclic)
    throw error("longest_coil_contained: polycyclic matrix");
  const GriddingMatrix m = with_pmm(matrix);
  std::optional<CoilHit> best;
  for (const CycleDescriptor& cycle : cycles(m)) {
    const int l = cycle.length();
    for (int start = 1; start <= l; ++start) {
      for (Chirality chir : {Chirality::A, Chirality::B}) {
        // a coil contains every shorter coil of its start and chirality as a
        // prefix, so the search is monotone in the length
        int k = l + 1;
        while (k <= perm.size() && contains(coil_permutation(m, cycle, start, chir, k), perm)) {
          if (!best || k > best->length) best = CoilHit{k, start, chir};
          ++k;
        }
      }
    }
  }
  return best;
}

IndivisibleCode encode_indivisible(const GriddedPermutation& gridded) {
  const GriddedPermutation g = ensure_pmm(gridded);
  const GriddingMatrix& m = g.matrix();
  if (classify(m) != MatrixClass::Cyclic) throw error("encode_indivisible: cyclic matrix required");
  if (g.size() == 0) throw error("encode_indivisible: empty input");
  if (!is_indivisible(g)) throw error("encode_indivisible: indivisible input required");
  if (g.size() == 1) {
    GriddingMatrix n(1, 1);
    n.set(1, 1, m.entry(g.cell_at(1)));
    n.set_pmm(std::get<PmmSequences>(pmm_sequences(n)));
    GriddedPermutation body(g.perm(), n, {Cell{1, 1}});
    return {n, std::move(body), 0, 0, m, {}, {Cell{1, 1}}, {g.cell_at(1)}};
  }
  const CoilDecomposition dec = good_coil_decomposition(g);
  const int boxes_total = dec.length();
  const int l = static_cast<int>(cycles(m)[0].length());
  int first_fat = 0, last_fat = 0;
  for (int t = 1; t <= boxes_total; ++t) {
    if (dec.boxes[static_cast<size_t>(t) - 1].size() > 1) {
      if (!first_fat) first_fat = t;
      last_fat = t;
    }
  }
  if (!first_fat) first_fat = last_fat = 2;
  const int a = first_fat - 1;
  const int b = boxes_total - last_fat;

  std::vector<Cell> cycle_cells(static_cast<size_t>(l));
  for (int t = 1; t <= l; ++t)
    cycle_cells[static_cast<size_t>((t - 1) % l)] = dec.box_cells[static_cast<size_t>(t) - 1];

  std::vector<std::vector<int>> body_boxes;
  std::vector<Cell> body_cells;
  for (int t = first_fat - 1; t <= std::min(last_fat + 1, boxes_total); ++t) {
    body_boxes.push_back(dec.boxes[static_cast<size_t>(t) - 1]);
    body_cells.push_back(dec.box_cells[static_cast<size_t>(t) - 1]);
  }
  if (last_fat == boxes_total) {
    // pad with an empty final box in the next cell around the cycle
    body_boxes.push_back({});
    body_cells.push_back(cycle_cells[static_cast<size_t>(boxes_total % l)]);
  }
  auto bg = detail::grid_by_boxes(g, body_boxes, body_cells, first_fat - 1);
  return {std::move(bg.refined), std::move(bg.body), a,
          b,                     m,                   std::move(cycle_cells),
          std::move(bg.box_ncells), std::move(body_cells)};
}

GriddedPermutation decode_indivisible(const IndivisibleCode& code) {
  if (code.cycle_cells.empty()) {
    if (code.body.size() != 1 || code.leading != 0 || code.trailing != 0)
      throw error("decode_indivisible: malformed singleton code");
    return GriddedPermutation(code.body.perm(), code.host, {code.box_mcells[0]});
  }
  const int l = static_cast<int>(code.cycle_cells.size());
  const int a = code.leading, b = code.trailing;
  const int count = static_cast<int>(code.box_ncells.size());
  const int first = a;             // box index of the first body box (= i-1)
  const int last = a + count - 1;  // = j+1, possibly the empty pad
  const int total = (last - 1) + b;
  auto cell_of_index = [&](int t) { return code.cycle_cells[static_cast<size_t>((t - 1) % l)]; };

  // box of each body point, recovered through its refined cell
  std::vector<int> box_of(static_cast<size_t>(code.body.size()) + 1, -1);
  for (int p = 1; p <= code.body.size(); ++p) {
    for (int t = 0; t < count; ++t)
      if (code.box_ncells[static_cast<size_t>(t)] == code.body.cell_at(p)) {
        box_of[static_cast<size_t>(p)] = first + t;
        break;
      }
    if (box_of[static_cast<size_t>(p)] < 0) throw error("decode_indivisible: point outside all boxes");
  }
  std::vector<Cell> mcells(static_cast<size_t>(code.body.size()));
  for (int p = 1; p <= code.body.size(); ++p)
    mcells[static_cast<size_t>(p) - 1] = cell_of_index(box_of[static_cast<size_t>(p)]);
  GriddedPermutation body_m(code.body.perm(), code.host, std::move(mcells));

  GriddedAssembly assembly(code.host);
  const std::vector<int> ids = assembly.absorb(body_m, false);
  auto point_of_box = [&](int t) {
    for (int p = 1; p <= code.body.size(); ++p)
      if (box_of[static_cast<size_t>(p)] == t) return ids[static_cast<size_t>(p) - 1];
    throw error("decode_indivisible: missing singleton box point");
  };

  using Slot = GriddedAssembly::Slot;
  // leading coil points: each new first point trails everything in its lines
  // except the next coil point
  int anchor = first >= 1 ? point_of_box(first) : 0;
  for (int t = first - 1; t >= 1; --t) {
    const auto in = detail::shared_line(cell_of_index(t), cell_of_index(t + 1));
    Slot col_slot = Slot::back(), row_slot = Slot::back();
    (in.first ? col_slot : row_slot) = Slot::before(anchor);
    anchor = assembly.add(cell_of_index(t), col_slot, row_slot);
  }
  // trailing coil points: each new last point leads everything in its lines
  // except its predecessor
  if (b >= 1) {
    int prev = point_of_box(last);
    for (int t = last + 1; t <= total; ++t) {
      const auto in = detail::shared_line(cell_of_index(t - 1), cell_of_index(t));
      Slot col_slot = Slot::front(), row_slot = Slot::front();
      (in.first ? col_slot : row_slot) = Slot::after(prev);
      prev = assembly.add(cell_of_index(t), col_slot, row_slot);
    }
  }
  return assembly.finish();
}

}  // namespace gridclass
