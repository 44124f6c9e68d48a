#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gridclass/decomposition.hpp"
#include "gridclass/gridding.hpp"
#include "gridclass/matrix.hpp"

namespace gridclass {

/// The two directions in which a coil can traverse its cycle. A is the
/// canonical cell order of the CycleDescriptor, B the reverse. The tags are a
/// convention of this library; only the partition into two classes matters.
enum class Chirality { A, B };

char to_char(Chirality c);
Chirality chirality_from(char c);

/// Witness that a gridded permutation is a coil: v_i lies in cell i mod l
/// (C1), consecutive points are orientation-linked (C2), each point precedes
/// its predecessor l+1 steps back (C3), and v_{l+1} precedes v_1 (C4).
struct CoilCertificate {
  CycleDescriptor cycle;
  int start_cell = 1;  // canonical label of the cell containing v_1
  Chirality chirality = Chirality::A;
  int length = 0;
  std::vector<int> order;  // positions of v_1..v_n

  /// Canonical label of the cell holding v_t (1-based t).
  int label_of(int t) const;
};

/// The unique coil determined by (cycle, start cell, chirality, length).
/// Requires length > cycle length; the matrix needs pmm sequences (canonical
/// ones are attached when missing).
std::pair<GriddedPermutation, CoilCertificate> build_coil(const GriddingMatrix& matrix,
                                                          const CycleDescriptor& cycle,
                                                          int start_cell, Chirality chirality,
                                                          int length);

/// Convenience: the underlying (ungridded) coil permutation.
Permutation coil_permutation(const GriddingMatrix& matrix, const CycleDescriptor& cycle,
                             int start_cell, Chirality chirality, int length);

/// Decides whether the gridded permutation equals one of the <= 2l constructed
/// coils of its length, per cycle of its matrix.
std::optional<CoilCertificate> is_gridded_coil(const GriddedPermutation& gridded);

/// BFS layering of an indivisible gridded permutation from a seed point that
/// is last in its cell: box i lies in cell i mod l, and the first points of
/// the boxes form the associated coil when there are more than l boxes.
struct CoilDecomposition {
  std::vector<std::vector<int>> boxes;  // positions per box, in box order
  std::vector<Cell> box_cells;
  std::vector<int> coil_points;  // position of v_i (first of box i in orientation)
  int seed = 0;

  int length() const { return static_cast<int>(boxes.size()); }
};

/// Positions of the last points of the nonzero cells that form the canonical
/// directed cycle (the candidate seeds).
std::vector<int> last_point_positions(const GriddedPermutation& gridded);

CoilDecomposition coil_decomposition(const GriddedPermutation& gridded, int seed);
CoilDecomposition coil_decomposition(const GriddedPermutation& gridded);

/// A coil decomposition with singleton leading boxes, or a doubly-occupied box
/// l+1, or an extra first-box-mate pointing at the next coil point; found by
/// reseeding over the cycle's last points.
CoilDecomposition good_coil_decomposition(const GriddedPermutation& gridded);

/// Refines an indivisible gridded permutation over a cyclic matrix into a
/// gridding by an acyclic matrix whose row-column graph is a path, one nonzero
/// entry per box of its coil decomposition.
std::pair<GriddingMatrix, GriddedPermutation> regrid_to_acyclic(const GriddedPermutation& gridded);

/// Replaces the first and last coil points by monotone pairs (12 in a positive
/// cell, 21 in a negative one), producing a gridded permutation of length n+2.
GriddedPermutation end_inflate(const GriddedPermutation& coil, const CoilCertificate& cert);

/// (s1, s2, f): canonical labels of the cells of the first, second and last
/// coil points.
struct CoilType {
  int s1 = 0, s2 = 0, f = 0;
  auto operator<=>(const CoilType&) const = default;
};

CoilType coil_type(const CoilCertificate& cert);

struct CoilHit {
  int length = 0;
  int start_cell = 1;
  Chirality chirality = Chirality::A;
};

/// The longest coil of the matrix contained (as a plain permutation) in perm,
/// over all cycles, starts and chiralities; absent when not even a coil of
/// length l+1 embeds. Errors on polycyclic matrices.
std::optional<CoilHit> longest_coil_contained(const Permutation& perm,
                                              const GriddingMatrix& matrix);

/// Reversible encoding of an indivisible gridded permutation over a cyclic
/// matrix as (body over an acyclic refinement, leading count, trailing count).
struct IndivisibleCode {
  GriddingMatrix refined;         // N, acyclic, pmm attached
  GriddedPermutation body;        // over N; boxes B_{i-1}..B_{j+1}
  int leading = 0;                // a: coil points before the first fat box
  int trailing = 0;               // b: coil points after the last fat box
  GriddingMatrix host;            // M with pmm
  std::vector<Cell> cycle_cells;  // cell of box index t is cycle_cells[(t-1) mod l]; empty for singleton codes
  std::vector<Cell> box_ncells;   // N-cell per body box, in box order
  std::vector<Cell> box_mcells;   // M-cell per body box
};

IndivisibleCode encode_indivisible(const GriddedPermutation& gridded);
GriddedPermutation decode_indivisible(const IndivisibleCode& code);

namespace detail {

/// Refined gridding machinery shared by regrid_to_acyclic and the encoder:
/// lays out consecutive boxes (one may be an empty pad at the end) as the
/// nonzero entries of an acyclic matrix. first_box_index is the
/// coil-decomposition index of boxes[0].
struct BoxGridding {
  GriddingMatrix refined;
  GriddedPermutation body;
  std::vector<Cell> box_ncells;
};

BoxGridding grid_by_boxes(const GriddedPermutation& host, const std::vector<std::vector<int>>& boxes,
                          const std::vector<Cell>& box_cells, int first_box_index);

}  // namespace detail

}  // namespace gridclass
