#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gridclass/budget.hpp"
#include "gridclass/coil.hpp"
#include "gridclass/gridding.hpp"
#include "gridclass/matrix.hpp"

namespace gridclass {

/// Outcome of the coil tests for one chirality of one cycle. A chirality is
/// "open" when all l coils of the test length avoid every effective basis
/// element (so the subclass keeps arbitrarily long coils of that chirality);
/// otherwise a witness embedding of a basis element is recorded.
struct ChiralityReport {
  Chirality chirality = Chirality::A;
  bool open = false;
  int witness_start = 0;      // when blocked: coil start cell
  int witness_basis = -1;     // index into effective_basis
  Embedding witness_embedding;
};

struct CycleReport {
  CycleDescriptor cycle;
  int coil_length = 0;  // length of the coils that were tested
  std::vector<ChiralityReport> chiralities;
};

struct LwqoVerdict {
  bool lwqo = false;
  GriddingMatrix normalized;  // pmm the procedure ran on
  bool doubled = false;
  std::vector<Permutation> effective_basis;
  std::vector<Permutation> dropped_basis;  // elements outside the grid class
  int max_basis_length = 0;
  std::vector<CycleReport> cycle_reports;  // tree components never block
};

/// Decides labelled well quasi-order of Av(basis) within Grid(matrix): for
/// each cyclic component, tests whether all l coils of one chirality of length
/// (n+5)l+n avoid every basis element (n = longest effective basis element).
/// Basis elements outside the grid class are dropped as vacuous. Errors on
/// polycyclic matrices.
LwqoVerdict decide_lwqo(const GriddingMatrix& matrix, const std::vector<Permutation>& basis,
                        const Budget* budget = nullptr, int jobs = 1);

struct AntichainFamily {
  GriddingMatrix matrix;
  CoilType type;
  std::vector<Permutation> members;  // end-inflated coils, lengths ascending
  std::vector<int> coil_lengths;     // underlying coil lengths
};

/// `count` end-inflated coils of the given type, smallest total length at
/// least (l+1)l^2+3, consecutive lengths differing by l.
AntichainFamily antichain_family(const GriddingMatrix& matrix, CoilType type, int count);

struct AntichainCheck {
  bool antichain = true;
  std::optional<std::pair<int, int>> violation;  // 1-based (i,j): perms[i] embeds in perms[j]
};

/// Pairwise incomparability under containment.
AntichainCheck check_antichain(const std::vector<Permutation>& perms);

/// Builds the coils of the given distinct lengths (same start and chirality),
/// labels first and last points with one token and the interior with another,
/// and verifies that no shorter coil embeds in a longer one labelled-wise.
bool check_labelled_coil_antichain(const GriddingMatrix& matrix, const std::vector<int>& lengths,
                                   int start_cell = 1, Chirality chirality = Chirality::A);

/// All minimal non-members of the grid class up to max_len: not a member, yet
/// every one-point deletion is. max_len beyond the budget is an error.
std::vector<Permutation> basis_search(const GriddingMatrix& matrix, int max_len,
                                      int budget_len = 8, const Budget* budget = nullptr);

/// The k-th member of an infinite antichain that lies in the bases of two grid
/// classes whose row-column graphs carry two identical cycles: one with both
/// cycles in a single component, one with them in separate components.
struct BicyclicCounterexample {
  Permutation perm;
  GriddingMatrix single_component;  // 5x4
  GriddingMatrix two_components;    // 6x4
};

BicyclicCounterexample bicyclic_counterexample(int k);

/// Bounded probe of the end-inflated coils per type: which members up to the
/// length bound avoid every basis element. Reports only; no wqo verdict.
struct SurveyTypeRow {
  CoilType type;
  std::vector<int> alive_lengths;  // end-inflated lengths that avoid the basis
  bool alive_at_bound = false;
};

struct SurveyReport {
  int threshold = 0;  // smallest end-inflated length, (l+1)l^2+3
  int length_bound = 0;
  bool bound_below_threshold = false;
  std::vector<SurveyTypeRow> rows;
};

SurveyReport end_inflated_survey(const GriddingMatrix& matrix,
                                 const std::vector<Permutation>& basis, int length_bound,
                                 const Budget* budget = nullptr);

/// Gridding counts of every coil of each given length.
struct GriddingCountRow {
  int length = 0;
  int start_cell = 1;
  Chirality chirality = Chirality::A;
  Permutation coil;
  std::uint64_t griddings = 0;
};

struct GriddingCountReport {
  std::vector<GriddingCountRow> rows;
};

GriddingCountReport unique_gridding_probe(const GriddingMatrix& matrix,
                                          const std::vector<int>& lengths,
                                          const Budget* budget = nullptr);

}  // namespace gridclass
