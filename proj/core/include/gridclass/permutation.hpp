#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gridclass {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A permutation of {1..n} in one-line notation. Length 0 is allowed.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> values);

  /// Parses whitespace- or comma-separated one-line notation ("3 5 1 6 4 8 2 7").
  static Permutation parse(std::string_view text);
  /// Ranks an arbitrary sequence of distinct integers into a permutation.
  static Permutation pattern_of(const std::vector<int>& word);

  int size() const { return static_cast<int>(vals_.size()); }
  bool empty() const { return vals_.empty(); }
  /// Value at a 1-based position.
  int at(int pos) const;
  const std::vector<int>& values() const { return vals_; }
  /// 1-based position of a value.
  int position_of(int value) const;

  /// Pattern of the subsequence at the given 1-based positions (any order; sorted internally).
  Permutation subsequence_pattern(std::vector<int> positions) const;

  std::string str() const;
  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<int> vals_;
};

/// Strictly increasing 1-based host positions, one per pattern point.
using Embedding = std::vector<int>;

/// Finds the lexicographically least embedding of pattern in host, if any.
std::optional<Embedding> contains(const Permutation& pattern, const Permutation& host);

/// Exact number of distinct embeddings of pattern in host.
std::uint64_t count_embeddings(const Permutation& pattern, const Permutation& host);

/// Erases the point at a 1-based index and ranks the remainder.
Permutation delete_point(const Permutation& perm, int index);

/// A permutation with one label token per index. Tokens live in {0..alphabet-1}
/// and are compared by equality (the label set is an antichain).
struct LabelledPermutation {
  Permutation perm;
  std::vector<int> labels;
  int alphabet = 1;

  LabelledPermutation() = default;
  LabelledPermutation(Permutation p, std::vector<int> l, int alpha);
};

/// Labelled containment: an embedding of the underlying permutations whose
/// label tokens agree pointwise. Throws on mismatched alphabets.
std::optional<Embedding> labelled_contains(const LabelledPermutation& pattern,
                                           const LabelledPermutation& host);

}  // namespace gridclass
