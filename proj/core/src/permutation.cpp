#include "gridclass/permutation.hpp"

#include <algorithm>
#include <sstream>

#include "containment.hpp"

namespace gridclass {

Permutation::Permutation(std::vector<int> values) : vals_(std::move(values)) {
  const int n = size();
  std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
  for (int v : vals_) {
    if (v < 1 || v > n || seen[static_cast<size_t>(v)])
      throw error("not a permutation of {1.." + std::to_string(n) + "}");
    seen[static_cast<size_t>(v)] = true;
  }
}

Permutation Permutation::parse(std::string_view text) {
  std::string buf(text);
  for (char& c : buf)
    if (c == ',') c = ' ';
  std::istringstream in(buf);
  std::vector<int> vals;
  int v = 0;
  while (in >> v) vals.push_back(v);
  if (!in.eof()) throw error("bad permutation literal: " + std::string(text));
  return Permutation(std::move(vals));
}

Permutation Permutation::pattern_of(const std::vector<int>& word) {
  std::vector<int> sorted(word);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw error("pattern_of: repeated entries");
  std::vector<int> ranked(word.size());
  for (size_t i = 0; i < word.size(); ++i) {
    ranked[i] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), word[i]) - sorted.begin() + 1);
  }
  return Permutation(std::move(ranked));
}

int Permutation::at(int pos) const {
  if (pos < 1 || pos > size()) throw error("position out of range");
  return vals_[static_cast<size_t>(pos) - 1];
}

int Permutation::position_of(int value) const {
  for (int i = 1; i <= size(); ++i)
    if (at(i) == value) return i;
  throw error("value not present");
}

Permutation Permutation::subsequence_pattern(std::vector<int> positions) const {
  std::sort(positions.begin(), positions.end());
  std::vector<int> word;
  word.reserve(positions.size());
  for (int p : positions) word.push_back(at(p));
  return pattern_of(word);
}

std::string Permutation::str() const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(vals_[static_cast<size_t>(i)]);
  }
  return out;
}

std::optional<Embedding> contains(const Permutation& pattern, const Permutation& host) {
  detail::ContainmentSearch s(pattern, host);
  return s.first();
}

std::uint64_t count_embeddings(const Permutation& pattern, const Permutation& host) {
  detail::ContainmentSearch s(pattern, host);
  return s.run(false);
}

Permutation delete_point(const Permutation& perm, int index) {
  if (index < 1 || index > perm.size()) throw error("delete_point: index out of range");
  std::vector<int> word;
  word.reserve(static_cast<size_t>(perm.size()));
  for (int i = 1; i <= perm.size(); ++i)
    if (i != index) word.push_back(perm.at(i));
  return Permutation::pattern_of(word);
}

LabelledPermutation::LabelledPermutation(Permutation p, std::vector<int> l, int alpha)
    : perm(std::move(p)), labels(std::move(l)), alphabet(alpha) {
  if (static_cast<int>(labels.size()) != perm.size())
    throw error("labelled permutation: one label per index required");
  if (alphabet < 1) throw error("labelled permutation: empty alphabet");
  for (int t : labels)
    if (t < 0 || t >= alphabet) throw error("labelled permutation: token outside alphabet");
}

std::optional<Embedding> labelled_contains(const LabelledPermutation& pattern,
                                           const LabelledPermutation& host) {
  if (pattern.alphabet != host.alphabet)
    throw error("labelled_contains: mismatched alphabets");
  detail::ContainmentSearch s(pattern.perm, host.perm, [&](int j, int i) {
    return pattern.labels[static_cast<size_t>(j) - 1] ==
           host.labels[static_cast<size_t>(i) - 1];
  });
  return s.first();
}

}  // namespace gridclass
