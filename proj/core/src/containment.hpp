#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gridclass/permutation.hpp"

namespace gridclass::detail {

// Backtracking containment engine shared by the plain, labelled and gridded
// variants. Pattern points are matched left to right; the host value chosen
// for pattern index j must lie strictly between the values already matched to
// the pattern's value-neighbours among indices < j (interval pruning).
struct ContainmentSearch {
  const Permutation& pattern;
  const Permutation& host;
  // extra per-point admissibility (labels, cells); 1-based indices
  std::function<bool(int pat_idx, int host_idx)> accept;

  std::vector<int> pred, succ;  // value-neighbour pattern index (0 = none)
  std::vector<int> match;       // host position per pattern index

  explicit ContainmentSearch(const Permutation& p, const Permutation& h,
                             std::function<bool(int, int)> acc = {})
      : pattern(p), host(h), accept(std::move(acc)) {
    const int k = pattern.size();
    pred.assign(static_cast<size_t>(k) + 1, 0);
    succ.assign(static_cast<size_t>(k) + 1, 0);
    match.assign(static_cast<size_t>(k) + 1, 0);
    for (int j = 1; j <= k; ++j) {
      for (int t = 1; t < j; ++t) {
        if (pattern.at(t) < pattern.at(j)) {
          if (!pred[j] || pattern.at(t) > pattern.at(pred[j])) pred[j] = t;
        } else {
          if (!succ[j] || pattern.at(t) < pattern.at(succ[j])) succ[j] = t;
        }
      }
    }
  }

  // first = stop at the first embedding (lexicographically least, since host
  // positions are scanned in increasing order); otherwise count all
  std::uint64_t run(bool first) {
    count = 0;
    found = false;
    stop_early = first;
    extend(1, 0);
    return count;
  }

  std::optional<Embedding> first() {
    if (run(true) == 0) return std::nullopt;
    return Embedding(match.begin() + 1, match.end());
  }

  std::uint64_t count = 0;
  bool stop_early = false;
  bool found = false;

private:
  void extend(int j, int last_pos) {
    const int k = pattern.size();
    if (j > k) {
      ++count;
      found = true;
      return;
    }
    const int lo = pred[j] ? host.at(match[static_cast<size_t>(pred[j])]) : 0;
    const int hi = succ[j] ? host.at(match[static_cast<size_t>(succ[j])]) : host.size() + 1;
    for (int i = last_pos + 1; i + (k - j) <= host.size(); ++i) {
      const int v = host.at(i);
      if (v <= lo || v >= hi) continue;
      if (accept && !accept(j, i)) continue;
      match[static_cast<size_t>(j)] = i;
      extend(j + 1, i);
      if (stop_early && found) return;
    }
  }
};

}  // namespace gridclass::detail
