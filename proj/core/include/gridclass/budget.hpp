#pragma once

#include <chrono>
#include <optional>

#include "gridclass/permutation.hpp"

namespace gridclass {

struct budget_exceeded : error {
  budget_exceeded() : error("time budget exceeded") {}
};

/// Wall-clock budget for the exponential searches. check() throws once the
/// deadline has passed; call sites poll it every few thousand steps.
class Budget {
public:
  Budget() = default;
  explicit Budget(double seconds)
      : deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(seconds))) {}

  void check() const {
    if (deadline_ && std::chrono::steady_clock::now() > *deadline_) throw budget_exceeded();
  }

private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace gridclass
