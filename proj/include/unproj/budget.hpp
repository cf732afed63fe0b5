#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace unproj {

/// Raised when a computation exceeds its Budget.  Never a wrong answer.
class Timeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resource limits for Groebner computations: a wall-clock deadline shared by
/// all calls made under the budget, and a per-call cap on processed S-pairs.
struct Budget {
  using Clock = std::chrono::steady_clock;

  std::optional<Clock::time_point> deadline;
  std::optional<std::size_t> max_pairs;

  static Budget unlimited() { return {}; }

  static Budget seconds(double s) {
    Budget b;
    b.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(s));
    return b;
  }

  bool expired() const { return deadline && Clock::now() >= *deadline; }

  void check() const {
    if (expired()) throw Timeout("time budget exhausted");
  }

  void check_pairs(std::size_t processed) const {
    if (max_pairs && processed > *max_pairs)
      throw Timeout("S-pair budget of " + std::to_string(*max_pairs) + " exhausted");
  }
};

/// When set, derived ideal operations verify their containment
/// postconditions by membership tests and throw PostconditionError on failure.
inline std::atomic<bool>& postcondition_checks() {
  static std::atomic<bool> enabled{false};
  return enabled;
}

class PostconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace unproj
