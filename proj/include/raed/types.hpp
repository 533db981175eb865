#pragma once

#include <limits>
#include <stdexcept>

namespace raed {

// Requirement value for a (user, bs, channel) pair that can never be served:
// either the rate is zero or the slot count does not fit in the horizon.
inline constexpr int kUnservable = std::numeric_limits<int>::max();

inline bool servable(int nu) { return nu != kUnservable; }

// Thrown when an exact solve exceeds its node budget. Callers must treat
// this as "no answer", never as a best-effort result.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace raed
