#pragma once

#include <cstdint>

namespace ehsim {

/// Per-run event tallies.
struct Counters {
  std::int64_t arrived = 0;
  std::int64_t dropped = 0;
  std::int64_t executed = 0;
  std::int64_t attempts = 0;
  std::int64_t failed_attempts = 0;
  std::int64_t measurements = 0;

  bool operator==(const Counters&) const = default;
};

/// executed / arrived; 1.0 when nothing arrived (vacuous success).
inline double completion_rate(const Counters& c) {
  if (c.arrived == 0) return 1.0;
  return static_cast<double>(c.executed) / static_cast<double>(c.arrived);
}

inline bool is_vacuous(const Counters& c) { return c.arrived == 0; }

}  // namespace ehsim
