#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "ehsim/config.hpp"
#include "ehsim/counters.hpp"
#include "ehsim/energy.hpp"
#include "ehsim/policy.hpp"
#include "ehsim/random.hpp"
#include "ehsim/task_buffer.hpp"

namespace ehsim {

using PolicyState = std::variant<EbPolicyState, EaPolicyState>;

/// Evolving state of the simulated device.
struct DeviceState {
  std::int64_t slot = 1;  ///< Next slot to be processed.
  EnergyAmount actual_energy;
  TaskBuffer buffer;
  PolicyState policy;
  Counters counters;

  /// Cold start: empty storage, empty buffer, slot 1.
  static DeviceState cold_start(const SimConfig& config);
};

/// Audit record of a single slot.
struct SlotTraceRecord {
  std::int64_t slot = 0;
  bool task_arrived = false;
  bool task_dropped = false;
  std::int64_t packets = 0;
  EnergyAmount energy_after_harvest;
  bool measured = false;
  std::optional<EnergyAmount> estimated_after;  ///< EA only.
  SlotDecision decision = SlotDecision::Idle;
  bool executed = false;
  bool attempt_failed = false;
  EnergyAmount energy_after;

  // Ledger terms, not part of the CSV schema.
  EnergyAmount energy_start;
  EnergyAmount measure_cost;  ///< Cost actually deducted (clamped at the level).
  EnergyAmount wasted;        ///< Level discarded by a failed attempt.
};

/// Advances `state` by one slot using the fixed phase order: task arrival,
/// buffer admission, harvest, (EA) measurement, decision, execution.
SlotTraceRecord step(DeviceState& state, const SimConfig& config, RandomStream& task_stream,
                     RandomStream& energy_stream);

/// Owns the state and both arrival streams for one run.
class Simulator {
 public:
  explicit Simulator(SimConfig config);

  SlotTraceRecord step() { return ehsim::step(state_, config_, task_stream_, energy_stream_); }
  bool done() const { return state_.slot > config_.t_max; }

  const DeviceState& state() const { return state_; }
  const SimConfig& config() const { return config_; }

 private:
  SimConfig config_;
  DeviceState state_;
  RandomStream task_stream_;
  RandomStream energy_stream_;
};

struct RunResult {
  Counters counters;
  double completion_rate = 1.0;
  bool vacuous = false;  ///< No task arrived; completion_rate is 1.0 by convention.
  std::int64_t final_occupancy = 0;
  EnergyAmount final_energy;
  std::optional<std::vector<SlotTraceRecord>> trace;
};

/// Validates `config` and simulates slots 1..t_max from cold start.
RunResult run(const SimConfig& config, bool record_trace = false);

/// Writes the trace as CSV (header row, then one row per slot).
void write_trace_csv(std::ostream& out, const std::vector<SlotTraceRecord>& trace);

inline constexpr const char* kTraceCsvHeader =
    "slot,task_arrived,task_dropped,packets,energy_after_harvest,measured,"
    "estimated_after,decision,executed,attempt_failed,energy_after";

}  // namespace ehsim
