#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "ehsim/energy.hpp"

namespace ehsim {

enum class SlotDecision { Idle, AttemptExecution, MeasureThenMaybeExecute };

std::string_view to_string(SlotDecision d);

/// Energy-blind scheduling: attempt every `period_f`-th slot, never measure.
struct EbPolicyState {
  std::int64_t period_f = 1;
  bool operator==(const EbPolicyState&) const = default;
};

/// Energy-aware scheduling: measure every `period_q` slots and gate execution
/// on a conservative estimate that ignores harvesting since the measurement.
struct EaPolicyState {
  std::int64_t period_q = 1;
  EnergyAmount e_meas;
  EnergyAmount estimated;
  std::int64_t slots_since_measure = 0;
  bool operator==(const EaPolicyState&) const = default;
};

constexpr SlotDecision eb_decide(const EbPolicyState& state, std::int64_t slot,
                                 bool buffer_nonempty) {
  if (slot < 1) throw std::invalid_argument("eb_decide: slot must be >= 1");
  return (slot % state.period_f == 0 && buffer_nonempty) ? SlotDecision::AttemptExecution
                                                         : SlotDecision::Idle;
}

constexpr bool ea_is_measurement_slot(const EaPolicyState& state, std::int64_t slot) {
  return slot % state.period_q == 0;
}

/// Snapshot the measured level (already net of the measurement cost).
constexpr EaPolicyState ea_on_measure(EaPolicyState state, EnergyAmount actual_after_cost) {
  state.estimated = actual_after_cost;
  state.slots_since_measure = 0;
  return state;
}

constexpr SlotDecision ea_decide(const EaPolicyState& state, bool buffer_nonempty,
                                 EnergyAmount e_task) {
  return (buffer_nonempty && state.estimated >= e_task) ? SlotDecision::AttemptExecution
                                                        : SlotDecision::Idle;
}

/// Charge one attempt against the estimate, whether or not it succeeded.
constexpr EaPolicyState ea_after_attempt(EaPolicyState state, EnergyAmount e_task) {
  state.estimated = saturating_sub(state.estimated, e_task);
  return state;
}

/// Closed form of the conservative estimate: max(measured - k * e_task, 0).
constexpr EnergyAmount ea_estimated_energy(EnergyAmount measured, std::int64_t executions_since,
                                           EnergyAmount e_task) {
  return saturating_sub(measured, executions_since * e_task);
}

/// Closed form of the actual level since the last measurement, ignoring the
/// storage cap. Only valid over windows where the cap never bound.
constexpr EnergyAmount ea_actual_energy_uncapped(EnergyAmount measured,
                                                 std::int64_t executions_since,
                                                 EnergyAmount e_task,
                                                 EnergyAmount harvested_since) {
  return saturating_sub(measured + harvested_since, executions_since * e_task);
}

}  // namespace ehsim
