#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ehsim/energy.hpp"

namespace ehsim {

enum class PolicyKind { EnergyBlind, EnergyAware };

std::string_view to_string(PolicyKind kind);

/// Thrown when a configuration violates a field constraint.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& constraint)
      : std::invalid_argument(field + ": " + constraint), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Every parameter of one simulation run.
struct SimConfig {
  double p = 0.35;          ///< Bernoulli task-arrival probability per slot.
  double lambda = 0.5;      ///< Mean energy packets per slot (Poisson).
  EnergyAmount packet_energy = EnergyAmount::units(1);
  EnergyAmount e_task = EnergyAmount::units(2);
  EnergyAmount e_meas = EnergyAmount::milli(300);
  EnergyAmount e_cap = EnergyAmount::units(5);
  std::int64_t buffer_cap = 2;
  std::int64_t period = 6;  ///< F for energy-blind, Q for energy-aware.
  PolicyKind policy_kind = PolicyKind::EnergyBlind;
  std::int64_t t_max = 100000;
  std::uint64_t seed = 1;
  static constexpr int slot_duration = 1;

  /// Throws ValidationError naming the first offending field.
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

}  // namespace ehsim
