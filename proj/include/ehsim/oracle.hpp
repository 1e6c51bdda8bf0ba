#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ehsim/config.hpp"
#include "ehsim/energy.hpp"

namespace ehsim {

class StateSpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonLatticeEnergy : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(std::int64_t iterations, double residual);
  std::int64_t iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  std::int64_t iterations_;
  double residual_;
};

/// Device state observed at the start of a slot whose index is congruent to
/// `phase` modulo the policy period.
struct ChainState {
  EnergyAmount actual_energy;
  EnergyAmount estimated_energy;  ///< Always zero for energy-blind chains.
  std::int64_t buffer_occ = 0;
  std::int64_t phase = 0;
  bool operator==(const ChainState&) const = default;
};

using SparseKernel = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Phase-blocked Markov chain. Block `k` holds the states with phase `k`;
/// kernels[k] maps block k to block (k + 1) % period.
struct ChainModel {
  std::int64_t period = 1;
  std::vector<std::vector<ChainState>> states;
  std::vector<SparseKernel> kernels;
  /// Expected executions during one slot, per state.
  std::vector<Eigen::VectorXd> execution_reward;
  double arrival_prob = 0.0;
  std::int64_t start_phase = 0;
  Eigen::Index start_index = 0;

  std::size_t state_count() const;

  /// Wraps a single square row-stochastic kernel (period 1).
  static ChainModel from_kernel(SparseKernel kernel, Eigen::Index start_index = 0);
};

struct ChainBuildOptions {
  std::size_t max_states = 5'000'000;
};

/// Enumerates the states reachable from cold start and their one-slot
/// transitions. Energies are indexed on the lattice generated by e_task,
/// packet_energy and (EA) e_meas; e_cap must lie on that lattice.
ChainModel build_chain(const SimConfig& config, const ChainBuildOptions& options = {});

struct StationaryOptions {
  double tolerance = 1e-12;
  std::int64_t max_iterations = 1'000'000;
};

struct StationaryResult {
  /// Per-phase conditional distributions; each block sums to 1. The
  /// stationary mass of a state in block k is blocks[k](i) / period.
  std::vector<Eigen::VectorXd> blocks;
  std::int64_t iterations = 0;
  double residual = 0.0;
};

/// Power iteration on the period-aggregated chain, started from the model's
/// start state.
StationaryResult stationary(const ChainModel& model, const StationaryOptions& options = {});

struct OracleResult {
  double completion_rate = 0.0;
  double executions_per_slot = 0.0;
  std::size_t state_count = 0;
  std::int64_t iterations = 0;
  double residual = 0.0;
};

/// Long-run executed/arrived ratio of the chain. Requires p > 0.
OracleResult oracle_completion_rate(const SimConfig& config,
                                    const ChainBuildOptions& build = {},
                                    const StationaryOptions& solve = {});

/// Stationary expected executions per slot.
double expected_executions_per_slot(const ChainModel& model, const StationaryResult& pi);

}  // namespace ehsim
