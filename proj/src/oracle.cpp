#include "ehsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>

namespace ehsim {

NoConvergence::NoConvergence(std::int64_t iterations, double residual)
    : std::runtime_error("power iteration did not converge after " + std::to_string(iterations) +
                         " iterations (residual " + std::to_string(residual) + ")"),
      iterations_(iterations),
      residual_(residual) {}

std::size_t ChainModel::state_count() const {
  std::size_t n = 0;
  for (const auto& block : states) n += block.size();
  return n;
}

ChainModel ChainModel::from_kernel(SparseKernel kernel, Eigen::Index start_index) {
  if (kernel.rows() != kernel.cols()) throw std::invalid_argument("kernel must be square");
  ChainModel m;
  m.period = 1;
  m.states.assign(1, std::vector<ChainState>(static_cast<std::size_t>(kernel.rows())));
  m.execution_reward.assign(1, Eigen::VectorXd::Zero(kernel.rows()));
  m.kernels.push_back(std::move(kernel));
  m.start_index = start_index;
  return m;
}

namespace {

using Level = std::int64_t;

// Config energies expressed as lattice multiples.
struct Lattice {
  EnergyAmount::rep step = 1;
  Level task = 0;
  Level meas = 0;
  Level packet = 0;
  Level cap = 0;
};

Lattice make_lattice(const SimConfig& c) {
  const bool aware = c.policy_kind == PolicyKind::EnergyAware;
  EnergyAmount::rep g = std::gcd(c.e_task.milli_units(), c.packet_energy.milli_units());
  if (aware) g = std::gcd(g, c.e_meas.milli_units());
  if (g == 0) g = c.e_cap.is_zero() ? EnergyAmount::kMilliPerUnit : c.e_cap.milli_units();
  if (c.e_cap.milli_units() % g != 0) {
    throw NonLatticeEnergy("e_cap " + format_energy(c.e_cap) +
                           " is not a multiple of the energy lattice step " +
                           format_energy(EnergyAmount::milli(g)));
  }
  Lattice l;
  l.step = g;
  l.task = c.e_task.milli_units() / g;
  l.meas = aware ? c.e_meas.milli_units() / g : 0;
  l.packet = c.packet_energy.milli_units() / g;
  l.cap = c.e_cap.milli_units() / g;
  return l;
}

struct LatticeState {
  Level actual = 0;
  Level estimated = 0;
  std::int64_t occ = 0;
};

struct Outcome {
  double prob;
  LatticeState next;
  bool executed;
};

class SlotDynamics {
 public:
  SlotDynamics(const SimConfig& c, const Lattice& l)
      : c_(c), l_(l), aware_(c.policy_kind == PolicyKind::EnergyAware) {
    // Poisson pmf up to the largest count that can matter (fills an empty store).
    const Level kmax = l_.packet == 0 ? 0 : (l_.cap + l_.packet - 1) / l_.packet;
    pmf_.resize(static_cast<std::size_t>(kmax) + 1);
    double term = std::exp(-c_.lambda);
    for (Level k = 0; k <= kmax; ++k) {
      pmf_[static_cast<std::size_t>(k)] = term;
      term *= c_.lambda / static_cast<double>(k + 1);
    }
  }

  void outcomes(const LatticeState& s, std::int64_t phase, std::vector<Outcome>& out) const {
    out.clear();
    const double arrival_probs[2] = {c_.p, 1.0 - c_.p};
    for (int a = 0; a < 2; ++a) {
      if (arrival_probs[a] <= 0.0) continue;
      const std::int64_t occ = a == 0 ? std::min(s.occ + 1, c_.buffer_cap) : s.occ;
      if (l_.packet == 0 || s.actual >= l_.cap) {
        out.push_back(after_harvest(s, occ, s.actual, phase, arrival_probs[a]));
        continue;
      }
      // Counts at or beyond `saturate` all fill the store; pool their mass.
      const Level saturate = (l_.cap - s.actual + l_.packet - 1) / l_.packet;
      double below = 0.0;
      for (Level k = 0; k < saturate; ++k) {
        const double pk = pmf_[static_cast<std::size_t>(k)];
        below += pk;
        if (pk > 0.0) {
          out.push_back(after_harvest(s, occ, s.actual + k * l_.packet, phase,
                                      arrival_probs[a] * pk));
        }
      }
      const double tail = std::max(0.0, 1.0 - below);
      if (tail > 0.0) out.push_back(after_harvest(s, occ, l_.cap, phase, arrival_probs[a] * tail));
    }
  }

 private:
  Outcome after_harvest(const LatticeState& s, std::int64_t occ, Level actual,
                        std::int64_t phase, double prob) const {
    Level estimated = s.estimated;
    bool attempt = false;
    if (aware_) {
      if (phase == 0) {
        actual = std::max<Level>(actual - l_.meas, 0);
        estimated = actual;
      }
      attempt = occ > 0 && estimated >= l_.task;
      if (attempt) estimated = std::max<Level>(estimated - l_.task, 0);
    } else {
      attempt = occ > 0 && phase == 0;
    }
    bool executed = false;
    if (attempt) {
      if (actual >= l_.task) {
        actual -= l_.task;
        --occ;
        executed = true;
      } else {
        actual = 0;
      }
    }
    return Outcome{prob, LatticeState{actual, estimated, occ}, executed};
  }

  const SimConfig& c_;
  const Lattice& l_;
  bool aware_;
  std::vector<double> pmf_;
};

}  // namespace

ChainModel build_chain(const SimConfig& config, const ChainBuildOptions& options) {
  config.validate();
  const Lattice lat = make_lattice(config);
  const bool aware = config.policy_kind == PolicyKind::EnergyAware;
  const std::int64_t period = config.period;
  const auto levels = static_cast<std::uint64_t>(lat.cap + 1);

  auto key_of = [&](const LatticeState& s) {
    return (static_cast<std::uint64_t>(s.occ) * levels + static_cast<std::uint64_t>(s.estimated)) *
               levels +
           static_cast<std::uint64_t>(s.actual);
  };

  ChainModel model;
  model.period = period;
  model.arrival_prob = config.p;
  model.states.resize(static_cast<std::size_t>(period));
  model.kernels.resize(static_cast<std::size_t>(period));
  model.execution_reward.resize(static_cast<std::size_t>(period));

  std::vector<std::unordered_map<std::uint64_t, Eigen::Index>> index(
      static_cast<std::size_t>(period));
  std::vector<std::vector<LatticeState>> lattice_states(static_cast<std::size_t>(period));
  std::vector<std::vector<Eigen::Triplet<double>>> triplets(static_cast<std::size_t>(period));
  std::vector<std::vector<double>> rewards(static_cast<std::size_t>(period));
  std::deque<std::pair<std::int64_t, Eigen::Index>> frontier;
  std::size_t total = 0;

  auto intern = [&](const LatticeState& s, std::int64_t phase) -> Eigen::Index {
    if (aware && s.estimated > s.actual) {
      throw std::logic_error("energy-aware chain reached estimated > actual");
    }
    const auto ph = static_cast<std::size_t>(phase);
    auto [it, inserted] =
        index[ph].try_emplace(key_of(s), static_cast<Eigen::Index>(lattice_states[ph].size()));
    if (inserted) {
      if (++total > options.max_states) {
        throw StateSpaceTooLarge("reachable state space exceeds " +
                                 std::to_string(options.max_states) + " states");
      }
      lattice_states[ph].push_back(s);
      frontier.emplace_back(phase, it->second);
    }
    return it->second;
  };

  model.start_phase = 1 % period;
  model.start_index = intern(LatticeState{}, model.start_phase);

  SlotDynamics dynamics(config, lat);
  std::vector<Outcome> outs;
  while (!frontier.empty()) {
    const auto [phase, idx] = frontier.front();
    frontier.pop_front();
    const auto ph = static_cast<std::size_t>(phase);
    const LatticeState s = lattice_states[ph][static_cast<std::size_t>(idx)];
    const std::int64_t next_phase = (phase + 1) % period;

    dynamics.outcomes(s, phase, outs);
    double reward = 0.0;
    for (const auto& o : outs) {
      const Eigen::Index col = intern(o.next, next_phase);
      triplets[ph].emplace_back(idx, col, o.prob);
      if (o.executed) reward += o.prob;
    }
    if (rewards[ph].size() <= static_cast<std::size_t>(idx)) {
      rewards[ph].resize(static_cast<std::size_t>(idx) + 1, 0.0);
    }
    rewards[ph][static_cast<std::size_t>(idx)] = reward;
  }

  for (std::int64_t ph = 0; ph < period; ++ph) {
    const auto k = static_cast<std::size_t>(ph);
    const auto next = static_cast<std::size_t>((ph + 1) % period);
    const auto rows = static_cast<Eigen::Index>(lattice_states[k].size());
    const auto cols = static_cast<Eigen::Index>(lattice_states[next].size());
    model.kernels[k].resize(rows, cols);
    model.kernels[k].setFromTriplets(triplets[k].begin(), triplets[k].end());
    model.kernels[k].makeCompressed();

    rewards[k].resize(lattice_states[k].size(), 0.0);
    model.execution_reward[k] = Eigen::Map<Eigen::VectorXd>(rewards[k].data(), rows);

    auto& block = model.states[k];
    block.reserve(lattice_states[k].size());
    for (const auto& s : lattice_states[k]) {
      block.push_back(ChainState{EnergyAmount::milli(s.actual * lat.step),
                                 EnergyAmount::milli(s.estimated * lat.step), s.occ, ph});
    }
  }
  return model;
}

StationaryResult stationary(const ChainModel& model, const StationaryOptions& options) {
  const std::int64_t period = model.period;
  const auto start = static_cast<std::size_t>(model.start_phase);
  const Eigen::Index n0 = model.kernels[start].rows();

  Eigen::VectorXd v = Eigen::VectorXd::Zero(n0);
  v(model.start_index) = 1.0;

  // One super-step advances `period` slots and returns to the start block.
  // Half-lazy averaging keeps the iteration aperiodic without moving the
  // fixed point.
  auto super_step = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd w = x;
    for (std::int64_t j = 0; j < period; ++j) {
      const auto k = static_cast<std::size_t>((model.start_phase + j) % period);
      w = model.kernels[k].transpose() * w;
    }
    return w;
  };

  StationaryResult result;
  double residual = 0.0;
  std::int64_t it = 0;
  for (; it < options.max_iterations; ++it) {
    Eigen::VectorXd w = super_step(v);
    residual = (w - v).cwiseAbs().maxCoeff();
    v = 0.5 * (v + w);
    if (residual <= options.tolerance) {
      ++it;
      break;
    }
  }
  if (residual > options.tolerance) throw NoConvergence(it, residual);
  v /= v.sum();

  result.blocks.resize(static_cast<std::size_t>(period));
  result.blocks[start] = v;
  for (std::int64_t j = 1; j < period; ++j) {
    const auto prev = static_cast<std::size_t>((model.start_phase + j - 1) % period);
    const auto k = static_cast<std::size_t>((model.start_phase + j) % period);
    result.blocks[k] = model.kernels[prev].transpose() * result.blocks[prev];
  }
  result.iterations = it;
  result.residual = residual;
  return result;
}

double expected_executions_per_slot(const ChainModel& model, const StationaryResult& pi) {
  double total = 0.0;
  for (std::size_t k = 0; k < pi.blocks.size(); ++k) {
    total += pi.blocks[k].dot(model.execution_reward[k]);
  }
  return total / static_cast<double>(model.period);
}

OracleResult oracle_completion_rate(const SimConfig& config, const ChainBuildOptions& build,
                                    const StationaryOptions& solve) {
  if (!(config.p > 0.0)) throw ValidationError("p", "oracle requires p > 0");
  const ChainModel model = build_chain(config, build);
  const StationaryResult pi = stationary(model, solve);
  OracleResult r;
  r.executions_per_slot = expected_executions_per_slot(model, pi);
  r.completion_rate = std::clamp(r.executions_per_slot / config.p, 0.0, 1.0);
  r.state_count = model.state_count();
  r.iterations = pi.iterations;
  r.residual = pi.residual;
  return r;
}

}  // namespace ehsim
