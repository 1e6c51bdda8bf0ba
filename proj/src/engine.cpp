#include "ehsim/engine.hpp"

#include <ostream>

namespace ehsim {

std::string_view to_string(SlotDecision d) {
  switch (d) {
    case SlotDecision::Idle:
      return "idle";
    case SlotDecision::AttemptExecution:
      return "attempt";
    case SlotDecision::MeasureThenMaybeExecute:
      return "measure";
  }
  return "?";
}

DeviceState DeviceState::cold_start(const SimConfig& config) {
  PolicyState policy;
  if (config.policy_kind == PolicyKind::EnergyBlind) {
    policy = EbPolicyState{config.period};
  } else {
    policy = EaPolicyState{config.period, config.e_meas, EnergyAmount::zero(), 0};
  }
  return DeviceState{1, EnergyAmount::zero(), TaskBuffer(config.buffer_cap), policy, Counters{}};
}

SlotTraceRecord step(DeviceState& state, const SimConfig& config, RandomStream& task_stream,
                     RandomStream& energy_stream) {
  SlotTraceRecord rec;
  rec.slot = state.slot;
  rec.energy_start = state.actual_energy;
  Counters& c = state.counters;

  rec.task_arrived = sample_task_arrival(task_stream, config.p);
  if (rec.task_arrived) {
    ++c.arrived;
    if (state.buffer.offer(state.slot) == OfferOutcome::Dropped) {
      rec.task_dropped = true;
      ++c.dropped;
    }
  }

  rec.packets = sample_energy_packets(energy_stream, config.lambda);
  state.actual_energy =
      store_deposit(state.actual_energy, rec.packets * config.packet_energy, config.e_cap);
  rec.energy_after_harvest = state.actual_energy;

  bool attempt = false;
  if (auto* ea = std::get_if<EaPolicyState>(&state.policy)) {
    if (ea_is_measurement_slot(*ea, state.slot)) {
      rec.measured = true;
      rec.measure_cost = std::min(state.actual_energy, ea->e_meas);
      state.actual_energy = saturating_sub(state.actual_energy, ea->e_meas);
      ++c.measurements;
      *ea = ea_on_measure(*ea, state.actual_energy);
    }
    attempt = ea_decide(*ea, !state.buffer.empty(), config.e_task) ==
              SlotDecision::AttemptExecution;
    if (attempt) *ea = ea_after_attempt(*ea, config.e_task);
  } else {
    const auto& eb = std::get<EbPolicyState>(state.policy);
    attempt = eb_decide(eb, state.slot, !state.buffer.empty()) == SlotDecision::AttemptExecution;
  }

  if (attempt) {
    rec.decision = SlotDecision::AttemptExecution;
    ++c.attempts;
    if (auto remaining = store_withdraw(state.actual_energy, config.e_task)) {
      state.actual_energy = *remaining;
      state.buffer.take();
      ++c.executed;
      rec.executed = true;
    } else {
      // A failed attempt burns whatever was stored.
      rec.wasted = state.actual_energy;
      state.actual_energy = EnergyAmount::zero();
      ++c.failed_attempts;
      rec.attempt_failed = true;
    }
  } else {
    rec.decision = rec.measured ? SlotDecision::MeasureThenMaybeExecute : SlotDecision::Idle;
  }

  if (auto* ea = std::get_if<EaPolicyState>(&state.policy)) {
    rec.estimated_after = ea->estimated;
    ++ea->slots_since_measure;
  }
  rec.energy_after = state.actual_energy;
  ++state.slot;
  return rec;
}

Simulator::Simulator(SimConfig config)
    : config_(std::move(config)),
      state_(DeviceState::cold_start(config_)),
      task_stream_(derive_stream(config_.seed, StreamLabel::task_arrivals())),
      energy_stream_(derive_stream(config_.seed, StreamLabel::energy_arrivals())) {}

RunResult run(const SimConfig& config, bool record_trace) {
  config.validate();
  Simulator sim(config);
  RunResult result;
  if (record_trace) {
    result.trace.emplace();
    result.trace->reserve(static_cast<std::size_t>(config.t_max));
  }
  while (!sim.done()) {
    SlotTraceRecord rec = sim.step();
    if (record_trace) result.trace->push_back(rec);
  }
  result.counters = sim.state().counters;
  result.completion_rate = completion_rate(result.counters);
  result.vacuous = is_vacuous(result.counters);
  result.final_occupancy = sim.state().buffer.occupancy();
  result.final_energy = sim.state().actual_energy;
  return result;
}

void write_trace_csv(std::ostream& out, const std::vector<SlotTraceRecord>& trace) {
  out << kTraceCsvHeader << '\n';
  for (const auto& r : trace) {
    out << r.slot << ',' << int(r.task_arrived) << ',' << int(r.task_dropped) << ','
        << r.packets << ',' << format_energy(r.energy_after_harvest) << ',' << int(r.measured)
        << ',' << (r.estimated_after ? format_energy(*r.estimated_after) : std::string()) << ','
        << to_string(r.decision) << ',' << int(r.executed) << ',' << int(r.attempt_failed) << ','
        << format_energy(r.energy_after) << '\n';
  }
}

}  // namespace ehsim
