#include <random>

#include <gtest/gtest.h>

#include "ehsim/policy.hpp"

using namespace ehsim;

namespace {
EnergyAmount mu(EnergyAmount::rep m) { return EnergyAmount::milli(m); }
const EnergyAmount kTask = EnergyAmount::units(2);
}  // namespace

TEST(EbDecide, Periodicity) {
  EXPECT_EQ(eb_decide({6}, 6, true), SlotDecision::AttemptExecution);
  EXPECT_EQ(eb_decide({6}, 7, true), SlotDecision::Idle);
  EXPECT_EQ(eb_decide({3}, 9, false), SlotDecision::Idle);
  EXPECT_EQ(eb_decide({1}, 1, true), SlotDecision::AttemptExecution);
  EXPECT_THROW(eb_decide({3}, 0, true), std::invalid_argument);
}

TEST(EbDecide, NeverMeasures) {
  for (std::int64_t f = 1; f <= 30; ++f) {
    for (std::int64_t slot = 1; slot <= 100; ++slot) {
      const auto d = eb_decide({f}, slot, slot % 2 == 0);
      ASSERT_NE(d, SlotDecision::MeasureThenMaybeExecute);
      if (d == SlotDecision::AttemptExecution) ASSERT_EQ(slot % f, 0);
    }
  }
}

TEST(EaOnMeasure, SnapshotsLevel) {
  EaPolicyState s{3, mu(500), mu(1234), 2};
  s = ea_on_measure(s, mu(4500));
  EXPECT_EQ(s.estimated, mu(4500));
  EXPECT_EQ(s.slots_since_measure, 0);
  EXPECT_EQ(ea_on_measure(s, mu(0)).estimated, mu(0));
}

TEST(EaOnMeasure, MeasurementSlotsForQ3) {
  const EaPolicyState s{3, mu(500), {}, 0};
  std::vector<std::int64_t> slots;
  for (std::int64_t t = 1; t <= 10; ++t) {
    if (ea_is_measurement_slot(s, t)) slots.push_back(t);
  }
  EXPECT_EQ(slots, (std::vector<std::int64_t>{3, 6, 9}));
}

TEST(EaDecide, ConservativeGate) {
  EaPolicyState s{3, mu(500), mu(2000), 0};
  EXPECT_EQ(ea_decide(s, true, kTask), SlotDecision::AttemptExecution);
  s.estimated = mu(1999);
  EXPECT_EQ(ea_decide(s, true, kTask), SlotDecision::Idle);
  s.estimated = mu(5000);
  EXPECT_EQ(ea_decide(s, false, kTask), SlotDecision::Idle);
}

TEST(EaAfterAttempt, Decrements) {
  EaPolicyState s{3, mu(500), mu(5000), 0};
  EXPECT_EQ(ea_after_attempt(s, kTask).estimated, mu(3000));
  s.estimated = mu(2000);
  EXPECT_EQ(ea_after_attempt(s, kTask).estimated, mu(0));

  s = ea_on_measure(s, mu(5000));
  s = ea_after_attempt(ea_after_attempt(s, kTask), kTask);
  EXPECT_EQ(s.estimated, mu(1000));
  EXPECT_EQ(s.estimated, ea_estimated_energy(mu(5000), 2, kTask));
}

TEST(EaClosedForms, Estimate) {
  EXPECT_EQ(ea_estimated_energy(mu(5000), 2, kTask), mu(1000));
  EXPECT_EQ(ea_estimated_energy(mu(3000), 5, kTask), mu(0));
  EXPECT_EQ(ea_estimated_energy(mu(4200), 0, kTask), mu(4200));
}

TEST(EaClosedForms, ActualUncapped) {
  EXPECT_EQ(ea_actual_energy_uncapped(mu(5000), 1, kTask, mu(1000)), mu(4000));
  EXPECT_EQ(ea_actual_energy_uncapped(mu(0), 0, kTask, mu(3000)), mu(3000));
}

TEST(EaClosedForms, IncrementalAgreesWithClosedForm) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto task = mu(static_cast<EnergyAmount::rep>(1 + rng() % 3000));
    const auto measured = mu(static_cast<EnergyAmount::rep>(rng() % 12000));
    EaPolicyState s = ea_on_measure({4, mu(300), {}, 0}, measured);
    for (std::int64_t k = 1; k <= 8; ++k) {
      s = ea_after_attempt(s, task);
      ASSERT_EQ(s.estimated, ea_estimated_energy(measured, k, task));
    }
  }
}
