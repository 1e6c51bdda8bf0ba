#include <deque>
#include <random>

#include <gtest/gtest.h>

#include "ehsim/counters.hpp"
#include "ehsim/energy.hpp"
#include "ehsim/task_buffer.hpp"

using namespace ehsim;

namespace {
EnergyAmount mu(EnergyAmount::rep m) { return EnergyAmount::milli(m); }
}  // namespace

TEST(EnergyAmount, TableValuesAreExact) {
  EXPECT_EQ(parse_energy("0.2").milli_units(), 200);
  EXPECT_EQ(parse_energy("0.3").milli_units(), 300);
  EXPECT_EQ(parse_energy(".5").milli_units(), 500);
  EXPECT_EQ(parse_energy("2").milli_units(), 2000);
  EXPECT_EQ(parse_energy("5").milli_units(), 5000);
  EXPECT_EQ(parse_energy("10.000").milli_units(), 10000);
  EXPECT_EQ(parse_energy("0.0010").milli_units(), 1);
}

TEST(EnergyAmount, RejectsInexactAndMalformed) {
  EXPECT_THROW(parse_energy("0.0005"), InexactEnergy);
  EXPECT_THROW(parse_energy("-1"), std::invalid_argument);
  EXPECT_THROW(parse_energy("1.2.3"), std::invalid_argument);
  EXPECT_THROW(parse_energy("."), std::invalid_argument);
  EXPECT_THROW(parse_energy(""), std::invalid_argument);
  EXPECT_THROW(EnergyAmount::milli(-1), std::invalid_argument);
}

TEST(EnergyAmount, FormatsThreeDecimals) {
  EXPECT_EQ(format_energy(mu(4500)), "4.500");
  EXPECT_EQ(format_energy(mu(0)), "0.000");
  EXPECT_EQ(format_energy(mu(10200)), "10.200");
}

TEST(Store, Deposit) {
  EXPECT_EQ(store_deposit(mu(4000), mu(2000), mu(5000)), mu(5000));
  EXPECT_EQ(store_deposit(mu(0), mu(1000), mu(10000)), mu(1000));
  EXPECT_EQ(store_deposit(mu(5000), mu(0), mu(5000)), mu(5000));
}

TEST(Store, Withdraw) {
  EXPECT_EQ(store_withdraw(mu(5000), mu(2000)), mu(3000));
  EXPECT_EQ(store_withdraw(mu(1000), mu(2000)), std::nullopt);
  EXPECT_EQ(store_withdraw(mu(2000), mu(2000)), mu(0));
}

TEST(Store, LevelStaysWithinBoundsUnderRandomOps) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cap = mu(static_cast<EnergyAmount::rep>(rng() % 20000));
    EnergyAmount level;
    for (int i = 0; i < 500; ++i) {
      const auto amount = mu(static_cast<EnergyAmount::rep>(rng() % 4000));
      if (rng() % 2) {
        level = store_deposit(level, amount, cap);
      } else if (auto next = store_withdraw(level, amount)) {
        EXPECT_EQ(next->milli_units(), level.milli_units() - amount.milli_units());
        level = *next;
      }
      ASSERT_GE(level.milli_units(), 0);
      ASSERT_LE(level, cap);
    }
  }
}

TEST(TaskBuffer, OfferRespectsCapacity) {
  TaskBuffer b(2);
  EXPECT_EQ(buffer_offer(b, 1), OfferOutcome::Accepted);
  EXPECT_EQ(b.occupancy(), 1);
  EXPECT_EQ(buffer_offer(b, 2), OfferOutcome::Accepted);
  EXPECT_EQ(buffer_offer(b, 3), OfferOutcome::Dropped);
  EXPECT_EQ(b.occupancy(), 2);

  TaskBuffer one(1);
  EXPECT_EQ(buffer_offer(one, 1), OfferOutcome::Accepted);
  EXPECT_EQ(buffer_offer(one, 2), OfferOutcome::Dropped);
}

TEST(TaskBuffer, TakeIsFifo) {
  TaskBuffer b(4);
  b.offer(3);
  b.offer(7);
  EXPECT_EQ(buffer_take(b), Task{3});
  EXPECT_EQ(b.occupancy(), 1);
  EXPECT_EQ(buffer_take(b), Task{7});
  EXPECT_EQ(buffer_take(b), std::nullopt);
  EXPECT_TRUE(b.empty());

  TaskBuffer single(1);
  single.offer(1);
  EXPECT_EQ(buffer_take(single), Task{1});
  EXPECT_TRUE(single.empty());
}

TEST(TaskBuffer, MatchesReferenceQueueUnderRandomInterleavings) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto cap = static_cast<std::int64_t>(1 + rng() % 10);
    TaskBuffer b(cap);
    std::deque<std::int64_t> ref;
    for (std::int64_t slot = 1; slot <= 1000; ++slot) {
      if (rng() % 3 != 0) {
        const auto out = b.offer(slot);
        if (static_cast<std::int64_t>(ref.size()) < cap) {
          ASSERT_EQ(out, OfferOutcome::Accepted);
          ref.push_back(slot);
        } else {
          ASSERT_EQ(out, OfferOutcome::Dropped);
        }
      } else {
        const auto t = b.take();
        if (ref.empty()) {
          ASSERT_FALSE(t.has_value());
        } else {
          ASSERT_EQ(t->arrival_slot, ref.front());
          ref.pop_front();
        }
      }
      ASSERT_LE(b.occupancy(), cap);
      ASSERT_EQ(b.occupancy(), static_cast<std::int64_t>(ref.size()));
    }
  }
}

TEST(TaskBuffer, RejectsZeroCapacity) { EXPECT_THROW(TaskBuffer(0), std::invalid_argument); }

TEST(CompletionRate, Basic) {
  Counters c;
  c.executed = 50;
  c.arrived = 100;
  EXPECT_DOUBLE_EQ(completion_rate(c), 0.5);
  EXPECT_DOUBLE_EQ(completion_rate(Counters{}), 1.0);
  EXPECT_TRUE(is_vacuous(Counters{}));
  Counters none;
  none.arrived = 17;
  EXPECT_DOUBLE_EQ(completion_rate(none), 0.0);
}

TEST(CompletionRate, ScaleInvariant) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    Counters c;
    c.arrived = static_cast<std::int64_t>(1 + rng() % 100000);
    c.executed = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(c.arrived + 1));
    const auto k = static_cast<std::int64_t>(1 + rng() % 1000);
    Counters scaled = c;
    scaled.arrived *= k;
    scaled.executed *= k;
    ASSERT_DOUBLE_EQ(completion_rate(c), completion_rate(scaled));
  }
}
