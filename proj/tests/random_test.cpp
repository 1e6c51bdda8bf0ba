#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ehsim/random.hpp"

using namespace ehsim;

TEST(DeriveStream, Deterministic) {
  auto a = derive_stream(42, StreamLabel::task_arrivals());
  auto b = derive_stream(42, StreamLabel::task_arrivals());
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(DeriveStream, GoldenFirstOutputs) {
  EXPECT_EQ(derive_stream(42, StreamLabel::task_arrivals()).next(), 0xb5ac33bcedafcfbeULL);
  EXPECT_EQ(derive_stream(42, StreamLabel::energy_arrivals()).next(), 0xfc95ceb0c53e5573ULL);
  EXPECT_EQ(derive_stream(42, StreamLabel::derived(0)).next(), 0x5db9722986a5d583ULL);
  EXPECT_EQ(derive_stream(43, StreamLabel::derived(0)).next(), 0x61f46740972e5c72ULL);
}

TEST(DeriveStream, LabelsDiffer) {
  EXPECT_NE(derive_stream(42, StreamLabel::task_arrivals()).next(),
            derive_stream(42, StreamLabel::energy_arrivals()).next());
  EXPECT_NE(derive_stream(42, StreamLabel::derived(0)).next(),
            derive_stream(42, StreamLabel::derived(1)).next());
  EXPECT_NE(derive_stream(42, StreamLabel::derived(0)).next(),
            derive_stream(43, StreamLabel::derived(0)).next());
}

TEST(Uniform, InUnitInterval) {
  auto s = derive_stream(5, StreamLabel::derived(9));
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(TaskArrival, DegenerateProbabilities) {
  auto s = derive_stream(1, StreamLabel::task_arrivals());
  for (int i = 0; i < 10000; ++i) {
    ASSERT_FALSE(sample_task_arrival(s, 0.0));
    ASSERT_TRUE(sample_task_arrival(s, 1.0));
  }
}

TEST(TaskArrival, OneDrawPerSample) {
  auto s = derive_stream(1, StreamLabel::task_arrivals());
  auto t = s;
  sample_task_arrival(s, 0.3);
  t.next();
  EXPECT_EQ(s, t);
}

TEST(TaskArrival, EmpiricalMean) {
  auto s = derive_stream(2024, StreamLabel::task_arrivals());
  const int n = 1'000'000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += sample_task_arrival(s, 0.5);
  EXPECT_NEAR(static_cast<double>(hits) / n, 0.5, 0.002);
}

TEST(EnergyPackets, ZeroLambdaUsesNoDraws) {
  auto s = derive_stream(1, StreamLabel::energy_arrivals());
  const auto before = s;
  for (int i = 0; i < 100; ++i) ASSERT_EQ(sample_energy_packets(s, 0.0), 0);
  EXPECT_EQ(s, before);
}

TEST(EnergyPackets, Moments) {
  auto s = derive_stream(77, StreamLabel::energy_arrivals());
  const int n = 1'000'000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<double>(sample_energy_packets(s, 0.5));
    sum += k;
    sq += k * k;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(mean, 0.5, 0.003);
  EXPECT_NEAR(var, 0.5, 0.01);
}

TEST(EnergyPackets, ZeroFractionMatchesPmf) {
  auto s = derive_stream(78, StreamLabel::energy_arrivals());
  const int n = 1'000'000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += sample_energy_packets(s, 0.25) == 0;
  EXPECT_NEAR(static_cast<double>(zeros) / n, std::exp(-0.25), 0.002);
}

// Each count 0..10 within 4 binomial standard deviations of the exact pmf.
TEST(EnergyPackets, MatchesPmfForTableLambdas) {
  for (double lambda : {0.25, 0.5, 0.75}) {
    auto s = derive_stream(99, StreamLabel::derived(static_cast<std::uint64_t>(lambda * 100)));
    const int n = 1'000'000;
    std::vector<int> counts(11, 0);
    for (int i = 0; i < n; ++i) {
      const auto k = sample_energy_packets(s, lambda);
      if (k <= 10) ++counts[static_cast<std::size_t>(k)];
    }
    double pmf = std::exp(-lambda);
    for (int k = 0; k <= 10; ++k) {
      const double expected = n * pmf;
      const double sigma = std::sqrt(n * pmf * (1.0 - pmf));
      EXPECT_LE(std::abs(counts[static_cast<std::size_t>(k)] - expected), 4.0 * sigma + 1.0)
          << "lambda=" << lambda << " k=" << k;
      pmf *= lambda / (k + 1);
    }
  }
}
