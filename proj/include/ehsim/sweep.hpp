#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ehsim/config.hpp"

namespace ehsim {

/// F sweeps run the energy-blind policy, Q sweeps the energy-aware one.
enum class SweptParam { F, Q };

struct SweepSpec {
  SimConfig base_config;
  SweptParam swept_param = SweptParam::F;
  std::vector<std::int64_t> values;
  std::int64_t replicates = 5;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;  ///< 0 = hardware concurrency.

  void validate() const;
};

struct SweepPoint {
  std::int64_t value = 0;
  double mean_rate = 0.0;
  double std_error = 0.0;
  std::int64_t replicate_count = 0;
};

struct SweepCurve {
  std::vector<SweepPoint> points;
};

struct Optimum {
  std::int64_t value = 0;
  double mean_rate = 0.0;
  bool operator==(const Optimum&) const = default;
};

struct ComparisonRow {
  std::int64_t value = 0;
  double eb_rate = 0.0;
  double eb_se = 0.0;
  double ea_rate = 0.0;
  double ea_se = 0.0;
  double diff = 0.0;  ///< eb_rate - ea_rate
  bool significant = false;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
};

/// Inclusive integer range [from, to].
std::vector<std::int64_t> value_range(std::int64_t from, std::int64_t to);

/// Seed of replicate `r` at sweep value `value`: the first output of
/// derive_stream(master_seed, Derived(value * replicates + r)).
std::uint64_t replicate_seed(std::uint64_t master_seed, std::int64_t value,
                             std::int64_t replicates, std::int64_t r);

SweepCurve run_sweep(const SweepSpec& spec);

/// Argmax of mean_rate; ties go to the smallest value.
Optimum find_optimum(const SweepCurve& curve);

/// Pointwise `a - b` with a 2-sigma significance flag. Curves must share values.
ComparisonReport compare_curves(const SweepCurve& a, const SweepCurve& b);

/// EB with F = v against EA with Q = v on identical replicate seeds.
ComparisonReport compare_policies(const SimConfig& base_config,
                                  const std::vector<std::int64_t>& values,
                                  std::int64_t replicates, std::uint64_t master_seed,
                                  unsigned threads = 0);

void write_curve_csv(std::ostream& out, const SweepCurve& curve);
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);

inline constexpr const char* kCurveCsvHeader = "value,mean_rate,std_error,replicates";
inline constexpr const char* kComparisonCsvHeader =
    "value,eb_rate,eb_se,ea_rate,ea_se,diff,significant";

}  // namespace ehsim
