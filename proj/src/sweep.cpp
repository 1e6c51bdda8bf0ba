#include "ehsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "ehsim/engine.hpp"
#include "ehsim/random.hpp"

namespace ehsim {

void SweepSpec::validate() const {
  if (values.empty()) throw ValidationError("values", "must be non-empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1) throw ValidationError("values", "periods must be >= 1");
    if (i > 0 && values[i] <= values[i - 1]) {
      throw ValidationError("values", "must be strictly increasing");
    }
  }
  if (replicates < 1) throw ValidationError("replicates", "must be >= 1");
  base_config.validate();
}

std::vector<std::int64_t> value_range(std::int64_t from, std::int64_t to) {
  std::vector<std::int64_t> v;
  for (std::int64_t x = from; x <= to; ++x) v.push_back(x);
  return v;
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::int64_t value,
                             std::int64_t replicates, std::int64_t r) {
  const auto index = static_cast<std::uint64_t>(value * replicates + r);
  return derive_stream(master_seed, StreamLabel::derived(index)).next();
}

namespace {

SweepPoint summarize(std::int64_t value, const std::vector<double>& rates) {
  SweepPoint pt;
  pt.value = value;
  pt.replicate_count = static_cast<std::int64_t>(rates.size());
  double sum = 0.0;
  for (double r : rates) sum += r;
  pt.mean_rate = sum / static_cast<double>(rates.size());
  if (rates.size() > 1) {
    double ss = 0.0;
    for (double r : rates) ss += (r - pt.mean_rate) * (r - pt.mean_rate);
    const double var = ss / static_cast<double>(rates.size() - 1);
    pt.std_error = std::sqrt(var / static_cast<double>(rates.size()));
  }
  return pt;
}

template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    });
  }
}

}  // namespace

SweepCurve run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto reps = static_cast<std::size_t>(spec.replicates);
  const std::size_t jobs = spec.values.size() * reps;
  std::vector<double> rates(jobs);

  parallel_for(jobs, spec.threads, [&](std::size_t j) {
    const std::int64_t value = spec.values[j / reps];
    const auto r = static_cast<std::int64_t>(j % reps);
    SimConfig cfg = spec.base_config;
    cfg.policy_kind =
        spec.swept_param == SweptParam::F ? PolicyKind::EnergyBlind : PolicyKind::EnergyAware;
    cfg.period = value;
    cfg.seed = replicate_seed(spec.master_seed, value, spec.replicates, r);
    rates[j] = run(cfg).completion_rate;
  });

  SweepCurve curve;
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    std::vector<double> slice(rates.begin() + static_cast<std::ptrdiff_t>(i * reps),
                              rates.begin() + static_cast<std::ptrdiff_t>((i + 1) * reps));
    curve.points.push_back(summarize(spec.values[i], slice));
  }
  return curve;
}

Optimum find_optimum(const SweepCurve& curve) {
  if (curve.points.empty()) throw std::invalid_argument("find_optimum: empty curve");
  Optimum best{curve.points.front().value, curve.points.front().mean_rate};
  for (const auto& pt : curve.points) {
    if (pt.mean_rate > best.mean_rate ||
        (pt.mean_rate == best.mean_rate && pt.value < best.value)) {
      best = Optimum{pt.value, pt.mean_rate};
    }
  }
  return best;
}

ComparisonReport compare_curves(const SweepCurve& a, const SweepCurve& b) {
  if (a.points.size() != b.points.size()) {
    throw std::invalid_argument("compare_curves: curves differ in length");
  }
  ComparisonReport report;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto& pa = a.points[i];
    const auto& pb = b.points[i];
    if (pa.value != pb.value) throw std::invalid_argument("compare_curves: value mismatch");
    ComparisonRow row;
    row.value = pa.value;
    row.eb_rate = pa.mean_rate;
    row.eb_se = pa.std_error;
    row.ea_rate = pb.mean_rate;
    row.ea_se = pb.std_error;
    row.diff = pa.mean_rate - pb.mean_rate;
    row.significant = std::abs(row.diff) > 2.0 * std::hypot(pa.std_error, pb.std_error);
    report.rows.push_back(row);
  }
  return report;
}

ComparisonReport compare_policies(const SimConfig& base_config,
                                  const std::vector<std::int64_t>& values,
                                  std::int64_t replicates, std::uint64_t master_seed,
                                  unsigned threads) {
  SweepSpec spec{base_config, SweptParam::F, values, replicates, master_seed, threads};
  const SweepCurve eb = run_sweep(spec);
  spec.swept_param = SweptParam::Q;
  const SweepCurve ea = run_sweep(spec);
  return compare_curves(eb, ea);
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_curve_csv(std::ostream& out, const SweepCurve& curve) {
  out << kCurveCsvHeader << '\n';
  for (const auto& pt : curve.points) {
    out << pt.value << ',' << fmt(pt.mean_rate) << ',' << fmt(pt.std_error) << ','
        << pt.replicate_count << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
  out << kComparisonCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.value << ',' << fmt(r.eb_rate) << ',' << fmt(r.eb_se) << ',' << fmt(r.ea_rate)
        << ',' << fmt(r.ea_se) << ',' << fmt(r.diff) << ',' << int(r.significant) << '\n';
  }
}

}  // namespace ehsim
