#pragma once

#include <array>
#include <cstdint>
#include <variant>

namespace ehsim {

enum class StreamKind { TaskArrivals, EnergyArrivals, Derived };

/// Identifies one independent random stream under a master seed.
struct StreamLabel {
  StreamKind kind = StreamKind::TaskArrivals;
  std::uint64_t index = 0;  ///< Only meaningful for Derived.

  static constexpr StreamLabel task_arrivals() { return {StreamKind::TaskArrivals, 0}; }
  static constexpr StreamLabel energy_arrivals() { return {StreamKind::EnergyArrivals, 0}; }
  static constexpr StreamLabel derived(std::uint64_t i) { return {StreamKind::Derived, i}; }

  bool operator==(const StreamLabel&) const = default;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** generator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(const std::array<std::uint64_t, 4>& state) : s_(state) {}

  std::uint64_t next();
  /// Uniform double in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

  const std::array<std::uint64_t, 4>& state() const { return s_; }
  bool operator==(const RandomStream&) const = default;

 private:
  std::array<std::uint64_t, 4> s_;
};

/// Deterministically derives a stream from (master_seed, label).
///
/// The label is hashed to a 64-bit constant, xor-ed into the master seed, and
/// the result seeds a SplitMix64 sequence whose first four outputs form the
/// xoshiro state. Task and energy streams therefore never share state.
RandomStream derive_stream(std::uint64_t master_seed, StreamLabel label);

/// Bernoulli(p): one uniform draw u, returns u < p.
bool sample_task_arrival(RandomStream& stream, double p);

/// Poisson(lambda) via Knuth's product-of-uniforms method. Uses no draws when
/// lambda == 0.
std::int64_t sample_energy_packets(RandomStream& stream, double lambda);

}  // namespace ehsim
