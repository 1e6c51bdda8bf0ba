#include "ehsim/random.hpp"

#include <bit>
#include <cmath>

namespace ehsim {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t label_constant(StreamLabel label) {
  switch (label.kind) {
    case StreamKind::TaskArrivals:
      return mix64(0x7461736b61727276ULL);  // "taskarrv"
    case StreamKind::EnergyArrivals:
      return mix64(0x656e657267797076ULL);  // "energypv"
    case StreamKind::Derived:
      return mix64(0x6465726976656400ULL + label.index * kGoldenGamma);
  }
  return 0;
}

}  // namespace

std::uint64_t RandomStream::next() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

RandomStream derive_stream(std::uint64_t master_seed, StreamLabel label) {
  std::uint64_t x = master_seed ^ label_constant(label);
  std::array<std::uint64_t, 4> state{};
  for (auto& word : state) {
    x += kGoldenGamma;
    word = mix64(x);
  }
  if ((state[0] | state[1] | state[2] | state[3]) == 0) state[0] = kGoldenGamma;
  return RandomStream(state);
}

bool sample_task_arrival(RandomStream& stream, double p) {
  return stream.uniform() < p;
}

std::int64_t sample_energy_packets(RandomStream& stream, double lambda) {
  if (lambda <= 0.0) return 0;
  const double threshold = std::exp(-lambda);
  std::int64_t k = 0;
  double product = stream.uniform();
  while (product > threshold) {
    ++k;
    product *= stream.uniform();
  }
  return k;
}

}  // namespace ehsim
