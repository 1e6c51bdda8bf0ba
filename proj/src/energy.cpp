#include "ehsim/energy.hpp"

#include <cctype>
#include <cstdio>
#include <limits>

namespace ehsim {

std::string format_energy(EnergyAmount e) {
  const auto m = e.milli_units();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%03lld",
                static_cast<long long>(m / EnergyAmount::kMilliPerUnit),
                static_cast<long long>(m % EnergyAmount::kMilliPerUnit));
  return buf;
}

EnergyAmount parse_energy(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty energy value");
  if (text.front() == '-') throw std::invalid_argument("negative energy value '" + text + "'");

  std::size_t i = text.front() == '+' ? 1 : 0;
  EnergyAmount::rep whole = 0;
  std::size_t whole_digits = 0;
  constexpr auto kMaxWhole = std::numeric_limits<EnergyAmount::rep>::max() / 10000;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    whole = whole * 10 + (text[i] - '0');
    if (whole > kMaxWhole) throw std::invalid_argument("energy value out of range '" + text + "'");
    ++whole_digits;
  }

  EnergyAmount::rep frac = 0;
  std::size_t frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      const int d = text[i] - '0';
      if (frac_digits < 3) {
        frac = frac * 10 + d;
      } else if (d != 0) {
        throw InexactEnergy("energy '" + text + "' is finer than one milli-unit");
      }
      ++frac_digits;
    }
  }
  if (i != text.size() || whole_digits + frac_digits == 0) {
    throw std::invalid_argument("malformed energy value '" + text + "'");
  }
  for (std::size_t k = std::min<std::size_t>(frac_digits, 3); k < 3; ++k) frac *= 10;
  return EnergyAmount::milli(whole * EnergyAmount::kMilliPerUnit + frac);
}

}  // namespace ehsim
