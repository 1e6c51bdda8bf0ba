#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ehsim {

/// Non-negative energy quantity in fixed-point milli-units (1 unit = 1000).
///
/// All arithmetic is exact integer arithmetic. Subtraction saturates at zero;
/// callers that must distinguish a shortfall use store_withdraw().
class EnergyAmount {
 public:
  using rep = std::int64_t;
  static constexpr rep kMilliPerUnit = 1000;

  constexpr EnergyAmount() = default;

  static constexpr EnergyAmount milli(rep m) {
    if (m < 0) throw std::invalid_argument("EnergyAmount: negative milli-units");
    return EnergyAmount(m);
  }
  static constexpr EnergyAmount units(rep u) { return milli(u * kMilliPerUnit); }
  static constexpr EnergyAmount zero() { return EnergyAmount(); }

  constexpr rep milli_units() const { return milli_; }
  constexpr double to_units() const {
    return static_cast<double>(milli_) / kMilliPerUnit;
  }
  constexpr bool is_zero() const { return milli_ == 0; }

  constexpr auto operator<=>(const EnergyAmount&) const = default;

  constexpr EnergyAmount& operator+=(EnergyAmount o) {
    milli_ += o.milli_;
    return *this;
  }
  friend constexpr EnergyAmount operator+(EnergyAmount a, EnergyAmount b) {
    return a += b;
  }
  /// Saturating difference: max(a - b, 0).
  friend constexpr EnergyAmount saturating_sub(EnergyAmount a, EnergyAmount b) {
    return EnergyAmount(std::max<rep>(a.milli_ - b.milli_, 0));
  }
  friend constexpr EnergyAmount operator*(rep k, EnergyAmount a) {
    if (k < 0) throw std::invalid_argument("EnergyAmount: negative multiplier");
    return EnergyAmount(k * a.milli_);
  }

 private:
  constexpr explicit EnergyAmount(rep m) : milli_(m) {}
  rep milli_ = 0;
};

/// Adds `amount` to `level`, saturating at `cap`.
constexpr EnergyAmount store_deposit(EnergyAmount level, EnergyAmount amount,
                                     EnergyAmount cap) {
  return std::min(level + amount, cap);
}

/// Returns level - amount, or nullopt (Insufficient) when level < amount.
constexpr std::optional<EnergyAmount> store_withdraw(EnergyAmount level,
                                                     EnergyAmount amount) {
  if (level < amount) return std::nullopt;
  return saturating_sub(level, amount);
}

/// Exact decimal rendering with three fractional digits, e.g. 4500 -> "4.500".
std::string format_energy(EnergyAmount e);

/// Thrown when a decimal energy literal is not a whole number of milli-units.
class InexactEnergy : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses a non-negative decimal in units ("0.2", "10", "2.500") exactly.
/// Throws InexactEnergy when the value needs more than three fractional
/// digits, std::invalid_argument on malformed or negative text.
EnergyAmount parse_energy(const std::string& text);

}  // namespace ehsim
