#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ehsim/config.hpp"

namespace ehsim {

/// Malformed configuration text.
class ParseError : public std::invalid_argument {
 public:
  ParseError(int line, const std::string& reason)
      : std::invalid_argument("line " + std::to_string(line) + ": " + reason), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

using ConfigOverride = std::pair<std::string, std::string>;

/// Sets one SimConfig field from its textual value. Energies are decimal units.
/// Throws ValidationError on unknown keys or unparsable values, InexactEnergy
/// on energies finer than a milli-unit.
void apply_config_value(SimConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines (with `#` comments) on top of `base`.
/// Duplicate or unknown keys are rejected. The result is not validated.
SimConfig parse_config_text(std::string_view text, SimConfig base = {});

/// Reads an optional file, then applies overrides in order, then validates.
SimConfig parse_config(const std::optional<std::string>& path,
                       const std::vector<ConfigOverride>& overrides = {});

/// Renders every resolved field as `key = value` lines that parse back to
/// the same config.
std::string format_config(const SimConfig& config, std::string_view line_prefix = "");

std::uint64_t parse_seed(std::string_view text);
PolicyKind parse_policy_kind(std::string_view text);

}  // namespace ehsim
