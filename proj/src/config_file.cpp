#include "ehsim/config_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ehsim {

std::string_view to_string(PolicyKind kind) {
  return kind == PolicyKind::EnergyBlind ? "eb" : "ea";
}

void SimConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p", "must lie in [0, 1]");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("lambda", "must be a finite value >= 0");
  }
  if (buffer_cap < 1) throw ValidationError("buffer_cap", "must be >= 1");
  if (period < 1) throw ValidationError("period", "must be >= 1");
  if (t_max < 1) throw ValidationError("t_max", "must be >= 1");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError(std::string(key), "not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view key, std::string_view text) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError(std::string(key), "not an integer: '" + std::string(text) + "'");
  }
  return v;
}

EnergyAmount parse_energy_field(std::string_view key, std::string_view text) {
  try {
    return parse_energy(std::string(text));
  } catch (const InexactEnergy&) {
    throw InexactEnergy(std::string(key) + ": '" + std::string(text) +
                        "' is not a whole number of milli-units");
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string(key), e.what());
  }
}

std::string format_real(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::uint64_t parse_seed(std::string_view text) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    text.remove_prefix(2);
  }
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v, base);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ValidationError("seed", "expected a decimal or 0x-hex 64-bit integer");
  }
  return v;
}

PolicyKind parse_policy_kind(std::string_view text) {
  if (text == "eb" || text == "EB") return PolicyKind::EnergyBlind;
  if (text == "ea" || text == "EA") return PolicyKind::EnergyAware;
  throw ValidationError("policy_kind", "expected 'eb' or 'ea', got '" + std::string(text) + "'");
}

void apply_config_value(SimConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "p") {
    c.p = parse_real(key, value);
  } else if (key == "lambda") {
    c.lambda = parse_real(key, value);
  } else if (key == "packet_energy") {
    c.packet_energy = parse_energy_field(key, value);
  } else if (key == "e_task") {
    c.e_task = parse_energy_field(key, value);
  } else if (key == "e_meas") {
    c.e_meas = parse_energy_field(key, value);
  } else if (key == "e_cap") {
    c.e_cap = parse_energy_field(key, value);
  } else if (key == "buffer_cap") {
    c.buffer_cap = parse_int(key, value);
  } else if (key == "period") {
    c.period = parse_int(key, value);
  } else if (key == "policy_kind") {
    c.policy_kind = parse_policy_kind(value);
  } else if (key == "t_max") {
    c.t_max = parse_int(key, value);
  } else if (key == "seed") {
    c.seed = parse_seed(value);
  } else if (key == "slot_duration") {
    if (parse_real(key, value) != 1.0) throw ValidationError("slot_duration", "fixed at 1");
  } else {
    throw ValidationError(std::string(key), "unknown configuration key");
  }
}

SimConfig parse_config_text(std::string_view text, SimConfig base) {
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key");
    if (value.empty()) throw ParseError(line_no, "missing value for '" + std::string(key) + "'");
    if (!seen.emplace(key).second) {
      throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
    }
    apply_config_value(base, key, value);
  }
  return base;
}

SimConfig parse_config(const std::optional<std::string>& path,
                       const std::vector<ConfigOverride>& overrides) {
  SimConfig config;
  if (path) {
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file '" + *path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    config = parse_config_text(ss.str());
  }
  for (const auto& [key, value] : overrides) apply_config_value(config, key, value);
  config.validate();
  return config;
}

std::string format_config(const SimConfig& c, std::string_view prefix) {
  std::ostringstream out;
  auto line = [&](std::string_view key, const std::string& value) {
    out << prefix << key << " = " << value << '\n';
  };
  line("policy_kind", std::string(to_string(c.policy_kind)));
  line("p", format_real(c.p));
  line("lambda", format_real(c.lambda));
  line("packet_energy", format_energy(c.packet_energy));
  line("e_task", format_energy(c.e_task));
  line("e_meas", format_energy(c.e_meas));
  line("e_cap", format_energy(c.e_cap));
  line("buffer_cap", std::to_string(c.buffer_cap));
  line("period", std::to_string(c.period));
  line("t_max", std::to_string(c.t_max));
  line("seed", std::to_string(c.seed));
  line("slot_duration", std::to_string(SimConfig::slot_duration));
  return out.str();
}

}  // namespace ehsim
