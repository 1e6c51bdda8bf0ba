// ehsim: command-line front end for the energy-harvesting task simulator.
//
//   ehsim run     --policy eb --F 6 --seed 42 [--trace trace.csv]
//   ehsim sweep   --policy ea --param Q --from 1 --to 30 [--replicates 5]
//   ehsim compare --from 1 --to 30 --e-meas 0.5
//   ehsim oracle  --policy eb --F 3 --p 0.5 --lambda 0.25
//
// Exit status: 0 success, 1 invalid configuration or usage, 2 runtime failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ehsim/config_file.hpp"
#include "ehsim/engine.hpp"
#include "ehsim/oracle.hpp"
#include "ehsim/sweep.hpp"

namespace {

using namespace ehsim;

constexpr const char* kOutputDirEnv = "EHSIM_OUTPUT_DIR";

struct ConfigFlags {
  std::optional<std::string> config_path;
  std::optional<std::string> policy;
  std::optional<std::string> f, q, p, lambda, packet_energy, e_task, e_meas, e_cap, buffer_cap,
      t_max, seed;
  std::vector<std::string> sets;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "key = value configuration file");
    app->add_option("--policy", policy, "eb or ea");
    app->add_option("--F", f, "EB task execution period (implies --policy eb)");
    app->add_option("--Q", q, "EA measurement period (implies --policy ea)");
    app->add_option("--p", p, "task arrival probability per slot");
    app->add_option("--lambda", lambda, "mean energy packets per slot");
    app->add_option("--packet-energy", packet_energy, "energy per packet (units)");
    app->add_option("--e-task", e_task, "energy per task execution (units)");
    app->add_option("--e-meas", e_meas, "energy per measurement (units)");
    app->add_option("--e-cap", e_cap, "storage capacity (units)");
    app->add_option("--B,--buffer-cap", buffer_cap, "task buffer size");
    app->add_option("--t-max", t_max, "number of slots");
    app->add_option("--seed", seed, "master seed, decimal or 0x-hex");
    app->add_option("--set", sets, "raw key=value override (repeatable)");
  }

  SimConfig resolve() const {
    std::vector<ConfigOverride> o;
    auto add = [&](const char* key, const std::optional<std::string>& v) {
      if (v) o.emplace_back(key, *v);
    };
    if (f && q) throw ValidationError("period", "--F and --Q are mutually exclusive");
    if (f) o.emplace_back("policy_kind", "eb");
    if (q) o.emplace_back("policy_kind", "ea");
    add("policy_kind", policy);
    add("period", f);
    add("period", q);
    add("p", p);
    add("lambda", lambda);
    add("packet_energy", packet_energy);
    add("e_task", e_task);
    add("e_meas", e_meas);
    add("e_cap", e_cap);
    add("buffer_cap", buffer_cap);
    add("t_max", t_max);
    add("seed", seed);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ValidationError(s, "--set expects key=value");
      o.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    SimConfig cfg = parse_config(config_path, o);
    if (f && cfg.policy_kind != PolicyKind::EnergyBlind) {
      throw ValidationError("policy_kind", "--F requires the eb policy");
    }
    if (q && cfg.policy_kind != PolicyKind::EnergyAware) {
      throw ValidationError("policy_kind", "--Q requires the ea policy");
    }
    return cfg;
  }
};

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) return std::filesystem::path(dir) / p;
  }
  return p;
}

// Writes to the named file, or stdout when no path was given.
class Output {
 public:
  explicit Output(const std::optional<std::string>& path) {
    if (path) {
      const auto resolved = resolve_output(*path);
      file_.open(resolved, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open '" + resolved.string() + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_header(std::ostream& out, std::string_view command, const SimConfig& cfg,
                  const std::string& extra = {}) {
  out << "# ehsim " << command << '\n' << format_config(cfg, "# ") << extra;
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-harvesting IoT task execution simulator"};
  app.require_subcommand(1);

  ConfigFlags run_flags, sweep_flags, compare_flags, oracle_flags;
  std::optional<std::string> run_out, run_trace, sweep_out, compare_out, oracle_out;

  auto* run_cmd = app.add_subcommand("run", "simulate one configuration");
  run_flags.attach(run_cmd);
  run_cmd->add_option("--out", run_out, "result file (default stdout)");
  run_cmd->add_option("--trace", run_trace, "per-slot trace CSV file");

  std::string param = "F";
  std::int64_t from = 1, to = 30, replicates = 5;
  std::optional<std::string> master_seed;
  unsigned threads = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep F (EB) or Q (EA)");
  sweep_flags.attach(sweep_cmd);
  sweep_cmd->add_option("--param", param, "F or Q")->check(CLI::IsMember({"F", "Q"}));
  sweep_cmd->add_option("--from", from, "first period");
  sweep_cmd->add_option("--to", to, "last period");
  sweep_cmd->add_option("--replicates", replicates, "runs per value");
  sweep_cmd->add_option("--master-seed", master_seed, "replicate seed root (default: seed)");
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  sweep_cmd->add_option("--out", sweep_out, "curve CSV file (default stdout)");

  auto* compare_cmd = app.add_subcommand("compare", "EB at F = v against EA at Q = v");
  compare_flags.attach(compare_cmd);
  compare_cmd->add_option("--from", from, "first period");
  compare_cmd->add_option("--to", to, "last period");
  compare_cmd->add_option("--replicates", replicates, "runs per value");
  compare_cmd->add_option("--master-seed", master_seed, "replicate seed root (default: seed)");
  compare_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  compare_cmd->add_option("--out", compare_out, "comparison CSV file (default stdout)");

  std::size_t max_states = ChainBuildOptions{}.max_states;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact long-run completion rate");
  oracle_flags.attach(oracle_cmd);
  oracle_cmd->add_option("--max-states", max_states, "state-space limit");
  oracle_cmd->add_option("--out", oracle_out, "result file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) {
      const SimConfig cfg = run_flags.resolve();
      const RunResult r = run(cfg, run_trace.has_value());
      Output out(run_out);
      write_header(out.stream(), "run", cfg);
      if (r.vacuous) out.stream() << "# note: no task arrived; completion_rate is 1 by convention\n";
      const Counters& c = r.counters;
      out.stream() << "arrived,dropped,executed,attempts,failed_attempts,measurements,"
                      "completion_rate,vacuous\n"
                   << c.arrived << ',' << c.dropped << ',' << c.executed << ',' << c.attempts
                   << ',' << c.failed_attempts << ',' << c.measurements << ','
                   << fixed(r.completion_rate) << ',' << int(r.vacuous) << '\n';
      if (run_trace) {
        Output trace(run_trace);
        write_header(trace.stream(), "run trace", cfg);
        write_trace_csv(trace.stream(), *r.trace);
      }
    } else if (*sweep_cmd || *compare_cmd) {
      const bool is_sweep = sweep_cmd->parsed();
      SimConfig cfg = (is_sweep ? sweep_flags : compare_flags).resolve();
      const std::uint64_t root = master_seed ? parse_seed(*master_seed) : cfg.seed;
      if (from < 1 || to < from) throw ValidationError("from/to", "need 1 <= from <= to");
      const auto values = value_range(from, to);
      std::ostringstream extra;
      extra << "# master_seed = " << root << "\n# replicates = " << replicates
            << "\n# values = " << from << ".." << to << '\n';
      if (is_sweep) {
        cfg.policy_kind = param == "F" ? PolicyKind::EnergyBlind : PolicyKind::EnergyAware;
        extra << "# param = " << param << '\n';
        const SweepSpec spec{cfg, param == "F" ? SweptParam::F : SweptParam::Q, values,
                             replicates, root, threads};
        const SweepCurve curve = run_sweep(spec);
        Output out(sweep_out);
        write_header(out.stream(), "sweep", cfg, extra.str());
        write_curve_csv(out.stream(), curve);
        const Optimum best = find_optimum(curve);
        out.stream() << "# optimum: value=" << best.value
                     << " mean_rate=" << fixed(best.mean_rate) << '\n';
      } else {
        const ComparisonReport report = compare_policies(cfg, values, replicates, root, threads);
        Output out(compare_out);
        write_header(out.stream(), "compare", cfg, extra.str());
        write_comparison_csv(out.stream(), report);
      }
    } else if (*oracle_cmd) {
      const SimConfig cfg = oracle_flags.resolve();
      const OracleResult r = oracle_completion_rate(cfg, ChainBuildOptions{max_states});
      Output out(oracle_out);
      write_header(out.stream(), "oracle", cfg);
      out.stream() << "completion_rate,executions_per_slot,states,iterations,residual\n"
                   << fixed(r.completion_rate, 9) << ',' << fixed(r.executions_per_slot, 9) << ','
                   << r.state_count << ',' << r.iterations << ',' << r.residual << '\n';
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "ehsim: invalid configuration: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ehsim: error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
