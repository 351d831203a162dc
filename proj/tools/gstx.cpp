// gstx: state-transfer fidelity between two cavities coupled through springs.
//
//   gstx transfer --preset fig2 --G-over-kappa 10
//   gstx sweep --preset fig2a --out fig2a.csv
//   gstx validate
//   gstx presets [--show NAME]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gstx/cli/config.hpp"
#include "gstx/simulator/transfer.hpp"
#include "gstx/simulator/validation.hpp"
#include "gstx/sweep/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitGateFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

using gstx::cli::RunConfig;

/// Raw flag text keyed by config key; converted through the same parser as
/// config files so both accept identical value syntax.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::string config_path;

  void attach(CLI::App* cmd, bool sweep_flags) {
    static const std::vector<std::pair<std::string, std::string>> common{
        {"G-over-kappa", "coupling G in units of kappa"},
        {"p", "extra-spring coupling ratio G3/G"},
        {"kappa", "cavity decay rate: rad/s or 2pi*X{k,M,G}Hz"},
        {"gamma", "mechanical decay rate: rad/s or 2pi*X{k,M,G}Hz"},
        {"omega-m", "mechanical frequency: rad/s or 2pi*X{k,M,G}Hz"},
        {"omega-cav", "cavity frequency: rad/s or 2pi*X{k,M,G}Hz"},
        {"T-bath", "bath temperature in kelvin"},
        {"r", "input squeezing parameter"},
        {"alpha", "input coherent amplitude |alpha|"},
        {"phi", "phase of alpha in radians (accepts pi/4 style)"},
        {"method", "numeric|closed|both"},
        {"init-convention", "vacuum|thermal-springs"},
        {"mech-bath", "frequency setting the spring bath occupation: cavity|mechanical"},
        {"steps", "RK4 steps over [0, t0]"},
        {"out", "CSV output path"},
        {"preset", "named parameter preset (see `presets`)"}};
    for (const auto& [key, help] : common) cmd->add_option("--" + key, values[key], help);
    if (sweep_flags) {
      cmd->add_option("--axis", values["axis"], "swept parameter: G_over_kappa|p|r|alpha_mag|phi|T_bath");
      cmd->add_option("--grid", values["grid"], "start:stop:step, linspace:start:stop:count, or a,b,c");
      cmd->add_option("--jobs", values["jobs"], "worker threads (default: logical cores)");
    }
    cmd->add_option("--config", config_path, "key = value configuration file");
  }

  RunConfig config(const CLI::App* cmd) const {
    RunConfig c;
    for (const auto& [key, text] : values)
      if (cmd->count("--" + key) > 0) gstx::cli::set_value(c, key, text);
    return c;
  }
};

RunConfig effective_config(const FlagSet& flags, const CLI::App* cmd) {
  RunConfig file;
  if (!flags.config_path.empty()) file = gstx::cli::load_config(flags.config_path);
  return gstx::cli::resolve(gstx::cli::merge(file, flags.config(cmd)));
}

std::size_t jobs_of(const RunConfig& c) {
  if (c.jobs) {
    if (*c.jobs == 0) throw gstx::model::ValidationError("jobs", "must be positive");
    return *c.jobs;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void write_output(const RunConfig& c, const std::vector<gstx::sweep::SeriesResult>& series) {
  if (!c.out || c.out->empty() || *c.out == "-") {
    gstx::sweep::write_csv(std::cout, series);
    return;
  }
  std::ofstream f(*c.out, std::ios::binary);
  if (!f) throw gstx::cli::ConfigError(0, "out: cannot open '" + *c.out + "' for writing");
  gstx::sweep::write_csv(f, series);
}

int cmd_transfer(const RunConfig& c) {
  using namespace gstx;
  auto base = cli::template_of(c, true);
  const auto ps = cli::p_values(c);
  const auto methods = cli::methods_of(c);

  std::vector<sweep::SeriesResult> series;
  std::vector<simulator::TransferExperiment> exps;
  for (double p : ps) {
    base.p = p;
    exps.push_back(base.experiment());  // validates before any integration
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto& e = exps[i];
    std::printf("G/kappa=%.9g p=%.9g kappa=%.9g gamma=%.9g N_c=%.9g N_m=%.9g t0=%.9g steps=%zu\n", base.G_over_kappa,
                ps[i], e.params.kappa, e.params.gamma, e.params.N_c, e.params.N_m,
                simulator::transfer_time(e.params), e.dt_steps);
    std::printf("  %-12s %-12s %-12s %-12s\n", "method", "F", "lambda", "n_h_bar");
    sweep::SeriesResult sr{cli::series_label(ps[i], ps.size()), sweep::Axis::G_over_kappa, {}};
    for (auto m : methods) {
      const auto o = simulator::run(e, m);
      std::printf("  %-12s %-12.6f %-12.6f %-12.6f\n", std::string(simulator::to_string(m)).c_str(), o.F, o.lambda,
                  o.n_h_bar);
      sweep::SweepRecord rec;
      rec.axis_value = base.G_over_kappa;
      rec.method = m;
      rec.outcome = o;
      sr.records.push_back(rec);
    }
    series.push_back(std::move(sr));
  }
  if (c.out) write_output(c, series);
  return kExitOk;
}

int cmd_sweep(const RunConfig& c) {
  using namespace gstx;
  const auto specs = cli::sweep_specs_of(c);
  for (const auto& s : specs)
    for (double v : s.grid) (void)s.base.with(s.axis, v).experiment();
  const std::size_t jobs = jobs_of(c);
  std::vector<sweep::SeriesResult> series;
  for (const auto& s : specs) series.push_back({s.label, s.axis, sweep::run_sweep(s, jobs)});
  write_output(c, series);
  return kExitOk;
}

int cmd_validate(std::size_t points, std::uint64_t seed, const RunConfig& c) {
  using namespace gstx::simulator;
  const std::size_t steps = gstx::cli::steps_of(c);
  const auto grid = oracle_grid(points, seed);
  const auto rep = run_oracle_grid(grid, steps);
  std::printf("calibration (squeezed input, p=5, G/kappa=10, T=1.5 K): |dF| vacuum=%.3e thermal-springs=%.3e -> %s\n",
              rep.calibration.dF_vacuum, rep.calibration.dF_thermal_springs,
              std::string(to_string(rep.calibration.chosen)).c_str());
  std::printf("points=%zu steps=%zu seed=%llu\n", rep.points, steps, static_cast<unsigned long long>(seed));
  std::printf("max |dF|=%.3e  max |dlambda|=%.3e  max |dn_h_bar|=%.3e\n", rep.max_dF, rep.max_dlambda,
              rep.max_dn_h_bar);
  std::printf("worst point: G/kappa=%.4f p=%.3g T=%.3g input=%s\n", rep.worst.G_over_kappa, rep.worst.p,
              rep.worst.T_bath, rep.worst.squeezed_input ? "squeezed" : "coherent");
  std::printf("within gate %.0e: %zu/%zu\n", kOracleGate, rep.within_gate, rep.points);
  const bool pass = rep.max_dF <= kOracleGate;
  std::printf("gate: %s\n", pass ? "PASS" : "FAIL");
  return pass ? kExitOk : kExitGateFailed;
}

int cmd_presets(const std::string& show) {
  if (!show.empty()) {
    const auto* p = gstx::cli::find_preset(show);
    if (!p) {
      std::fprintf(stderr, "error: preset: unknown preset '%s'\n", show.c_str());
      return kExitUsage;
    }
    std::cout << gstx::cli::dump_config(p->config);
    return kExitOk;
  }
  for (const auto& p : gstx::cli::presets())
    std::printf("%-10s %s\n", std::string(p.name).c_str(), std::string(p.description).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"State-transfer fidelity for dual-cavity, dual-spring optomechanical systems"};
  app.require_subcommand(1);

  FlagSet transfer_flags;
  auto* transfer = app.add_subcommand("transfer", "single transfer experiment");
  transfer_flags.attach(transfer, false);

  FlagSet sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "one-dimensional parameter sweep to CSV");
  sweep_flags.attach(sweep, true);

  auto* validate = app.add_subcommand("validate", "closed form versus numeric over a random grid");
  std::size_t points = 100;
  std::uint64_t seed = 20140101;
  std::string validate_steps;
  validate->add_option("--points", points, "number of random grid points");
  validate->add_option("--seed", seed, "grid seed");
  validate->add_option("--steps", validate_steps, "RK4 steps over [0, t0]");

  auto* presets = app.add_subcommand("presets", "list presets");
  std::string show;
  presets->add_option("--show", show, "print one preset as a config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*transfer) return cmd_transfer(effective_config(transfer_flags, transfer));
    if (*sweep) return cmd_sweep(effective_config(sweep_flags, sweep));
    if (*validate) {
      RunConfig c;
      if (!validate_steps.empty()) gstx::cli::set_value(c, "steps", validate_steps);
      return cmd_validate(points, seed, c);
    }
    if (*presets) return cmd_presets(show);
  } catch (const gstx::numkit::IntegrationDiverged& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  } catch (const gstx::sweep::SweepError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  } catch (const gstx::cli::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitUsage;
}
