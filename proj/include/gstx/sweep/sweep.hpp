#pragma once

// One-dimensional parameter sweeps over a fixed pool of worker threads.
// Output order is fixed by grid index, never by completion order.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gstx/model/params.hpp"
#include "gstx/simulator/transfer.hpp"

namespace gstx::sweep {

enum class Axis { G_over_kappa, p, r, alpha_mag, phi, T_bath };

inline constexpr std::array<Axis, 6> kAllAxes{Axis::G_over_kappa, Axis::p, Axis::r, Axis::alpha_mag, Axis::phi, Axis::T_bath};

inline std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::G_over_kappa: return "G_over_kappa";
    case Axis::p: return "p";
    case Axis::r: return "r";
    case Axis::alpha_mag: return "alpha_mag";
    case Axis::phi: return "phi";
    case Axis::T_bath: return "T_bath";
  }
  return "";
}

inline std::optional<Axis> parse_axis(std::string_view name) {
  for (Axis a : kAllAxes)
    if (to_string(a) == name) return a;
  return std::nullopt;
}

/// Experiment description in sweepable coordinates: G is given relative to
/// kappa and the bath occupations by a temperature. With kappa = 0 the
/// coupling is measured in units of the figure kappa (2pi x 50 kHz).
struct ExperimentTemplate {
  double G_over_kappa = 1.0;
  double p = 0.0;
  double kappa = model::figure::kappa;
  double gamma = model::figure::gamma;
  double omega_m = model::figure::omega_m;
  double omega_cav = model::figure::omega_cav;
  double T_bath = model::figure::T_bath;
  model::MechanicalBath mech_bath = model::MechanicalBath::cavity;
  gaussian::InputStateSpec input;
  simulator::InitialConvention init = simulator::InitialConvention::vacuum_all_others;
  std::size_t steps = simulator::kDefaultSteps;

  double kappa_unit() const { return kappa > 0.0 ? kappa : model::figure::kappa; }

  model::SystemParams params() const {
    if (!std::isfinite(G_over_kappa) || !(G_over_kappa > 0.0)) throw model::ValidationError("G-over-kappa", "must be > 0");
    if (!(omega_cav > 0.0)) throw model::ValidationError("omega-cav", "must be > 0");
    if (!(omega_m > 0.0)) throw model::ValidationError("omega-m", "must be > 0");
    if (!std::isfinite(T_bath) || T_bath < 0.0) throw model::ValidationError("T-bath", "must be >= 0");
    model::SystemParams s;
    s.G = G_over_kappa * kappa_unit();
    s.p = p;
    s.kappa = kappa;
    s.gamma = gamma;
    s.omega_m = omega_m;
    s.omega_cav = omega_cav;
    s = model::with_bath_temperature(s, T_bath, mech_bath);
    s.validate();
    return s;
  }

  simulator::TransferExperiment experiment() const {
    simulator::TransferExperiment e;
    e.params = params();
    e.input = input;
    e.initial_convention = init;
    e.dt_steps = steps;
    e.validate();
    return e;
  }

  ExperimentTemplate with(Axis axis, double value) const {
    ExperimentTemplate t = *this;
    switch (axis) {
      case Axis::G_over_kappa: t.G_over_kappa = value; break;
      case Axis::p: t.p = value; break;
      case Axis::r: t.input.r = value; break;
      case Axis::alpha_mag: t.input.alpha_mag = value; break;
      case Axis::phi: t.input.phi = value; break;
      case Axis::T_bath: t.T_bath = value; break;
    }
    return t;
  }

  friend bool operator==(const ExperimentTemplate&, const ExperimentTemplate&) = default;
};

struct SweepSpec {
  std::string label;  ///< series name; empty for a single-series sweep
  ExperimentTemplate base;
  Axis axis = Axis::G_over_kappa;
  std::vector<double> grid;
  std::vector<simulator::Method> methods{simulator::Method::numeric};

  void validate() const {
    if (grid.empty()) throw model::ValidationError("grid", "must not be empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (!(grid[i] > grid[i - 1])) throw model::ValidationError("grid", "must be strictly increasing");
    if (methods.empty()) throw model::ValidationError("method", "at least one method is required");
  }
};

struct SweepRecord {
  std::size_t grid_index = 0;
  double axis_value = 0.0;
  simulator::Method method = simulator::Method::numeric;
  simulator::TransferOutcome outcome;
  double wall_seconds = 0.0;
};

class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `count` points from lo to hi inclusive.
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t i = 0; i < count; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return g;
}

/// Default coupling axis: 120 points over G/kappa in [0.5, 30].
inline std::vector<double> default_coupling_grid() { return linspace(0.5, 30.0, 120); }

/// Every (grid point, method) pair, ordered by grid index then method order.
/// The first failing point in that order aborts the sweep.
inline std::vector<SweepRecord> run_sweep(const SweepSpec& spec, std::size_t parallelism) {
  spec.validate();
  if (parallelism == 0) throw model::ValidationError("jobs", "must be positive");
  const std::size_t n_methods = spec.methods.size();
  const std::size_t n_units = spec.grid.size() * n_methods;

  std::vector<SweepRecord> records(n_units);
  std::vector<std::exception_ptr> errors(n_units);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t u = next.fetch_add(1);
      if (u >= n_units) return;
      const std::size_t gi = u / n_methods;
      SweepRecord& rec = records[u];
      rec.grid_index = gi;
      rec.axis_value = spec.grid[gi];
      rec.method = spec.methods[u % n_methods];
      const auto start = std::chrono::steady_clock::now();
      try {
        const auto exp = spec.base.with(spec.axis, rec.axis_value).experiment();
        rec.outcome = simulator::run(exp, rec.method);
      } catch (...) {
        errors[u] = std::current_exception();
      }
      rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };

  const std::size_t n_threads = std::min(parallelism, n_units);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  for (std::size_t u = 0; u < n_units; ++u) {
    if (!errors[u]) continue;
    std::string what;
    try {
      std::rethrow_exception(errors[u]);
    } catch (const std::exception& e) {
      what = e.what();
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "sweep point %s=%.9g (%s, G/kappa=%.9g, p=%.9g) failed: ",
                  std::string(to_string(spec.axis)).c_str(), records[u].axis_value,
                  std::string(simulator::to_string(records[u].method)).c_str(),
                  spec.base.with(spec.axis, records[u].axis_value).G_over_kappa,
                  spec.base.with(spec.axis, records[u].axis_value).p);
    throw SweepError(buf + what);
  }
  return records;
}

struct SeriesResult {
  std::string label;
  Axis axis;
  std::vector<SweepRecord> records;
};

inline constexpr std::string_view kCsvHeader = "axis,axis_value,method,F,lambda,n_h_bar,C1,C2,C3";

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

/// One row per record. The method cell carries the series label in brackets
/// when the label is non-empty, e.g. `numeric[p=5]`.
inline void write_csv(std::ostream& os, const std::vector<SeriesResult>& series) {
  os << kCsvHeader << '\n';
  for (const auto& s : series) {
    for (const auto& r : s.records) {
      os << to_string(s.axis) << ',' << format_number(r.axis_value) << ',' << simulator::to_string(r.method);
      if (!s.label.empty()) os << '[' << s.label << ']';
      const auto& o = r.outcome;
      os << ',' << format_number(o.F) << ',' << format_number(o.lambda) << ',' << format_number(o.n_h_bar) << ',';
      if (r.method == simulator::Method::closed_form)
        os << format_number(o.C1) << ',' << format_number(o.C2) << ',' << format_number(o.C3);
      else
        os << ",,";
      os << '\n';
    }
  }
}

}  // namespace gstx::sweep
