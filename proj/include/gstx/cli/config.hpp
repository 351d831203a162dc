#pragma once

// Run configuration shared by the command-line tool: flat `key = value` files,
// named presets, and conversion to sweep specifications.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gstx/model/constants.hpp"
#include "gstx/model/params.hpp"
#include "gstx/simulator/transfer.hpp"
#include "gstx/sweep/sweep.hpp"

namespace gstx::cli {

/// Bad configuration input. `line()` is 0 for problems not tied to a file line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct RunConfig {
  std::optional<std::string> preset;
  std::optional<double> G_over_kappa;
  std::optional<double> p;
  std::optional<std::vector<double>> p_series;
  std::optional<double> kappa;
  std::optional<double> gamma;
  std::optional<double> omega_m;
  std::optional<double> omega_cav;
  std::optional<double> T_bath;
  std::optional<double> r;
  std::optional<double> alpha;
  std::optional<double> phi;
  std::optional<std::string> method;
  std::optional<std::string> init_convention;
  std::optional<std::string> mech_bath;
  std::optional<std::size_t> steps;
  std::optional<std::string> axis;
  std::optional<std::string> grid;
  std::optional<std::string> out;
  std::optional<std::size_t> jobs;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Every field of `over` that is set replaces the one in `base`.
inline RunConfig merge(RunConfig base, const RunConfig& over) {
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(base.preset, over.preset);
  take(base.G_over_kappa, over.G_over_kappa);
  take(base.p, over.p);
  take(base.p_series, over.p_series);
  take(base.kappa, over.kappa);
  take(base.gamma, over.gamma);
  take(base.omega_m, over.omega_m);
  take(base.omega_cav, over.omega_cav);
  take(base.T_bath, over.T_bath);
  take(base.r, over.r);
  take(base.alpha, over.alpha);
  take(base.phi, over.phi);
  take(base.method, over.method);
  take(base.init_convention, over.init_convention);
  take(base.mech_bath, over.mech_bath);
  take(base.steps, over.steps);
  take(base.axis, over.axis);
  take(base.grid, over.grid);
  take(base.out, over.out);
  take(base.jobs, over.jobs);
  return base;
}

// ---------------------------------------------------------------------------
// Value parsing

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_double(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::optional<std::size_t> parse_count(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  try {
    return static_cast<std::size_t>(std::stoull(s));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

/// Angular rate in rad/s: either a plain number, or `2pi*<x>[k|M|G]Hz`
/// (`2pi*<x>` alone is read as Hz).
inline std::optional<double> parse_rate(std::string_view text) {
  std::string s = trim(text);
  const std::string prefix = "2pi*";
  if (s.rfind(prefix, 0) != 0) return parse_double(s);
  s = s.substr(prefix.size());
  double scale = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "Hz") == 0) {
    s.resize(s.size() - 2);
    if (!s.empty()) {
      switch (s.back()) {
        case 'k': scale = 1e3; s.pop_back(); break;
        case 'M': scale = 1e6; s.pop_back(); break;
        case 'G': scale = 1e9; s.pop_back(); break;
        default: break;
      }
    }
  }
  const auto v = parse_double(s);
  if (!v) return std::nullopt;
  return constants::two_pi * *v * scale;
}

/// Angle in radians: a number, `pi`, `pi/<x>`, or `<x>*pi`.
inline std::optional<double> parse_angle(std::string_view text) {
  const std::string s = trim(text);
  if (s == "pi") return std::numbers::pi;
  if (s.rfind("pi/", 0) == 0) {
    const auto d = parse_double(s.substr(3));
    if (!d || *d == 0.0) return std::nullopt;
    return std::numbers::pi / *d;
  }
  if (s.size() > 3 && s.compare(s.size() - 3, 3, "*pi") == 0) {
    const auto m = parse_double(s.substr(0, s.size() - 3));
    if (!m) return std::nullopt;
    return *m * std::numbers::pi;
  }
  return parse_double(s);
}

inline std::optional<std::vector<double>> parse_list(std::string_view text) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    const auto v = parse_double(item);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

/// Grid forms: `start:stop:step` (inclusive of stop within step/1e6),
/// `linspace:start:stop:count`, or a comma-separated list.
inline std::optional<std::vector<double>> parse_grid(std::string_view text) {
  const std::string s = trim(text);
  std::vector<std::string> parts;
  {
    std::string item;
    std::stringstream ss{s};
    while (std::getline(ss, item, ':')) parts.push_back(item);
  }
  if (parts.size() == 4 && trim(parts[0]) == "linspace") {
    const auto lo = parse_double(parts[1]);
    const auto hi = parse_double(parts[2]);
    const auto n = parse_count(parts[3]);
    if (!lo || !hi || !n || *n == 0) return std::nullopt;
    return sweep::linspace(*lo, *hi, *n);
  }
  if (parts.size() == 3) {
    const auto lo = parse_double(parts[0]);
    const auto hi = parse_double(parts[1]);
    const auto step = parse_double(parts[2]);
    if (!lo || !hi || !step || !(*step > 0.0) || *hi < *lo) return std::nullopt;
    const auto n = static_cast<std::size_t>(std::floor((*hi - *lo) / *step + 1e-6)) + 1;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = *lo + static_cast<double>(i) * *step;
    return g;
  }
  if (parts.size() == 1) return parse_list(s);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Key/value access

inline const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys{
      "preset", "G-over-kappa", "p",     "p-series", "kappa", "gamma",  "omega-m",
      "omega-cav", "T-bath",    "r",     "alpha",    "phi",   "method", "init-convention",
      "mech-bath", "steps",     "axis",  "grid",     "out",   "jobs"};
  return keys;
}

/// Sets one field from its textual value. Throws ConfigError(line, ...) on an
/// unknown key or an unparseable value.
inline void set_value(RunConfig& c, std::string_view key, std::string_view value, std::size_t line = 0) {
  const std::string v = trim(value);
  auto bad = [&]() { return ConfigError(line, "cannot parse value '" + v + "' for key '" + std::string(key) + "'"); };
  auto num = [&](std::optional<double>& dst) {
    const auto x = parse_double(v);
    if (!x) throw bad();
    dst = x;
  };
  auto rate = [&](std::optional<double>& dst) {
    const auto x = parse_rate(v);
    if (!x) throw bad();
    dst = x;
  };
  auto count = [&](std::optional<std::size_t>& dst) {
    const auto x = parse_count(v);
    if (!x) throw bad();
    dst = x;
  };
  auto choice = [&](std::optional<std::string>& dst, std::initializer_list<std::string_view> allowed) {
    for (auto a : allowed)
      if (v == a) {
        dst = v;
        return;
      }
    throw bad();
  };

  if (key == "preset") {
    if (v.empty()) throw bad();
    c.preset = v;
  } else if (key == "G-over-kappa") {
    num(c.G_over_kappa);
  } else if (key == "p") {
    num(c.p);
  } else if (key == "p-series") {
    const auto l = parse_list(v);
    if (!l) throw bad();
    c.p_series = l;
  } else if (key == "kappa") {
    rate(c.kappa);
  } else if (key == "gamma") {
    rate(c.gamma);
  } else if (key == "omega-m") {
    rate(c.omega_m);
  } else if (key == "omega-cav") {
    rate(c.omega_cav);
  } else if (key == "T-bath") {
    num(c.T_bath);
  } else if (key == "r") {
    num(c.r);
  } else if (key == "alpha") {
    num(c.alpha);
  } else if (key == "phi") {
    const auto x = parse_angle(v);
    if (!x) throw bad();
    c.phi = x;
  } else if (key == "method") {
    choice(c.method, {"numeric", "closed", "both"});
  } else if (key == "init-convention") {
    choice(c.init_convention, {"vacuum", "thermal-springs"});
  } else if (key == "mech-bath") {
    choice(c.mech_bath, {"cavity", "mechanical"});
  } else if (key == "steps") {
    count(c.steps);
  } else if (key == "axis") {
    if (!sweep::parse_axis(v)) throw bad();
    c.axis = v;
  } else if (key == "grid") {
    if (!parse_grid(v)) throw bad();
    c.grid = v;
  } else if (key == "out") {
    c.out = v;
  } else if (key == "jobs") {
    count(c.jobs);
  } else {
    throw ConfigError(line, "unknown key '" + std::string(key) + "'");
  }
}

/// `key = value` per line; `#` starts a comment; blank lines ignored.
inline RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::map<std::string, std::size_t> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError(line, "empty key");
    if (auto it = seen.find(key); it != seen.end())
      throw ConfigError(line, "duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");
    seen.emplace(key, line);
    set_value(c, key, body.substr(eq + 1), line);
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(0, "cannot open config file '" + path + "'");
  return parse_config(f);
}

/// Exact text form: doubles with 17 significant digits, so reloading the dump
/// reproduces the same RunConfig.
inline std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  auto exact = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  auto put = [&](std::string_view k, const std::string& v) { os << k << " = " << v << '\n'; };
  if (c.preset) put("preset", *c.preset);
  if (c.G_over_kappa) put("G-over-kappa", exact(*c.G_over_kappa));
  if (c.p) put("p", exact(*c.p));
  if (c.p_series) {
    std::string s;
    for (std::size_t i = 0; i < c.p_series->size(); ++i) s += (i ? "," : "") + exact((*c.p_series)[i]);
    put("p-series", s);
  }
  if (c.kappa) put("kappa", exact(*c.kappa));
  if (c.gamma) put("gamma", exact(*c.gamma));
  if (c.omega_m) put("omega-m", exact(*c.omega_m));
  if (c.omega_cav) put("omega-cav", exact(*c.omega_cav));
  if (c.T_bath) put("T-bath", exact(*c.T_bath));
  if (c.r) put("r", exact(*c.r));
  if (c.alpha) put("alpha", exact(*c.alpha));
  if (c.phi) put("phi", exact(*c.phi));
  if (c.method) put("method", *c.method);
  if (c.init_convention) put("init-convention", *c.init_convention);
  if (c.mech_bath) put("mech-bath", *c.mech_bath);
  if (c.steps) put("steps", std::to_string(*c.steps));
  if (c.axis) put("axis", *c.axis);
  if (c.grid) put("grid", *c.grid);
  if (c.out) put("out", *c.out);
  if (c.jobs) put("jobs", std::to_string(*c.jobs));
  return os.str();
}

// ---------------------------------------------------------------------------
// Presets

struct Preset {
  std::string_view name;
  std::string_view description;
  RunConfig config;
};

namespace detail {

inline RunConfig figure_base() {
  RunConfig c;
  c.kappa = model::figure::kappa;
  c.gamma = model::figure::gamma;
  c.omega_m = model::figure::omega_m;
  c.omega_cav = model::figure::omega_cav;
  c.T_bath = model::figure::T_bath;
  c.mech_bath = "cavity";
  c.init_convention = "vacuum";
  return c;
}

inline RunConfig squeezed_input(RunConfig c) {
  c.r = 1.0;
  c.alpha = 1.0;
  c.phi = std::numbers::pi / 4.0;
  return c;
}

inline RunConfig coherent_input(RunConfig c) {
  c.r = 0.0;
  c.alpha = 1.0;
  c.phi = 0.0;
  return c;
}

inline RunConfig figure_sweep(RunConfig c) {
  c.p_series = std::vector<double>{5.0, 0.0};
  c.axis = "G_over_kappa";
  c.grid = "linspace:0.5:30:120";
  c.method = "both";
  c.steps = 50000;
  return c;
}

inline RunConfig single(RunConfig c) {
  c.p = 5.0;
  return c;
}

}  // namespace detail

inline const std::vector<Preset>& presets() {
  using namespace detail;
  static const std::vector<Preset> all = [] {
    std::vector<Preset> v;
    const auto sq = squeezed_input(figure_base());
    const auto co = coherent_input(figure_base());
    v.push_back({"fig2a", "squeezed input (r=1, |alpha|=1, phi=pi/4), F vs G/kappa, p=5 and p=0", figure_sweep(sq)});
    v.push_back({"fig2b", "squeezed input, lambda vs G/kappa, p=5 and p=0", figure_sweep(sq)});
    v.push_back({"fig2c", "squeezed input, n_h vs G/kappa, p=5 and p=0", figure_sweep(sq)});
    v.push_back({"fig3a", "coherent input (r=0, alpha=1), F vs G/kappa, p=5 and p=0", figure_sweep(co)});
    v.push_back({"fig3b", "coherent input, lambda vs G/kappa, p=5 and p=0", figure_sweep(co)});
    v.push_back({"fig3c", "coherent input, n_h vs G/kappa, p=5 and p=0", figure_sweep(co)});
    v.push_back({"fig2", "squeezed-input figure parameters, p=5 (single experiment)", single(sq)});
    v.push_back({"fig2-base", "same as fig2", single(sq)});
    v.push_back({"fig3", "coherent-input figure parameters, p=5 (single experiment)", single(co)});
    v.push_back({"fig3-base", "same as fig3", single(co)});
    return v;
  }();
  return all;
}

inline const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

/// Expands the `preset` key: preset values first, then every value set in `c`.
inline RunConfig resolve(const RunConfig& c) {
  if (!c.preset) return c;
  const Preset* p = find_preset(*c.preset);
  if (!p) throw ConfigError(0, "preset: unknown preset '" + *c.preset + "'");
  return merge(p->config, c);
}

// ---------------------------------------------------------------------------
// Conversion to engine types

inline std::vector<simulator::Method> methods_of(const RunConfig& c, std::string_view fallback = "both") {
  const std::string m = c.method.value_or(std::string(fallback));
  if (m == "numeric") return {simulator::Method::numeric};
  if (m == "closed") return {simulator::Method::closed_form};
  return {simulator::Method::numeric, simulator::Method::closed_form};
}

/// Step count: explicit value, else GSTX_STEPS, else the library default.
inline std::size_t steps_of(const RunConfig& c) {
  if (c.steps) return *c.steps;
  if (const char* env = std::getenv("GSTX_STEPS")) {
    const auto v = parse_count(env);
    if (!v) throw ConfigError(0, "GSTX_STEPS: not a positive integer");
    return *v;
  }
  return simulator::kDefaultSteps;
}

/// Experiment template from a resolved config. p may be left unset when a
/// p-series is present; `require_G` controls whether G-over-kappa must be set.
inline sweep::ExperimentTemplate template_of(const RunConfig& c, bool require_G) {
  sweep::ExperimentTemplate t;
  if (c.G_over_kappa)
    t.G_over_kappa = *c.G_over_kappa;
  else if (require_G)
    throw model::ValidationError("G-over-kappa", "required");
  t.p = c.p.value_or(0.0);
  if (c.kappa) t.kappa = *c.kappa;
  if (c.gamma) t.gamma = *c.gamma;
  if (c.omega_m) t.omega_m = *c.omega_m;
  if (c.omega_cav) t.omega_cav = *c.omega_cav;
  if (c.T_bath) t.T_bath = *c.T_bath;
  t.mech_bath = c.mech_bath.value_or("cavity") == "mechanical" ? model::MechanicalBath::mechanical
                                                                : model::MechanicalBath::cavity;
  t.input.r = c.r.value_or(0.0);
  t.input.alpha_mag = c.alpha.value_or(0.0);
  t.input.phi = c.phi.value_or(0.0);
  t.init = c.init_convention.value_or("vacuum") == "thermal-springs" ? simulator::InitialConvention::thermal_springs
                                                                       : simulator::InitialConvention::vacuum_all_others;
  t.steps = steps_of(c);
  return t;
}

/// The p values to run: an explicit p wins over a preset's p-series.
inline std::vector<double> p_values(const RunConfig& c) {
  if (c.p) return {*c.p};
  if (c.p_series) return *c.p_series;
  throw model::ValidationError("p", "required");
}

inline std::string series_label(double p, std::size_t n_series) {
  if (n_series <= 1) return {};
  return "p=" + sweep::format_number(p);
}

/// One SweepSpec per p value.
inline std::vector<sweep::SweepSpec> sweep_specs_of(const RunConfig& c) {
  const auto axis = sweep::parse_axis(c.axis.value_or("G_over_kappa"));
  if (!axis) throw model::ValidationError("axis", "unknown axis");
  std::vector<double> grid;
  if (c.grid) {
    const auto g = parse_grid(*c.grid);
    if (!g) throw model::ValidationError("grid", "cannot parse");
    grid = *g;
  } else if (*axis == sweep::Axis::G_over_kappa) {
    grid = sweep::default_coupling_grid();
  } else {
    throw model::ValidationError("grid", "required for axis " + std::string(sweep::to_string(*axis)));
  }
  const bool sweeps_G = *axis == sweep::Axis::G_over_kappa;
  auto base = template_of(c, !sweeps_G);
  const auto ps = *axis == sweep::Axis::p ? std::vector<double>{c.p.value_or(0.0)} : p_values(c);
  std::vector<sweep::SweepSpec> specs;
  for (double p : ps) {
    sweep::SweepSpec s;
    s.label = *axis == sweep::Axis::p ? std::string{} : series_label(p, ps.size());
    s.base = base;
    s.base.p = p;
    s.axis = *axis;
    s.grid = grid;
    s.methods = methods_of(c);
    s.validate();
    specs.push_back(std::move(s));
  }
  return specs;
}

}  // namespace gstx::cli
