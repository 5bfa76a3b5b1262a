// Command-line frontend for the ppnatom shared library.  Subcommands expose
// the verification suites and physics sweeps; all output is deterministic for
// a fixed configuration (no wall clock, fixed iteration order, fixed
// formatting).  Exit codes: 0 = all checks pass, 1 = a physics check failed,
// 2 = configuration error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppnatom/ppnatom.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPhysics = 1;
constexpr int kExitConfig = 2;

[[noreturn]] void config_error(const std::string& what) {
  std::fprintf(stderr, "ppnatom: configuration error: %s\n", what.c_str());
  std::exit(kExitConfig);
}

void check(ppn_status status, const char* where) {
  if (status != PPN_OK) {
    std::fprintf(stderr, "ppnatom: %s: %s (%s)\n", where, ppn_last_error(),
                 ppn_status_name(status));
    std::exit(status == PPN_ERR_INVALID_ARGUMENT ? kExitConfig : kExitPhysics);
  }
}

// 17 significant digits, scientific notation: round-trips doubles exactly.
std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.16e", v);
  return buffer;
}

// Flat TOML-style key-value file: [section] headers, key = value lines,
// '#' comments.  Values stay strings; flags override entries.
class Config {
 public:
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open config file: " + path);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto trim = [](std::string s) {
        const auto begin = s.find_first_not_of(" \t\r");
        const auto end = s.find_last_not_of(" \t\r");
        return begin == std::string::npos ? std::string{} : s.substr(begin, end - begin + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') config_error("bad section header at line " + std::to_string(lineno));
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) config_error("expected key = value at line " + std::to_string(lineno));
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      values_[section.empty() ? key : section + "." + key] = value;
    }
  }

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string str(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }
  double num(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument(it->second);
      return v;
    } catch (...) {
      config_error("not a number: " + key + " = " + it->second);
    }
  }
  int integer(const std::string& key, int fallback) const {
    return static_cast<int>(num(key, fallback));
  }
  std::vector<double> list(const std::string& key, const std::vector<double>& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    std::string token;
    std::stringstream ss(it->second);
    while (std::getline(ss, token, ',')) {
      try {
        out.push_back(std::stod(token));
      } catch (...) {
        config_error("bad list entry in " + key + ": " + token);
      }
    }
    if (out.empty()) config_error("empty list: " + key);
    return out;
  }
  void vec3(const std::string& key, double out[3]) const {
    const auto v = list(key, {out[0], out[1], out[2]});
    if (v.size() != 3) config_error(key + " needs exactly three components");
    out[0] = v[0];
    out[1] = v[1];
    out[2] = v[2];
  }

 private:
  std::map<std::string, std::string> values_;
};

struct ContextHandle {
  ppn_context* ctx = nullptr;
  ~ContextHandle() { ppn_context_destroy(ctx); }
};

ppn_context* make_context(const Config& cfg) {
  double grad[3] = {0.0, 0.0, 0.0};
  cfg.vec3("ppn.grad_phi", grad);
  ppn_context* ctx = nullptr;
  check(ppn_context_create(cfg.num("units.c", 137.035999),
                           cfg.num("units.epsilon0", 1.0 / (4.0 * 3.14159265358979323846)),
                           cfg.num("units.hbar", 1.0), cfg.num("ppn.gamma", 1.0),
                           cfg.num("ppn.beta", 1.0), cfg.num("ppn.phi_over_c2", 0.0), grad, &ctx),
        "context");
  return ctx;
}

// Output path resolution: '-' is stdout; relative paths are placed under
// $PPNATOM_OUTPUT_DIR when that is set.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-") {
      file_ = stdout;
      return;
    }
    std::string resolved = path;
    const char* dir = std::getenv("PPNATOM_OUTPUT_DIR");
    if (dir && *dir && path.front() != '/') resolved = std::string(dir) + "/" + path;
    file_ = std::fopen(resolved.c_str(), "w");
    if (!file_) config_error("cannot open output file: " + resolved);
    owned_ = true;
  }
  ~Output() {
    if (owned_) std::fclose(file_);
  }
  void write(const std::string& s) { std::fputs(s.c_str(), file_); }

 private:
  std::FILE* file_ = nullptr;
  bool owned_ = false;
};

// ---------------------------------------------------------------- commands

int cmd_order_check(const Config& cfg) {
  const double c = cfg.num("units.c", 137.035999);
  const double gamma = cfg.num("ppn.gamma", 1.0);
  const double beta = cfg.num("ppn.beta", 1.0);
  // probes certify the gravitational terms, so the default background is
  // nontrivial; an explicit zero still yields valid (flat-sector) probes
  const double chi = cfg.num("ppn.phi_over_c2", -1.0e-3);
  const double m1 = cfg.num("atom.m1", 1.0);
  const double m2 = cfg.num("atom.m2", 2.0);
  const double e = cfg.num("atom.e", 1.0);
  const auto seed = static_cast<uint64_t>(cfg.num("run.seed", 0.0));
  const std::string format = cfg.str("run.format", "csv");

  Output out(cfg.str("run.out", "-"));
  nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
  if (format == "csv") out.write("name,slope,target,r_squared,verdict\n");

  bool all_passed = true;
  const size_t count = ppn_order_probe_count();
  for (size_t i = 0; i < count; ++i) {
    ppn_probe_record rec;
    check(ppn_order_probe_run(i, c, gamma, beta, chi, m1, m2, e, seed, &rec), "order probe");
    all_passed = all_passed && rec.passed;
    if (format == "csv") {
      out.write(std::string(rec.name) + "," + fmt(rec.slope) + "," + fmt(rec.target) + "," +
                fmt(rec.r_squared) + "," + rec.verdict + "\n");
    } else {
      nlohmann::ordered_json j;
      j["name"] = rec.name;
      j["slope"] = rec.slope;
      j["target"] = rec.target;
      j["r_squared"] = rec.r_squared;
      j["verdict"] = rec.verdict;
      jrows.push_back(j);
    }
  }
  if (format == "json") out.write(jrows.dump(2) + "\n");
  return all_passed ? kExitOk : kExitPhysics;
}

int cmd_spectrum(const Config& cfg) {
  const int n_levels = cfg.integer("spectrum.levels", 3);
  const int l_max = cfg.integer("spectrum.lmax", 0);
  const std::string parameter = cfg.str("spectrum.sweep_parameter", "phi_over_c2");
  const auto sweep = cfg.list("spectrum.sweep_values", {cfg.num("ppn.phi_over_c2", 0.0)});
  const std::string format = cfg.str("run.format", "csv");

  Output out(cfg.str("run.out", "-"));
  nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
  if (format == "csv") {
    out.write(parameter + ",n,l,e_coord,de_p4,de_cross,mass_defect,omega_proper\n");
  }

  for (double value : sweep) {
    Config local = cfg;
    local.set("ppn." + parameter, fmt(value));
    ContextHandle handle{make_context(local)};

    std::vector<ppn_level_row> rows(static_cast<size_t>(n_levels) * (l_max + 1));
    size_t n_rows = 0;
    check(ppn_internal_levels(handle.ctx, local.num("atom.m1", 1.0),
                              local.num("atom.m2", 1836.152673), local.num("atom.e", 1.0),
                              n_levels, l_max, rows.data(), &n_rows),
          "internal levels");
    for (size_t i = 0; i < n_rows; ++i) {
      const auto& r = rows[i];
      if (format == "csv") {
        out.write(fmt(value) + "," + std::to_string(r.n) + "," + std::to_string(r.l) + "," +
                  fmt(r.e_coord) + "," + fmt(r.de_p4) + "," + fmt(r.de_cross) + "," +
                  fmt(r.mass_defect) + "," + fmt(r.omega_proper) + "\n");
      } else {
        nlohmann::ordered_json j;
        j[parameter] = value;
        j["n"] = r.n;
        j["l"] = r.l;
        j["e_coord"] = r.e_coord;
        j["de_p4"] = r.de_p4;
        j["de_cross"] = r.de_cross;
        j["mass_defect"] = r.mass_defect;
        j["omega_proper"] = r.omega_proper;
        jrows.push_back(j);
      }
    }
  }
  if (format == "json") out.write(jrows.dump(2) + "\n");
  return kExitOk;
}

int cmd_trajectory(const Config& cfg) {
  ContextHandle handle{make_context(cfg)};

  ppn_trajectory_spec spec{};
  spec.mass_bare = cfg.num("trajectory.mass", cfg.num("atom.m1", 1.0) + cfg.num("atom.m2", 1.0));
  spec.internal_energy = cfg.num("trajectory.internal_energy", 0.0);
  cfg.vec3("trajectory.r0", spec.R0);
  cfg.vec3("trajectory.p0", spec.P0);
  spec.phi0 = cfg.num("trajectory.phi0", 0.0);
  cfg.vec3("trajectory.g", spec.grad_phi);
  spec.time_step = cfg.num("trajectory.dt", 1.0e-2);
  spec.steps = cfg.integer("trajectory.steps", 1000);
  spec.sample_stride = cfg.integer("trajectory.stride", 10);
  const bool strict = cfg.integer("trajectory.strict", 0) != 0;
  const bool differential = cfg.has("trajectory.internal_energy_b");

  const size_t capacity = static_cast<size_t>(spec.steps / spec.sample_stride) + 2;
  std::vector<double> t(capacity), R(3 * capacity), P(3 * capacity), H(capacity);
  size_t n = 0;
  double drift = 0.0;
  check(ppn_integrate_composite(handle.ctx, &spec, t.data(), R.data(), P.data(), H.data(), &n,
                                &drift),
        "trajectory");

  Output out(cfg.str("run.out", "-"));
  if (!differential) {
    out.write("t,Rx,Ry,Rz,Px,Py,Pz,H\n");
    for (size_t i = 0; i < n; ++i) {
      out.write(fmt(t[i]) + "," + fmt(R[3 * i]) + "," + fmt(R[3 * i + 1]) + "," +
                fmt(R[3 * i + 2]) + "," + fmt(P[3 * i]) + "," + fmt(P[3 * i + 1]) + "," +
                fmt(P[3 * i + 2]) + "," + fmt(H[i]) + "\n");
    }
  } else {
    ppn_trajectory_spec spec_b = spec;
    spec_b.internal_energy = cfg.num("trajectory.internal_energy_b", 0.0);
    std::vector<double> tb(capacity), Rb(3 * capacity), Pb(3 * capacity), Hb(capacity);
    size_t nb = 0;
    double drift_b = 0.0;
    check(ppn_integrate_composite(handle.ctx, &spec_b, tb.data(), Rb.data(), Pb.data(), Hb.data(),
                                  &nb, &drift_b),
          "trajectory (second atom)");
    drift = drift > drift_b ? drift : drift_b;

    out.write("t,separation,Rx_a,Ry_a,Rz_a,Rx_b,Ry_b,Rz_b\n");
    double max_sep = 0.0;
    for (size_t i = 0; i < n && i < nb; ++i) {
      const double dx = R[3 * i] - Rb[3 * i];
      const double dy = R[3 * i + 1] - Rb[3 * i + 1];
      const double dz = R[3 * i + 2] - Rb[3 * i + 2];
      const double sep = std::sqrt(dx * dx + dy * dy + dz * dz);
      max_sep = sep > max_sep ? sep : max_sep;
      out.write(fmt(t[i]) + "," + fmt(sep) + "," + fmt(R[3 * i]) + "," + fmt(R[3 * i + 1]) + "," +
                fmt(R[3 * i + 2]) + "," + fmt(Rb[3 * i]) + "," + fmt(Rb[3 * i + 1]) + "," +
                fmt(Rb[3 * i + 2]) + "\n");
    }
    std::fprintf(stderr, "ppnatom: max trajectory separation %s (mass-defect differential)\n",
                 fmt(max_sep).c_str());
  }

  std::fprintf(stderr, "ppnatom: relative energy drift %s\n", fmt(drift).c_str());
  if (strict && !(drift <= 1.0e-6)) {  // NaN-safe
    std::fprintf(stderr, "ppnatom: warning: drift above 1e-6 in strict mode\n");
    return kExitPhysics;
  }
  return kExitOk;
}

int cmd_hamiltonian_report(const Config& cfg) {
  ContextHandle handle{make_context(cfg)};
  const int points = cfg.integer("report.points", 4);
  const int final_form = cfg.integer("report.final", 1);
  const auto seed = static_cast<uint64_t>(cfg.num("run.seed", 0.0));
  const double m1 = cfg.num("atom.m1", 1.0);
  const double m2 = cfg.num("atom.m2", 1836.152673);
  const double e = cfg.num("atom.e", 1.0);
  const std::string format = cfg.str("run.format", "json");

  Output out(cfg.str("run.out", "-"));
  nlohmann::ordered_json jout = nlohmann::ordered_json::array();
  if (format == "csv") out.write("point,central,internal,atom_light,field,cross,total\n");

  for (int i = 0; i < points; ++i) {
    ppn_com_state state;
    check(ppn_sample_phase_point(handle.ctx, seed, static_cast<uint64_t>(i), m1, m2, e, 0.05,
                                 &state),
          "phase sampling");
    if (format == "csv") {
      ppn_h_groups groups;
      check(ppn_h_com_groups(handle.ctx, nullptr, &state, final_form, 0.0, &groups),
            "hamiltonian groups");
      out.write(std::to_string(i) + "," + fmt(groups.central) + "," + fmt(groups.internal) +
                "," + fmt(groups.atom_light) + "," + fmt(groups.field) + "," +
                fmt(groups.cross) + "," + fmt(groups.total) + "\n");
      continue;
    }
    char* json_text = nullptr;
    check(ppn_h_com_report_json(handle.ctx, nullptr, &state, final_form, 0.0, &json_text),
          "hamiltonian report");
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(json_text);
    ppn_string_free(json_text);
    j["point"] = i;
    nlohmann::ordered_json jstate;
    jstate["R"] = {state.R[0], state.R[1], state.R[2]};
    jstate["P"] = {state.P[0], state.P[1], state.P[2]};
    jstate["r"] = {state.r[0], state.r[1], state.r[2]};
    jstate["p_r"] = {state.p_r[0], state.p_r[1], state.p_r[2]};
    j["state"] = jstate;

    // companion operations at the same phase point
    const double M = state.m1 + state.m2;
    double lab_p1[3], lab_p2[3], lab_r1[3], lab_r2[3];
    for (int a = 0; a < 3; ++a) {
      lab_p1[a] = state.m1 / M * state.P[a] + state.p_r[a];
      lab_p2[a] = state.m2 / M * state.P[a] - state.p_r[a];
      lab_r1[a] = state.R[a] + state.m2 / M * state.r[a];
      lab_r2[a] = state.R[a] - state.m1 / M * state.r[a];
    }
    double h_lab = 0.0;
    check(ppn_h_lab(handle.ctx, nullptr, state.m1, state.m2, e, lab_r1, lab_r2, lab_p1, lab_p2,
                    0.0, &h_lab),
          "lab hamiltonian");
    j["h_lab"] = h_lab;
    ppn_h_groups groups;
    check(ppn_h_com_groups(handle.ctx, nullptr, &state, 1, 0.0, &groups), "groups");
    const double c = cfg.num("units.c", 137.035999);
    double h_pt = 0.0;
    check(ppn_h_point(handle.ctx, state.P, state.R, M + groups.internal / (c * c), &h_pt),
          "point hamiltonian");
    j["h_point_composite"] = h_pt;
    double identity_residual = 0.0;
    check(ppn_composite_identity_residual(handle.ctx, &state, &identity_residual),
          "identity residual");
    j["composite_identity_residual"] = identity_residual;
    jout.push_back(j);
  }

  if (format != "csv") out.write(jout.dump(2) + "\n");
  return kExitOk;
}

int cmd_maxwell_residual(const Config& cfg) {
  ContextHandle handle{make_context(cfg)};
  const double e = cfg.num("atom.e", 1.0);
  const double separation = cfg.num("maxwell.separation", 1.0);
  const double extent = cfg.num("maxwell.extent", 8.0);
  const double sigma = cfg.num("maxwell.sigma", cfg.num("maxwell.spacing", 0.25) * 4.0);
  const int refinements = cfg.integer("maxwell.refinements", 3);
  double spacing = cfg.num("maxwell.spacing", 0.25);

  const double positions[6] = {-0.5 * separation, 0.0, 0.0, 0.5 * separation, 0.0, 0.0};
  const double charges[2] = {-e, e};
  const double box_min[3] = {-0.5 * extent, -0.5 * extent, -0.5 * extent};

  Output out(cfg.str("run.out", "-"));
  out.write("h,residual,order_estimate\n");
  double previous = 0.0;
  bool order_ok = true;
  for (int i = 0; i < refinements; ++i) {
    double residual = 0.0;
    check(ppn_poisson_residual(handle.ctx, 2, positions, charges, sigma, box_min, extent, spacing,
                               &residual),
          "poisson residual");
    std::string order = "";
    if (i > 0) {
      const double estimate = std::log2(previous / residual);
      order = fmt(estimate);
      order_ok = order_ok && estimate > 1.8 && estimate < 2.2;
    }
    out.write(fmt(spacing) + "," + fmt(residual) + "," + order + "\n");
    previous = residual;
    spacing *= 0.5;
  }
  return order_ok ? kExitOk : kExitPhysics;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"post-Newtonian two-particle system in a PPN background"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  std::string config_path;
  app.add_option("--config", config_path, "key-value configuration file");

  // flag overrides collected as (key, value) pairs applied over the file
  std::vector<std::pair<std::string, std::string>> overrides;
  auto add_override = [&](const std::string& flag, const std::string& key, const char* help) {
    app.add_option_function<std::string>(
        flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); }, help);
  };
  add_override("--gamma", "ppn.gamma", "Eddington-Robertson gamma");
  add_override("--beta", "ppn.beta", "Eddington-Robertson beta");
  add_override("--phi-over-c2", "ppn.phi_over_c2", "phi/c^2 at the centre of mass");
  add_override("--grad-phi", "ppn.grad_phi", "gradient of phi (three comma-separated values)");
  add_override("--c", "units.c", "speed of light in code units");
  add_override("--hbar", "units.hbar", "reduced Planck constant");
  add_override("--epsilon0", "units.epsilon0", "vacuum permittivity");
  add_override("--m1", "atom.m1", "mass of particle 1");
  add_override("--m2", "atom.m2", "mass of particle 2");
  add_override("--e", "atom.e", "charge magnitude");
  add_override("--seed", "run.seed", "seed for phase-point sampling");
  add_override("--format", "run.format", "output format: csv or json");
  add_override("--out", "run.out", "output path ('-' = stdout)");

  auto* order = app.add_subcommand("order-check", "run the order-scaling probe suite");
  auto* spectrum = app.add_subcommand("spectrum", "internal spectrum over a parameter sweep");
  add_override("--levels", "spectrum.levels", "number of levels per l");
  add_override("--lmax", "spectrum.lmax", "largest angular momentum");
  add_override("--sweep-parameter", "spectrum.sweep_parameter", "ppn parameter to sweep");
  add_override("--sweep-values", "spectrum.sweep_values", "comma-separated sweep values");
  auto* trajectory = app.add_subcommand("trajectory", "composite point particle free fall");
  add_override("--steps", "trajectory.steps", "integration steps");
  add_override("--dt", "trajectory.dt", "time step");
  add_override("--stride", "trajectory.stride", "sampling stride");
  add_override("--r0", "trajectory.r0", "initial position");
  add_override("--p0", "trajectory.p0", "initial momentum");
  add_override("--phi0", "trajectory.phi0", "potential at the origin");
  add_override("--profile-g", "trajectory.g", "linear potential gradient");
  add_override("--mass", "trajectory.mass", "bare mass M");
  add_override("--internal-energy", "trajectory.internal_energy", "internal energy of atom a");
  add_override("--internal-energy-b", "trajectory.internal_energy_b",
               "internal energy of atom b (differential mode)");
  add_override("--strict", "trajectory.strict", "nonzero exit on energy drift (1/0)");
  auto* report = app.add_subcommand("hamiltonian-report", "term-by-term Hamiltonian dump");
  add_override("--points", "report.points", "number of sampled phase points");
  add_override("--final", "report.final", "final form (1) or pre-EM split (0)");
  auto* maxwell = app.add_subcommand("maxwell-residual", "Poisson residual grid study");
  add_override("--spacing", "maxwell.spacing", "coarsest grid spacing");
  add_override("--refinements", "maxwell.refinements", "number of h -> h/2 refinements");
  add_override("--sigma", "maxwell.sigma", "Gaussian smearing width");
  add_override("--extent", "maxwell.extent", "grid box side");
  add_override("--separation", "maxwell.separation", "charge separation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  Config cfg;
  if (!config_path.empty()) cfg.load_file(config_path);
  for (const auto& [key, value] : overrides) cfg.set(key, value);

  if (order->parsed()) return cmd_order_check(cfg);
  if (spectrum->parsed()) return cmd_spectrum(cfg);
  if (trajectory->parsed()) return cmd_trajectory(cfg);
  if (report->parsed()) return cmd_hamiltonian_report(cfg);
  if (maxwell->parsed()) return cmd_maxwell_residual(cfg);
  return kExitConfig;
}
