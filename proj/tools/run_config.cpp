#include "run_config.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "gnls/calibration.hpp"

namespace gnls::app {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field.empty() ? "<root>" : field, "must be a JSON object");
}

void reject_unknown(const json& j, const std::string& prefix, std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!keys.count(key)) throw ConfigError(prefix.empty() ? key : prefix + "." + key, "unknown field");
  }
}

std::string field_name(const std::string& prefix, const char* key) {
  return prefix.empty() ? std::string(key) : prefix + "." + key;
}

std::optional<double> get_number(const json& j, const std::string& prefix, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(field_name(prefix, key), "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(field_name(prefix, key), "must be finite");
  return d;
}

std::optional<long long> get_integer(const json& j, const std::string& prefix, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(field_name(prefix, key), "must be an integer");
  return v.get<long long>();
}

// Library validators phrase messages as "<section>.<field> must ...".
[[noreturn]] void rethrow_as_config(const std::invalid_argument& e) {
  const std::string msg = e.what();
  const auto space = msg.find(' ');
  const std::string head = msg.substr(0, space);
  if (space != std::string::npos && head.find('.') != std::string::npos)
    throw ConfigError(head, msg.substr(space + 1));
  throw ConfigError("<config>", msg);
}

bool calibrated_theta(double theta) { return theta == 0.25 || theta == 0.5 || theta == 0.75; }

double infinity() { return std::numeric_limits<double>::infinity(); }

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig

RunConfig RunConfig::from_json(const json& j) {
  require_object(j, "");
  reject_unknown(j, "", {"initial_data", "grid", "solver", "gevrey", "bootstrap", "output_dir", "seed", "snapshots"});
  RunConfig cfg;

  if (j.contains("initial_data")) {
    const json& d = j.at("initial_data");
    require_object(d, "initial_data");
    reject_unknown(d, "initial_data", {"kind", "amplitude", "width", "known_radius", "mode", "band", "seed"});
    InitialDataKind kind = InitialDataKind::sech;
    if (d.contains("kind")) {
      if (!d.at("kind").is_string()) throw ConfigError("initial_data.kind", "must be a string");
      const auto parsed = parse_initial_data_kind(d.at("kind").get<std::string>());
      if (!parsed)
        throw ConfigError("initial_data.kind",
                          "must be one of gaussian, sech, lorentzian, plane_wave, random_bandlimited");
      kind = *parsed;
    }
    cfg.initial_data = InitialDataSpec::make(kind, get_number(d, "initial_data", "amplitude").value_or(1.0),
                                             get_number(d, "initial_data", "width").value_or(1.0));
    if (auto r = get_number(d, "initial_data", "known_radius")) cfg.initial_data.known_radius = *r;
    if (auto m = get_integer(d, "initial_data", "mode")) cfg.initial_data.mode = static_cast<int>(*m);
    if (auto b = get_integer(d, "initial_data", "band")) cfg.initial_data.band = static_cast<int>(*b);
    if (auto s = get_integer(d, "initial_data", "seed")) {
      if (*s < 0) throw ConfigError("initial_data.seed", "must be nonnegative");
      cfg.initial_data.seed = static_cast<std::uint64_t>(*s);
    }
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    require_object(g, "grid");
    reject_unknown(g, "grid", {"n_modes", "half_length", "dealias_pad"});
    if (auto n = get_integer(g, "grid", "n_modes")) {
      if (*n < 2) throw ConfigError("grid.n_modes", "must be a power of two >= 2");
      cfg.grid.n_modes = static_cast<std::size_t>(*n);
    }
    if (auto l = get_number(g, "grid", "half_length")) cfg.grid.half_length = *l;
    if (auto pad = get_number(g, "grid", "dealias_pad")) cfg.grid.dealias_pad = *pad;
  }

  bool contraction_given = false;
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    require_object(s, "solver");
    reject_unknown(s, "solver", {"method", "p", "contraction_constant", "picard_tol", "max_picard_iters",
                                 "quadrature_nodes", "dt_reference", "norm_ceiling"});
    if (s.contains("method")) {
      const json& m = s.at("method");
      if (!m.is_string()) throw ConfigError("solver.method", "must be a string");
      const auto name = m.get<std::string>();
      if (name == "picard") cfg.method = Method::picard;
      else if (name == "splitstep") cfg.method = Method::splitstep;
      else throw ConfigError("solver.method", "must be \"picard\" or \"splitstep\"");
    }
    if (auto p = get_integer(s, "solver", "p")) {
      if (*p < 3 || *p % 2 == 0) throw ConfigError("solver.p", "must be an odd integer >= 3");
      cfg.solver.p = static_cast<int>(*p);
    }
    if (auto c = get_number(s, "solver", "contraction_constant")) {
      cfg.solver.contraction_constant = *c;
      contraction_given = true;
    }
    if (auto v = get_number(s, "solver", "picard_tol")) cfg.solver.picard_tol = *v;
    if (auto v = get_integer(s, "solver", "max_picard_iters")) cfg.solver.max_picard_iters = static_cast<int>(*v);
    if (auto v = get_integer(s, "solver", "quadrature_nodes")) cfg.solver.quadrature_nodes = static_cast<int>(*v);
    if (auto v = get_number(s, "solver", "dt_reference")) cfg.solver.dt_reference = *v;
    if (auto v = get_number(s, "solver", "norm_ceiling")) cfg.solver.norm_ceiling = *v;
  }
  if (!contraction_given) cfg.solver.contraction_constant = calibration::contraction_constant(cfg.solver.p);
  cfg.explicit_contraction = contraction_given;

  if (j.contains("gevrey")) {
    const json& g = j.at("gevrey");
    require_object(g, "gevrey");
    reject_unknown(g, "gevrey", {"sigma", "s"});
    if (g.contains("sigma")) {
      const json& v = g.at("sigma");
      if (v.is_string() && v.get<std::string>() == "budget") cfg.sigma.reset();
      else if (v.is_number()) cfg.sigma = v.get<double>();
      else throw ConfigError("gevrey.sigma", "must be a number or \"budget\"");
    }
    if (auto s = get_number(g, "gevrey", "s")) cfg.s = *s;
  }

  bool c_boot_given = false;
  if (j.contains("bootstrap")) {
    const json& b = j.at("bootstrap");
    require_object(b, "bootstrap");
    reject_unknown(b, "bootstrap", {"theta", "C_boot", "T", "epsilon"});
    if (auto v = get_number(b, "bootstrap", "theta")) cfg.bootstrap.theta = *v;
    if (auto v = get_number(b, "bootstrap", "C_boot")) {
      cfg.bootstrap.C_boot = *v;
      c_boot_given = true;
    }
    if (auto v = get_number(b, "bootstrap", "T")) cfg.bootstrap.T = *v;
    if (auto v = get_number(b, "bootstrap", "epsilon")) cfg.bootstrap.epsilon = *v;
  }
  cfg.explicit_C_boot = c_boot_given;
  cfg.resolve_defaults();

  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) throw ConfigError("output_dir", "must be a string");
    cfg.output_dir = j.at("output_dir").get<std::string>();
  }
  if (auto s = get_integer(j, "", "seed")) {
    if (*s < 0) throw ConfigError("seed", "must be nonnegative");
    cfg.seed = static_cast<unsigned long long>(*s);
  } else {
    cfg.seed = calibration::kDefaultSeed;
  }
  if (auto s = get_integer(j, "", "snapshots")) {
    if (*s < 0) throw ConfigError("snapshots", "must be nonnegative");
    cfg.snapshots = static_cast<int>(*s);
  }
  cfg.validate();
  return cfg;
}

void RunConfig::resolve_defaults() {
  if (!explicit_contraction) solver.contraction_constant = calibration::contraction_constant(solver.p);
  if (!explicit_C_boot && calibrated_theta(bootstrap.theta))
    bootstrap.C_boot = calibration::bootstrap_constant(bootstrap.theta);
}

RunConfig RunConfig::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("<file>", "cannot open " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

void RunConfig::validate() const {
  if (solver.p < 3 || solver.p % 2 == 0) throw ConfigError("solver.p", "must be an odd integer >= 3");
  try {
    initial_data.validate();
    grid.validate();
    solver.validate();
    bootstrap.validate();
  } catch (const std::invalid_argument& e) {
    rethrow_as_config(e);
  }
  if (!explicit_C_boot && !calibrated_theta(bootstrap.theta))
    throw ConfigError("bootstrap.C_boot", "required when bootstrap.theta is not 0.25, 0.5 or 0.75");
  if (!(s > 0.5)) throw ConfigError("gevrey.s", "must exceed 1/2");
  if (sigma) {
    if (!(*sigma >= 0.0)) throw ConfigError("gevrey.sigma", "must be nonnegative");
    const double cap = max_admissible_sigma(grid);
    if (*sigma > cap)
      throw ConfigError("gevrey.sigma", "exceeds the noise guard limit " + format_double(cap) + " for this grid");
  }
  if (output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

json RunConfig::to_json() const {
  json j;
  j["initial_data"] = {{"kind", to_string(initial_data.kind)},
                       {"amplitude", initial_data.amplitude},
                       {"width", initial_data.width},
                       {"mode", initial_data.mode},
                       {"band", initial_data.band},
                       {"seed", initial_data.seed}};
  if (initial_data.known_radius) j["initial_data"]["known_radius"] = *initial_data.known_radius;
  j["grid"] = {{"n_modes", grid.n_modes}, {"half_length", grid.half_length}, {"dealias_pad", grid.dealias_pad}};
  j["solver"] = {{"method", method == Method::picard ? "picard" : "splitstep"},
                 {"p", solver.p},
                 {"contraction_constant", solver.contraction_constant},
                 {"picard_tol", solver.picard_tol},
                 {"max_picard_iters", solver.max_picard_iters},
                 {"quadrature_nodes", solver.quadrature_nodes},
                 {"dt_reference", solver.dt_reference},
                 {"norm_ceiling", solver.norm_ceiling}};
  j["gevrey"] = {{"s", s}};
  if (sigma) j["gevrey"]["sigma"] = *sigma;
  else j["gevrey"]["sigma"] = "budget";
  j["bootstrap"] = {{"theta", bootstrap.theta},
                    {"C_boot", bootstrap.C_boot},
                    {"T", bootstrap.T},
                    {"epsilon", bootstrap.epsilon}};
  j["output_dir"] = output_dir.string();
  j["seed"] = seed;
  j["snapshots"] = snapshots;
  return j;
}

void apply_environment(RunConfig& cfg) {
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) cfg.output_dir = dir;
}

// ---------------------------------------------------------------------------
// Running a case

namespace {

std::optional<double> radius_or_empty(const SpectralField& f) {
  if (!(f.max_abs() > 0.0)) return std::nullopt;
  try {
    return estimate_radius(f).sigma;
  } catch (const InsufficientModes&) {
    return std::nullopt;
  }
}

Trajectory integrate(const RunConfig& cfg, const SpectralField& f, double sigma, std::size_t& segments) {
  const double T = cfg.bootstrap.T;
  if (cfg.method == Method::splitstep) {
    const auto steps = static_cast<std::size_t>(std::ceil(T / cfg.solver.dt_reference - 1e-9));
    Trajectory traj = splitstep_solve(f, T, cfg.solver, std::max<std::size_t>(1, steps / 200));
    traj.params = {sigma, cfg.s};
    segments = 0;
    return traj;
  }
  ContinuationResult run = continue_solution(f, T, {sigma, cfg.s}, cfg.solver);
  segments = run.segments.size();
  return std::move(run.trajectory);
}

}  // namespace

CaseResult run_case(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  CaseResult r;
  const int p = cfg.solver.p;
  try {
    const SpectralField f = cfg.initial_data.sample(cfg.grid);
    const bool zero = !(f.max_abs() > 0.0);

    BootstrapParams bp = cfg.bootstrap;
    bp.S0 = compute_S(f, 0.0, p).S;
    r.bootstrap_sigma = zero ? infinity() : bootstrap_sigma(bp, p);
    r.sigma_budget = zero ? max_admissible_sigma(cfg.grid) : consistent_bootstrap_sigma(f, bp, p);
    r.sigma = cfg.sigma.value_or(r.sigma_budget);
    check_noise_guard(cfg.grid, r.sigma);

    r.sigma_est_initial = radius_or_empty(f);
    const double sigma0 = cfg.initial_data.known_radius.value_or(r.sigma_est_initial.value_or(infinity()));
    r.sigma_final = zero ? sigma0 : sigma_final(sigma0, bp, p);

    if (!zero && r.sigma > 0.0) {
      r.n_bound_ratio = n_bound_ratio(f, r.sigma, p, bp.theta, false);
      r.grad_n_bound_ratio = n_bound_ratio(f, r.sigma, p, bp.theta, true);
    }

    r.trajectory = integrate(cfg, f, r.sigma, r.segments);
    r.records.reserve(r.trajectory.size());
    for (std::size_t i = 0; i < r.trajectory.size(); ++i)
      r.records.push_back(full_energy_record(r.trajectory.states[i], r.sigma, p, r.trajectory.times[i]));

    r.S0 = r.records.front().S;
    r.S_final = r.records.back().S;
    double max_s = 0.0;
    for (const auto& rec : r.records) max_s = std::max(max_s, rec.S);
    r.max_S_over_S0 = r.S0 > 0.0 ? max_s / r.S0 : 0.0;

    const BootstrapVerdict verdict = bootstrap_monitor(r.trajectory, r.sigma, p, r.S0);
    r.c_holds = verdict.pass;
    r.h_holds = !verdict.first_h_failure.has_value();
    r.first_c_failure = verdict.first_c_failure;
    r.first_h_failure = verdict.first_h_failure;
    r.min_sestimate_margin = check_sestimate(r.trajectory, r.sigma, bp.theta, bp.C_boot, p).min_margin();
    r.sigma_est_final = r.records.back().sigma_est;
    r.ok = true;
  } catch (const SolverError& e) {
    r.error = e.what();
    r.error_kind = SolverError::kind_name(e.kind());
  } catch (const NoiseGuardError& e) {
    r.error = e.what();
    r.error_kind = "NoiseGuard";
  } catch (const std::exception& e) {
    r.error = e.what();
    r.error_kind = "error";
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------------------
// Output

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string format_optional(const std::optional<double>& v, const char* empty = "inf") {
  return v ? format_double(*v) : std::string(empty);
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// JSON has no infinity; unbounded quantities are written as null.
json finite_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

const char* kEnergyPlot = R"(# gnuplot script for energy.csv
set datafile separator ','
set key autotitle columnhead
set terminal pngcairo size 1000,700
set output 'energy.png'
set multiplot layout 2,1
set xlabel 't'
set ylabel 'S(t)'
plot 'energy.csv' using 1:2 with lines lw 2, \
     '' using 1:3 with lines, \
     '' using 1:4 with lines, \
     '' using 1:5 with lines
set ylabel 'radius estimate'
plot 'energy.csv' using 1:8 with linespoints
unset multiplot
)";

}  // namespace

std::string energy_csv(const std::vector<EnergyRecord>& records) {
  std::ostringstream out;
  out << "t,S,mass,grad_term,potential_term,n_norm,grad_n_norm,sigma_est\n";
  for (const auto& r : records) {
    out << format_double(r.t) << ',' << format_double(r.S) << ',' << format_double(r.mass) << ','
        << format_double(r.grad_term) << ',' << format_double(r.potential_term) << ','
        << format_double(r.n_norm) << ',' << format_double(r.grad_n_norm) << ','
        << format_optional(r.sigma_est) << '\n';
  }
  return out.str();
}

json summary_json(const RunConfig& cfg, const CaseResult& r) {
  json j;
  j["status"] = r.ok ? "ok" : "error";
  j["verdict"] = !r.ok ? "ERROR" : (r.c_holds ? "PASS" : "FAIL");
  if (!r.ok) {
    j["error"] = r.error;
    j["error_kind"] = r.error_kind;
  }
  j["sigma"] = r.sigma;
  j["sigma_budget"] = finite_json(r.sigma_budget);
  j["bootstrap_sigma"] = finite_json(r.bootstrap_sigma);
  j["sigma_final"] = finite_json(r.sigma_final);
  j["S0"] = r.S0;
  j["S_final"] = r.S_final;
  j["max_S_over_S0"] = r.max_S_over_S0;
  j["C_holds"] = r.c_holds;
  j["H_holds"] = r.h_holds;
  j["first_C_failure"] = optional_json(r.first_c_failure);
  j["first_H_failure"] = optional_json(r.first_h_failure);
  j["min_sestimate_margin"] = r.min_sestimate_margin;
  j["n_bound_ratio"] = optional_json(r.n_bound_ratio);
  j["grad_n_bound_ratio"] = optional_json(r.grad_n_bound_ratio);
  j["sigma_est_initial"] = optional_json(r.sigma_est_initial);
  j["sigma_est_final"] = optional_json(r.sigma_est_final);
  j["samples"] = r.records.size();
  j["segments"] = r.segments;
  j["wall_time_s"] = r.wall_time;
  j["config"] = cfg.to_json();
  return j;
}

json write_solve_artifacts(const RunConfig& cfg, const CaseResult& r) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const json summary = summary_json(cfg, r);
  write_file(cfg.output_dir / "summary.json", summary.dump(2) + "\n");
  if (!r.ok) return summary;

  write_file(cfg.output_dir / "energy.csv", energy_csv(r.records));
  write_file(cfg.output_dir / "plot.gp", kEnergyPlot);

  if (cfg.snapshots > 0 && !r.trajectory.empty()) {
    const fs::path dir = cfg.output_dir / "snapshots";
    fs::create_directories(dir);
    const std::size_t n = r.trajectory.size();
    const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(cfg.snapshots), n);
    std::ostringstream index;
    index << "file,t\n";
    std::size_t previous = n;
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t i = count == 1 ? n - 1 : (k * (n - 1)) / (count - 1);
      if (i == previous) continue;
      previous = i;
      char name[48];
      std::snprintf(name, sizeof name, "snapshot_%04zu.csv", k);
      const SpatialField u = to_spatial(r.trajectory.states[i]);
      std::ostringstream out;
      out << "x,re,im,abs\n";
      for (std::size_t j = 0; j < u.size(); ++j) {
        const Complex z = u.samples()[j];
        out << format_double(cfg.grid.x(j)) << ',' << format_double(z.real()) << ','
            << format_double(z.imag()) << ',' << format_double(std::abs(z)) << '\n';
      }
      write_file(dir / name, out.str());
      index << name << ',' << format_double(r.trajectory.times[i]) << '\n';
    }
    write_file(dir / "index.csv", index.str());
  }
  return summary;
}

// ---------------------------------------------------------------------------
// Sweeps

RunConfig with_axis(const RunConfig& base, const std::string& axis, double value) {
  RunConfig cfg = base;
  if (axis == "sigma") cfg.sigma = value;
  else if (axis == "theta") cfg.bootstrap.theta = value;
  else if (axis == "T") cfg.bootstrap.T = value;
  else if (axis == "amplitude") cfg.initial_data.amplitude = value;
  else if (axis == "p") {
    if (value != std::round(value) || value < 3 || static_cast<long long>(value) % 2 == 0)
      throw ConfigError("p", "sweep values must be odd integers >= 3");
    cfg.solver.p = static_cast<int>(value);
  } else {
    throw ConfigError("axis", "must be one of sigma, theta, T, p, amplitude");
  }
  cfg.resolve_defaults();
  cfg.validate();
  return cfg;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> values;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    const std::string token = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || !std::isfinite(v)) throw ConfigError("values", "not a number: " + token);
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError("values", "empty value list");
  return values;
}

SweepResult run_sweep(const RunConfig& base, const std::string& axis, const std::vector<double>& values,
                      unsigned threads) {
  if (values.empty()) throw ConfigError("values", "empty value list");
  std::vector<RunConfig> configs;
  configs.reserve(values.size());
  for (double v : values) configs.push_back(with_axis(base, axis, v));

  SweepResult out;
  out.values = values;
  out.cases.resize(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      CaseResult r = run_case(configs[i]);
      r.trajectory = {};  // rows only
      r.records = {};
      out.cases[i] = std::move(r);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << axis << ",status,sigma,sigma_budget,bootstrap_sigma,sigma_final,S0,S_final,max_S_over_S0,C_holds,"
      << "n_bound_ratio,grad_n_bound_ratio,sigma_est_initial,sigma_est_final,min_sestimate_margin,segments,error\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const CaseResult& r = out.cases[i];
    if (!r.ok) ++out.failures;
    csv << format_double(values[i]) << ',' << (r.ok ? "ok" : r.error_kind) << ',' << format_double(r.sigma) << ','
        << format_double(r.sigma_budget) << ',' << format_double(r.bootstrap_sigma) << ','
        << format_double(r.sigma_final) << ',' << format_double(r.S0) << ',' << format_double(r.S_final) << ','
        << format_double(r.max_S_over_S0) << ',' << (r.c_holds ? 1 : 0) << ','
        << format_optional(r.n_bound_ratio, "") << ',' << format_optional(r.grad_n_bound_ratio, "") << ','
        << format_optional(r.sigma_est_initial) << ',' << format_optional(r.sigma_est_final) << ','
        << format_double(r.min_sestimate_margin) << ',' << r.segments << ',' << csv_quote(r.error) << '\n';
  }
  out.csv = csv.str();
  return out;
}

void write_sweep_artifacts(const RunConfig& base, const std::string& axis, const SweepResult& sweep) {
  std::filesystem::create_directories(base.output_dir);
  write_file(base.output_dir / "sweep.csv", sweep.csv);
  std::ostringstream gp;
  gp << "# gnuplot script for sweep.csv\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set terminal pngcairo size 1000,700\n"
     << "set output 'sweep.png'\n"
     << "set logscale xy\n"
     << "set xlabel '" << axis << "'\n"
     << "set ylabel 'sigma'\n"
     << "plot 'sweep.csv' using 1:5 with linespoints title 'bootstrap_sigma', \\\n"
     << "     '' using 1:6 with linespoints title 'sigma_final', \\\n"
     << "     '' using 1:14 with linespoints title 'sigma_est_final'\n";
  write_file(base.output_dir / "sweep.gp", gp.str());
}

}  // namespace gnls::app
