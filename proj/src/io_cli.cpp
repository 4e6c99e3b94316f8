// SPDX-License-Identifier: Apache-2.0
#include "dieres/io_cli.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "dieres/mie.hpp"
#include "dieres/quasistatic.hpp"

namespace dieres {

using nlohmann::json;
using std::numbers::pi;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

cplx read_complex(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw DomainError("complex values are a number or [re, im], got " + v.dump());
}

Vec3 read_vec3(const json& v) {
  if (!v.is_array() || v.size() != 3) throw DomainError("expected a 3-vector, got " + v.dump());
  return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

Grid read_grid(const json& v) {
  Grid g;
  g.start = v.at("start").get<double>();
  g.stop = v.at("stop").get<double>();
  g.count = v.at("count").get<int>();
  return g;
}

void check_increasing(const std::vector<double>& v, const std::string& what) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw DomainError(what + " must be strictly increasing");
}

// -------------------------------------------------------------------------

void push_complex(std::vector<double>& row, cplx z) {
  row.push_back(z.real());
  row.push_back(z.imag());
}

std::vector<std::string> complex_columns(const std::string& name) { return {"re_" + name, "im_" + name}; }

IncidentWave wave_for(const RunConfig& c, double omega) { return IncidentWave(c.direction, c.polarization, omega); }

std::vector<double> theta_values(const RunConfig& c) {
  if (c.n_theta <= 1) return {c.theta};
  std::vector<double> v;
  for (int i = 0; i < c.n_theta; ++i) v.push_back(pi * (i + 0.5) / c.n_theta);
  return v;
}

std::vector<double> phi_values(const RunConfig& c) {
  if (c.n_phi <= 1) return {c.phi};
  std::vector<double> v;
  for (int i = 0; i < c.n_phi; ++i) v.push_back(2 * pi * i / c.n_phi);
  return v;
}

double single_omega(const RunConfig& c) {
  const auto w = c.resolved_omegas();
  if (w.size() != 1) throw DomainError(c.command + " needs exactly one frequency");
  return w.front();
}

const CommandInfo& info(const std::string& name) {
  for (const auto& ci : commands())
    if (ci.name == name) return ci;
  throw DomainError("unknown command '" + name + "'");
}

CsvTable make_table(const std::string& name, std::vector<std::string> header) {
  const CommandInfo& ci = info(name);
  return CsvTable(name + ": " + ci.columns, std::move(header));
}

CsvTable cmd_bessel_zeros(const RunConfig& c) {
  CsvTable t = make_table(c.command, {"s", "k"});
  for (int s = 1; s <= c.count; ++s) t.add_row({double(s), bessel_zero(c.order, s)});
  return t;
}

CsvTable cmd_spectrum(const RunConfig& c) {
  CsvTable t = make_table(c.command, {"index", "k", "lambda", "family_n", "s", "multiplicity"});
  int i = 0;
  for (const auto& e : sphere_spectrum(c.count))
    t.add_row({double(++i), e.k, e.lambda, double(e.family_n), double(e.zero_index_s), double(e.multiplicity)});
  return t;
}

CsvTable cmd_resonance(const RunConfig& c) {
  CsvTable t = make_table(c.command, {"delta", "re_omega", "im_omega", "residual", "iterations", "re_seed", "im_seed"});
  const double d = c.resolved_delta();
  const auto r = find_resonance(c.family, c.n, c.s, d, c.resolved_model(), c.tol);
  std::vector<double> row{d};
  push_complex(row, r.omega);
  row.push_back(r.residual);
  row.push_back(r.iterations);
  push_complex(row, r.seed);
  t.add_row(row);
  return t;
}

CsvTable cmd_resonance_sweep(const RunConfig& c) {
  CsvTable t = make_table(c.command, {"delta", "re_omega", "im_omega", "residual", "iterations", "qs_seed", "abs_err_vs_pi"});
  if (c.deltas.empty()) throw DomainError("resonance-sweep needs a list of deltas");
  const ContrastModel model = c.resolved_model();
  const cplx limit = quasi_static_prediction(c.family, c.n, c.s, model, 0.0);
  for (const auto& p : sweep_resonance(c.family, c.n, c.s, c.deltas, model, c.tol)) {
    if (p.root) {
      t.add_row({p.delta, p.root->omega.real(), p.root->omega.imag(), p.root->residual, double(p.root->iterations),
                 p.prediction.real(), std::abs(p.root->omega - limit)});
    } else {
      t.add_row({p.delta, kNaN, kNaN, kNaN, kNaN, p.prediction.real(), kNaN});
      t.add_note("failed at delta " + format_double(p.delta) + ": " + p.error);
    }
  }
  return t;
}

CsvTable cmd_mie(const RunConfig& c) {
  CsvTable t = make_table(c.command, {"n", "m", "re_gamma", "im_gamma", "re_eta", "im_eta"});
  const double w = single_omega(c);
  ScatterConfig cfg;
  cfg.delta = c.resolved_delta();
  cfg.tau = c.resolved_model().evaluate(cfg.delta);
  cfg.omega = w;
  cfg.n_max = c.n_max;
  const MieTable mt = mie_coefficients(cfg, wave_for(c, w));
  for (int n = 1; n <= mt.n_max(); ++n)
    for (int m = -n; m <= n; ++m) {
      std::vector<double> row{double(n), double(m)};
      push_complex(row, mt.gamma(n, m));
      push_complex(row, mt.eta(n, m));
      t.add_row(row);
    }
  return t;
}

CsvTable cmd_cross_sections(const RunConfig& c) {
  CsvTable t = make_table(c.command, {"omega", "Qs", "Qext", "Qabs", "n_max", "converged"});
  const double d = c.resolved_delta();
  const cplx tau = c.resolved_model().evaluate(d);
  const auto omegas = c.resolved_omegas();
  const auto rows = parallel_map<std::vector<double>>(
      omegas.size(),
      [&](std::size_t i) {
        ScatterConfig cfg;
        cfg.delta = d;
        cfg.tau = tau;
        cfg.omega = omegas[i];
        cfg.n_max = c.n_max;
        const auto r = cross_sections(mie_coefficients(cfg, wave_for(c, omegas[i])));
        return std::vector<double>{omegas[i], r.Qs, r.Qext, r.Qabs, double(r.n_max_used), r.converged ? 1.0 : 0.0};
      },
      sweep_threads());
  for (const auto& r : rows) t.add_row(r);
  return t;
}

CsvTable cmd_scatter_functions(const RunConfig& c) {
  CsvTable t = make_table(c.command, {"omega", "re_s_tilde", "im_s_tilde", "re_s_hat", "im_s_hat"});
  const double d = c.resolved_delta();
  const ContrastModel model = c.resolved_model();
  const cplx tau = model.evaluate(d);
  const cplx w0 = bessel_zero(0, 1) / std::sqrt(model.c_tau);
  const auto omegas = c.resolved_omegas();
  const auto rows = parallel_map<std::vector<double>>(
      omegas.size(),
      [&](std::size_t i) {
        std::vector<double> row{omegas[i]};
        try {
          push_complex(row, scatter_fn_explicit(omegas[i], d, tau));
        } catch (const PoleError&) {
          row.insert(row.end(), {kNaN, kNaN});
        }
        try {
          push_complex(row, scatter_fn_general(omegas[i], w0, model.c_tau));
        } catch (const PoleError&) {
          row.insert(row.end(), {kNaN, kNaN});
        }
        return row;
      },
      sweep_threads());
  for (const auto& r : rows) t.add_row(r);
  return t;
}

CsvTable cmd_amplitude(const RunConfig& c) {
  std::vector<std::string> h{"theta", "phi"};
  for (auto p : {"mie", "dipole"})
    for (auto x : {"x", "y", "z"})
      for (auto& s : complex_columns(std::string(p) + "_" + x)) h.push_back(s);
  CsvTable t = make_table(c.command, h);
  const double w = single_omega(c);
  const double d = c.resolved_delta();
  const ContrastModel model = c.resolved_model();
  ScatterConfig cfg;
  cfg.delta = d;
  cfg.tau = model.evaluate(d);
  cfg.omega = w;
  cfg.n_max = c.n_max;
  const IncidentWave wave = wave_for(c, w);
  const MieTable mt = mie_coefficients(cfg, wave);
  const DipolePair dp = dipole_approximation(wave, w, d, model);
  std::vector<std::pair<double, double>> dirs;
  for (double th : theta_values(c))
    for (double ph : phi_values(c)) dirs.emplace_back(th, ph);
  const auto rows = parallel_map<std::vector<double>>(
      dirs.size(),
      [&](std::size_t i) {
        const auto xh = UnitDirection::from_angles(dirs[i].first, dirs[i].second);
        std::vector<double> row{dirs[i].first, dirs[i].second};
        const CVec3 a = far_field(mt, xh), b = dipole_far_field(dp, w, xh);
        for (int k = 0; k < 3; ++k) push_complex(row, a[k]);
        for (int k = 0; k < 3; ++k) push_complex(row, b[k]);
        return row;
      },
      sweep_threads());
  for (const auto& r : rows) t.add_row(r);
  return t;
}

CsvTable cmd_moments(const RunConfig& c) {
  std::vector<std::string> h{"component"};
  for (auto n : {"M1hat", "Q0hat", "p", "m"})
    for (auto& s : complex_columns(n)) h.push_back(s);
  CsvTable t = make_table(c.command, h);
  const double w = single_omega(c);
  const double d = c.resolved_delta();
  const ContrastModel model = c.resolved_model();
  const IncidentWave wave = wave_for(c, w);
  const ResonantMoments rm = resonant_moments(wave, w, d, model);
  const DipolePair dp = dipole_approximation(wave, w, d, model);
  for (int i = 0; i < 3; ++i) {
    std::vector<double> row{double(i)};
    push_complex(row, rm.M1hat[i]);
    push_complex(row, rm.Q0hat[i]);
    push_complex(row, dp.p[i]);
    push_complex(row, dp.m[i]);
    t.add_row(row);
  }
  t.add_note(std::string("resolved ") + (rm.resolved ? "true" : "false"));
  return t;
}

CsvTable cmd_units(const RunConfig& c) {
  CsvTable t = make_table(c.command, {"delta_omega", "re_tau", "im_tau", "resonance_indicator"});
  if (!c.radius_nm || !c.wavelength_nm || !c.epsilon_r)
    throw DomainError("units needs radius_nm, wavelength_nm and epsilon_r");
  const auto u = to_dimensionless(*c.radius_nm, *c.wavelength_nm, *c.epsilon_r);
  t.add_row({u.delta_omega, u.tau.real(), u.tau.imag(), u.resonance_indicator});
  t.set_units({"1", "1", "1", "1"});
  return t;
}

}  // namespace

UnitConversion to_dimensionless(double radius_nm, double wavelength_nm, cplx epsilon_r) {
  if (!(radius_nm > 0.0) || !(wavelength_nm > 0.0)) throw DomainError("radius and wavelength must be positive");
  if (!(epsilon_r.real() > 1.0)) throw DomainError("units need Re epsilon_r > 1");
  UnitConversion u;
  u.delta_omega = 2 * pi * radius_nm / wavelength_nm;
  u.tau = epsilon_r - 1.0;
  u.resonance_indicator = u.delta_omega * std::sqrt(std::abs(1.0 + u.tau));
  return u;
}

// -------------------------------------------------------------------------

CsvTable::CsvTable(std::string schema, std::vector<std::string> header)
    : schema_(std::move(schema)), header_(std::move(header)), units_(header_.size(), "1") {}

void CsvTable::set_units(std::vector<std::string> units) {
  if (units.size() != header_.size()) throw DomainError("one unit per column");
  units_ = std::move(units);
}

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != header_.size())
    throw DomainError("row has " + std::to_string(row.size()) + " values for " + std::to_string(header_.size()) +
                      " columns");
  rows_.push_back(std::move(row));
}

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header_.size(); ++k)
    if (header_[k] == name) {
      std::vector<double> out;
      for (const auto& r : rows_) out.push_back(r[k]);
      return out;
    }
  throw DomainError("no column '" + name + "'");
}

std::string CsvTable::to_csv() const {
  std::string out = "# " + schema_ + "\n# column_units: " + join(units_) + "\n";
  for (const auto& n : notes_) out += "# " + n + "\n";
  out += join(header_) + "\n";
  for (const auto& r : rows_) {
    std::vector<std::string> cells;
    for (double v : r) cells.push_back(format_double(v));
    out += join(cells) + "\n";
  }
  return out;
}

json CsvTable::to_json() const {
  json j;
  j["schema"] = schema_;
  j["columns"] = header_;
  j["units"] = units_;
  j["notes"] = notes_;
  j["rows"] = json::array();
  for (const auto& r : rows_) {
    json row = json::array();
    for (double v : r) row.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    j["rows"].push_back(row);
  }
  return j;
}

CsvTable CsvTable::parse(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool have_schema = false, have_header = false;
  std::vector<std::string> units;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.size() > 2 ? line.substr(2) : "";
      if (!have_schema) {
        t.schema_ = body;
        have_schema = true;
      } else if (body.rfind("column_units: ", 0) == 0) {
        units = split(body.substr(14), ',');
      } else {
        t.notes_.push_back(body);
      }
      continue;
    }
    if (!have_header) {
      t.header_ = split(line, ',');
      have_header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split(line, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw DomainError("bad CSV cell '" + cell + "'");
      row.push_back(v);
    }
    t.add_row(std::move(row));
  }
  if (!have_header) throw DomainError("CSV text has no header");
  t.units_ = units.empty() ? std::vector<std::string>(t.header_.size(), "1") : units;
  if (t.units_.size() != t.header_.size()) throw DomainError("units line does not match the header");
  return t;
}

std::vector<double> Grid::values() const {
  if (count < 1) throw DomainError("grid count must be >= 1");
  if (count == 1) return {start};
  if (!(stop > start)) throw DomainError("grids must be strictly increasing");
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(start + (stop - start) * i / (count - 1));
  return v;
}

// -------------------------------------------------------------------------

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  auto get = [&](const char* key) -> const json* { return j.contains(key) && !j[key].is_null() ? &j[key] : nullptr; };
  if (auto v = get("command")) c.command = v->get<std::string>();
  if (auto v = get("delta")) c.delta = v->get<double>();
  if (auto v = get("tau")) c.tau = read_complex(*v);
  if (auto v = get("c_tau")) c.c_tau = read_complex(*v);
  if (auto v = get("laurent")) c.laurent = v->get<std::vector<double>>();
  if (auto v = get("omega")) c.omega = v->get<double>();
  if (auto v = get("omega_grid")) c.omega_grid = read_grid(*v);
  if (auto v = get("deltas")) {
    if (v->is_object())
      c.deltas = read_grid(*v).values();
    else
      c.deltas = v->get<std::vector<double>>();
  }
  if (auto v = get("radius_nm")) c.radius_nm = v->get<double>();
  if (auto v = get("wavelength_nm")) c.wavelength_nm = v->get<double>();
  if (auto v = get("wavelength_grid")) c.wavelength_grid = read_grid(*v);
  if (auto v = get("epsilon_r")) c.epsilon_r = read_complex(*v);
  if (auto v = get("length_unit_nm")) c.length_unit_nm = v->get<double>();
  if (auto v = get("direction")) c.direction = read_vec3(*v);
  if (auto v = get("polarization")) c.polarization = read_vec3(*v);
  if (auto v = get("n_max")) c.n_max = v->get<int>();
  if (auto v = get("tol")) c.tol = v->get<double>();
  if (auto v = get("family")) {
    const auto f = v->get<std::string>();
    if (f == "TE")
      c.family = Family::TE;
    else if (f == "TM")
      c.family = Family::TM;
    else
      throw DomainError("family must be TE or TM");
  }
  if (auto v = get("n")) c.n = v->get<int>();
  if (auto v = get("s")) c.s = v->get<int>();
  if (auto v = get("order")) c.order = v->get<int>();
  if (auto v = get("count")) c.count = v->get<int>();
  if (auto v = get("theta")) c.theta = v->get<double>();
  if (auto v = get("phi")) c.phi = v->get<double>();
  if (auto v = get("n_theta")) c.n_theta = v->get<int>();
  if (auto v = get("n_phi")) c.n_phi = v->get<int>();
  if (auto v = get("out")) c.out = v->get<std::string>();
  if (auto v = get("format")) c.format = v->get<std::string>();
  return c;
}

void RunConfig::validate() const {
  const bool dimensionless = delta || tau || c_tau || omega || omega_grid || !deltas.empty() || !laurent.empty();
  if (dimensionless && physical()) throw DomainError("mix of dimensionless and physical parameters");
  if (tau && c_tau) throw DomainError("give tau or c_tau, not both");
  if (omega && omega_grid) throw DomainError("give omega or omega_grid, not both");
  if (wavelength_nm && wavelength_grid) throw DomainError("give wavelength_nm or wavelength_grid, not both");
  check_increasing(deltas, "deltas");
  if (omega_grid) omega_grid->values();
  if (wavelength_grid) wavelength_grid->values();
  if (!(length_unit_nm > 0.0)) throw DomainError("length_unit_nm must be positive");
  if (format != "csv" && format != "json") throw DomainError("format must be csv or json");
}

double RunConfig::resolved_delta() const {
  if (delta) return *delta;
  if (radius_nm) return *radius_nm / length_unit_nm;
  throw DomainError(command + " needs delta or radius_nm");
}

ContrastModel RunConfig::resolved_model() const {
  ContrastModel m;
  if (c_tau) {
    m.c_tau = *c_tau;
    m.laurent = laurent;
  } else if (tau || epsilon_r) {
    if (!laurent.empty()) throw DomainError("laurent coefficients need c_tau");
    const double d = resolved_delta();
    m.c_tau = (tau ? *tau : *epsilon_r - 1.0) * d * d;
  } else {
    m.laurent = laurent;
  }
  m.validate();
  return m;
}

std::vector<double> RunConfig::resolved_omegas() const {
  if (omega) return {*omega};
  if (omega_grid) return omega_grid->values();
  auto from_wavelength = [&](double lambda) {
    if (!(lambda > 0.0)) throw DomainError("wavelength must be positive");
    return 2 * pi * length_unit_nm / lambda;
  };
  if (wavelength_nm) return {from_wavelength(*wavelength_nm)};
  if (wavelength_grid) {
    std::vector<double> out;
    for (double l : wavelength_grid->values()) out.push_back(from_wavelength(l));
    return out;
  }
  throw DomainError(command + " needs a frequency (omega, omega_grid, wavelength_nm or wavelength_grid)");
}

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> list = {
      {"bessel-zeros", "positive zeros k_{order,s} of j_order", "s, k"},
      {"spectrum", "largest eigenvalues of the Newtonian operator on the unit ball",
       "index, k, lambda = 1/k^2, family_n, s, multiplicity"},
      {"resonance", "one complex resonance by Muller iteration",
       "delta, re_omega, im_omega, residual, iterations, re_seed, im_seed"},
      {"resonance-sweep", "resonance tracked over increasing deltas",
       "delta, re_omega, im_omega, residual, iterations, qs_seed, abs_err_vs_pi"},
      {"mie", "Mie coefficients gamma_{n,m}, eta_{n,m}", "n, m, re_gamma, im_gamma, re_eta, im_eta"},
      {"cross-sections", "scattering, extinction and absorption over a frequency grid",
       "omega, Qs, Qext, Qabs, n_max, converged"},
      {"scatter-functions", "explicit and general magnetic scattering functions",
       "omega, re_s_tilde, im_s_tilde, re_s_hat, im_s_hat"},
      {"amplitude", "Mie and dipole far-field amplitudes on a direction grid",
       "theta, phi, re/im mie_x..mie_z, re/im dipole_x..dipole_z"},
      {"moments", "resonant moments and the dipole pair",
       "component, re/im M1hat, re/im Q0hat, re/im p, re/im m"},
      {"units", "physical to dimensionless conversion", "delta_omega, re_tau, im_tau, resonance_indicator"},
  };
  return list;
}

CsvTable run(const RunConfig& config) {
  config.validate();
  const std::string& c = config.command;
  info(c);
  if (c == "bessel-zeros") return cmd_bessel_zeros(config);
  if (c == "spectrum") return cmd_spectrum(config);
  if (c == "resonance") return cmd_resonance(config);
  if (c == "resonance-sweep") return cmd_resonance_sweep(config);
  if (c == "mie") return cmd_mie(config);
  if (c == "cross-sections") return cmd_cross_sections(config);
  if (c == "scatter-functions") return cmd_scatter_functions(config);
  if (c == "amplitude") return cmd_amplitude(config);
  if (c == "moments") return cmd_moments(config);
  return cmd_units(config);
}

std::string render(const CsvTable& table, const std::string& format) {
  if (format == "json") return table.to_json().dump(2) + "\n";
  if (format == "csv") return table.to_csv();
  throw DomainError("format must be csv or json");
}

int sweep_threads() {
  const char* env = std::getenv("DIERES_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 0) throw DomainError("DIERES_THREADS must be a non-negative integer");
  return int(std::min<long>(n, 256));
}

}  // namespace dieres
