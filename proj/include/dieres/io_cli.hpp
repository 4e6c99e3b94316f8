// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dieres/resonance.hpp"

namespace dieres {

struct UnitConversion {
  double delta_omega = 0.0;
  cplx tau;
  double resonance_indicator = 0.0;  // delta omega sqrt|1 + tau|, near pi at the magnetic dipole
};

// Size parameter 2 pi radius / wavelength, tau = epsilon_r - 1.
UnitConversion to_dimensionless(double radius_nm, double wavelength_nm, cplx epsilon_r);

class CsvTable {
 public:
  CsvTable() = default;
  CsvTable(std::string schema, std::vector<std::string> header);

  const std::string& schema() const { return schema_; }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const std::vector<std::string>& units() const { return units_; }
  // One unit label per column; defaults to "1".
  void set_units(std::vector<std::string> units);

  // Throws DomainError unless the row matches the header width.
  void add_row(std::vector<double> row);
  void add_note(std::string note) { notes_.push_back(std::move(note)); }
  std::vector<double> column(const std::string& name) const;

  // "# <schema>", "# column_units: ...", "# note" lines, header, rows in %.17g.
  std::string to_csv() const;
  nlohmann::json to_json() const;
  static CsvTable parse(const std::string& text);

 private:
  std::string schema_;
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::string> notes_;
  std::vector<std::string> units_;
};

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  std::vector<double> values() const;
};

struct RunConfig {
  std::string command;

  // dimensionless parameterization
  std::optional<double> delta;
  std::optional<cplx> tau;
  std::optional<cplx> c_tau;
  std::vector<double> laurent;
  std::optional<double> omega;
  std::optional<Grid> omega_grid;
  std::vector<double> deltas;

  // physical parameterization; lengths in units of length_unit_nm
  std::optional<double> radius_nm;
  std::optional<double> wavelength_nm;
  std::optional<Grid> wavelength_grid;
  std::optional<cplx> epsilon_r;
  double length_unit_nm = 1000.0;

  Vec3 direction{0.0, 0.0, 1.0};
  Vec3 polarization{1.0, 0.0, 0.0};
  std::optional<int> n_max;
  double tol = 1e-12;
  Family family = Family::TE;
  int n = 1;
  int s = 1;
  int order = 0;
  int count = 5;
  double theta = 0.5 * 3.141592653589793;
  double phi = 0.0;
  int n_theta = 1;
  int n_phi = 1;

  std::string out;
  std::string format = "csv";

  // Complex numbers are [re, im] or a plain real.
  static RunConfig from_json(const nlohmann::json& j);
  // Throws DomainError when both parameterizations are mixed or a grid is
  // not strictly increasing.
  void validate() const;
  bool physical() const { return radius_nm || wavelength_nm || wavelength_grid || epsilon_r; }

  double resolved_delta() const;
  ContrastModel resolved_model() const;
  std::vector<double> resolved_omegas() const;
};

struct CommandInfo {
  std::string name;
  std::string summary;
  std::string columns;
};

const std::vector<CommandInfo>& commands();

CsvTable run(const RunConfig& config);

// Renders csv or json.
std::string render(const CsvTable& table, const std::string& format);

// Number of sweep workers from DIERES_THREADS (0 or unset: sequential).
int sweep_threads();

// Order-preserving parallel map over [0, count). The first exception in index
// order is rethrown after all workers finish.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& f, int threads) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < count; i += stride) {
      try {
        slots[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1 || count < 2) {
    work(0, 1);
  } else {
    const std::size_t w = std::min<std::size_t>(std::size_t(threads), count);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < w; ++t) pool.emplace_back(work, t, w);
    for (auto& t : pool) t.join();
  }
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace dieres
