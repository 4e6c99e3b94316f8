// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "dieres/io_cli.hpp"

using nlohmann::json;

namespace {

// Flag name, config key, kind of value.
enum class Kind { number, integer, text, complex, list, grid, vec3 };

struct Flag {
  const char* name;
  const char* key;
  Kind kind;
  const char* help;
};

const Flag kFlags[] = {
    {"--delta", "delta", Kind::number, "particle size delta"},
    {"--tau", "tau", Kind::complex, "contrast tau, re or re,im"},
    {"--c-tau", "c_tau", Kind::complex, "leading contrast coefficient c_tau"},
    {"--laurent", "laurent", Kind::list, "contrast Laurent coefficients, delta^-1 first"},
    {"--omega", "omega", Kind::number, "dimensionless frequency"},
    {"--omega-grid", "omega_grid", Kind::grid, "start,stop,count"},
    {"--deltas", "deltas", Kind::list, "increasing deltas, d1,d2,..."},
    {"--radius-nm", "radius_nm", Kind::number, "physical radius"},
    {"--wavelength-nm", "wavelength_nm", Kind::number, "physical wavelength"},
    {"--wavelength-grid", "wavelength_grid", Kind::grid, "start,stop,count in nm"},
    {"--epsilon-r", "epsilon_r", Kind::complex, "relative permittivity, re or re,im"},
    {"--length-unit-nm", "length_unit_nm", Kind::number, "length unit for physical runs"},
    {"--direction", "direction", Kind::vec3, "incidence direction x,y,z"},
    {"--polarization", "polarization", Kind::vec3, "polarization x,y,z"},
    {"--n-max", "n_max", Kind::integer, "Mie truncation"},
    {"--tol", "tol", Kind::number, "root tolerance"},
    {"--family", "family", Kind::text, "TE or TM"},
    {"--n", "n", Kind::integer, "multipole order"},
    {"--s", "s", Kind::integer, "zero index"},
    {"--order", "order", Kind::integer, "Bessel order"},
    {"--count", "count", Kind::integer, "number of values"},
    {"--theta", "theta", Kind::number, "polar angle"},
    {"--phi", "phi", Kind::number, "azimuth"},
    {"--n-theta", "n_theta", Kind::integer, "polar grid size"},
    {"--n-phi", "n_phi", Kind::integer, "azimuthal grid size"},
    {"--radius", "radius_nm", Kind::number, "alias of --radius-nm"},
    {"--wavelength", "wavelength_nm", Kind::number, "alias of --wavelength-nm"},
    {"--eps", "epsilon_r", Kind::complex, "alias of --epsilon-r"},
};

std::vector<double> numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

json convert(Kind kind, const std::string& v) {
  switch (kind) {
    case Kind::number: return std::stod(v);
    case Kind::integer: return std::stoi(v);
    case Kind::text: return v;
    case Kind::list: return numbers(v);
    case Kind::complex: {
      const auto x = numbers(v);
      if (x.size() == 1) return x[0];
      if (x.size() == 2) return json::array({x[0], x[1]});
      throw dieres::DomainError("complex flag needs re or re,im");
    }
    case Kind::vec3: {
      const auto x = numbers(v);
      if (x.size() != 3) throw dieres::DomainError("vector flag needs x,y,z");
      return x;
    }
    case Kind::grid: {
      const auto x = numbers(v);
      if (x.size() != 3) throw dieres::DomainError("grid flag needs start,stop,count");
      return json{{"start", x[0]}, {"stop", x[1]}, {"count", int(x[2])}};
    }
  }
  return nullptr;
}

std::string error_kind(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const dieres::PoleError&) {
    return "PoleError";
  } catch (const dieres::RegimeError&) {
    return "RegimeError";
  } catch (const dieres::DomainError&) {
    return "DomainError";
  } catch (const dieres::IndexError&) {
    return "IndexError";
  } catch (const dieres::ResonanceError&) {
    return "ResonanceError";
  } catch (const dieres::NoConvergence&) {
    return "NoConvergence";
  } catch (const dieres::MissingMoment&) {
    return "MissingMoment";
  } catch (const json::exception&) {
    return "ConfigError";
  } catch (const std::invalid_argument&) {
    return "ConfigError";
  } catch (...) {
    return "Error";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dielectric subwavelength resonances and Mie scattering of a high-index sphere"};
  app.require_subcommand(1);
  std::map<std::string, std::string> values;
  std::string config_path, out_path, format;
  for (const auto& ci : dieres::commands()) {
    CLI::App* sub = app.add_subcommand(ci.name, ci.summary);
    sub->footer("Columns: " + ci.columns);
    sub->add_option("--config", config_path, "JSON config; flags override it");
    sub->add_option("--out", out_path, "output path (stdout when omitted)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    for (const auto& f : kFlags) sub->add_option(f.name, values[f.name], f.help);
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    json cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw dieres::DomainError("cannot read config '" + config_path + "'");
      cfg = json::parse(in);
    }
    const CLI::App* sub = app.get_subcommands().front();
    for (const auto& f : kFlags)
      if (sub->count(f.name) > 0) cfg[f.key] = convert(f.kind, values[f.name]);
    if (!out_path.empty()) cfg["out"] = out_path;
    if (!format.empty()) cfg["format"] = format;
    cfg["command"] = command;

    const auto config = dieres::RunConfig::from_json(cfg);
    const std::string text = dieres::render(dieres::run(config), config.format);
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.out, std::ios::binary);
      if (!out) throw dieres::DomainError("cannot write '" + config.out + "'");
      out << text;
    }
  } catch (const std::exception& e) {
    const json record{{"error", error_kind(std::current_exception())}, {"command", command}, {"message", e.what()}};
    std::cerr << record.dump() << "\n";
    return 2;
  }
  return 0;
}
