#include "orthoplate/config.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "orthoplate/errors.hpp"

namespace orthoplate {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(
          fmt::format("{}:{}: expected 'key = value', got '{}'", origin, lineno, line));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError(fmt::format("{}:{}: missing key before '='", origin, lineno));
    }
    if (cfg.values_.count(key)) {
      throw ValidationError(fmt::format("{}:{}: duplicate key '{}'", origin, lineno, key));
    }
    try {
      size_t used = 0;
      const double parsed = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      cfg.values_[key] = parsed;
    } catch (const std::exception&) {
      throw ValidationError(
          fmt::format("{}:{}: value of '{}' is not a number: '{}'", origin, lineno, key, val));
    }
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open config file '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

bool ConfigFile::has(const std::string& key) const { return values_.count(key) != 0; }

double ConfigFile::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ValidationError(fmt::format("{}: missing required key '{}'", origin_, key));
  }
  return it->second;
}

double ConfigFile::get_or(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::optional<double> ConfigFile::maybe(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

PlateModel plate_model_from_config(const ConfigFile& cfg) {
  PlateGeometry geom;
  geom.L = cfg.get("L");
  geom.ell = cfg.get("ell");
  const double M = cfg.get("M");
  const PlateMaterial mat = PlateMaterial::derive(cfg.get("E1"), cfg.get("E2"), cfg.get("nu"));
  std::optional<double> d = cfg.maybe("d");
  std::optional<double> R = cfg.maybe("R");
  const double nu23 = cfg.get_or("nu23", 0.2);
  return PlateModel::make(geom, mat, M, d, R, nu23);
}

Grid grid_from_config(const ConfigFile& cfg, const PlateModel& model, int nx_override,
                      int ny_override) {
  int nx = static_cast<int>(cfg.get_or("nx", 201));
  int ny = static_cast<int>(cfg.get_or("ny", 41));
  if (nx_override > 0) nx = nx_override;
  if (ny_override > 0) ny = ny_override;
  return Grid::make(model.geometry.L, model.geometry.ell, nx, ny);
}

MaterialSpec material_from_config(const ConfigFile& cfg) {
  MaterialSpec spec;
  const bool full = cfg.has("E3") || cfg.has("nu13") || cfg.has("mu13") || cfg.has("mu23");
  if (full) {
    OrthotropicConstants c;
    c.E1 = cfg.get("E1");
    c.E2 = cfg.get("E2");
    c.E3 = cfg.get("E3");
    c.nu12 = cfg.get("nu12");
    c.nu13 = cfg.get("nu13");
    c.nu23 = cfg.get("nu23");
    c.mu12 = cfg.get("mu12");
    c.mu13 = cfg.get("mu13");
    c.mu23 = cfg.get("mu23");
    OrthotropicConstants filled = c.with_reciprocal();
    // Explicit reciprocal ratios, when present, must match the reciprocity identities.
    const std::array<std::tuple<const char*, double>, 3> reciprocal = {
        std::tuple<const char*, double>{"nu21", filled.nu21},
        {"nu31", filled.nu31},
        {"nu32", filled.nu32}};
    for (const auto& [key, derived] : reciprocal) {
      const std::optional<double> given = cfg.maybe(key);
      if (given && std::abs(*given - derived) > 1e-10 * std::max(1.0, std::abs(derived))) {
        throw ValidationError(fmt::format(
            "{}: key '{}' = {} contradicts the reciprocity identity (expected {})",
            cfg.origin(), key, *given, derived));
      }
    }
    filled.validate();
    spec.reinforced = false;
    spec.constants = filled;
    return spec;
  }
  // Plate-style input: E1, E2, nu describe the reinforced material.
  const PlateMaterial mat =
      PlateMaterial::derive(cfg.get("E1"), cfg.get("E2"), cfg.get("nu"));
  const double nu23 = cfg.get_or("nu23", 0.2);
  spec.reinforced = true;
  spec.reinforced_form = mat.constants(nu23);
  spec.constants = spec.reinforced_form.expand();
  return spec;
}

}  // namespace orthoplate
