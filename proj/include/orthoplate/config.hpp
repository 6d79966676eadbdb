#pragma once

#include <map>
#include <optional>
#include <string>

#include "orthoplate/elasticity.hpp"
#include "orthoplate/plate.hpp"

namespace orthoplate {

/// Flat key = value configuration text.  '#' starts a comment, blank lines are
/// skipped, keys are case-sensitive, values are numeric.  Parse errors cite the
/// line number.
class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text, const std::string& origin = "<string>");
  static ConfigFile load(const std::string& path);

  bool has(const std::string& key) const;
  double get(const std::string& key) const;            ///< throws ValidationError if absent
  double get_or(const std::string& key, double fallback) const;
  std::optional<double> maybe(const std::string& key) const;
  const std::string& origin() const { return origin_; }

 private:
  std::map<std::string, double> values_;
  std::string origin_;
};

/// Builds the plate model from keys L, ell, M, nu, E1, E2 and exactly one of
/// {d, R}; optional nu23 defaults to 0.2.
PlateModel plate_model_from_config(const ConfigFile& cfg);

/// Grid from optional nx / ny keys, overridable by the caller.
Grid grid_from_config(const ConfigFile& cfg, const PlateModel& model, int nx_override = 0,
                      int ny_override = 0);

/// Material description resolved from a config: either the full nine-constant
/// orthotropic set (keys E1, E2, E3, nu12, nu13, nu23, mu12, mu13, mu23, with
/// the reciprocal ratios nu21, nu31, nu32 accepted as optional consistency
/// inputs) or the plate's reinforced form (E1, E2, nu and optional nu23).
struct MaterialSpec {
  bool reinforced = false;
  OrthotropicConstants constants;                  // always populated
  TransverselyIsotropicConstants reinforced_form;  // valid when reinforced
};

MaterialSpec material_from_config(const ConfigFile& cfg);

}  // namespace orthoplate
