#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "radnlw/certifier.hpp"
#include "radnlw/nonlinearity.hpp"
#include "radnlw/radial_field.hpp"
#include "radnlw/solver.hpp"

namespace radnlw {

struct DataConfig {
  std::string profile = "gaussian-bump";
  ProfileParams params;
  std::string table;  // CSV path for the "table" profile
};

struct OutputConfig {
  std::string directory = "radnlw-out";
  std::vector<std::string> formats{"csv", "text"};

  bool wants(const std::string& format) const;
};

/// Everything a run needs. Key paths mirror the JSON document, e.g.
/// "grid.n" or "certifier.eps0"; see configs/example.json.
struct RunConfig {
  NonlinearitySpec nonlinearity;
  double r_max = 12.0;
  std::size_t n = 1024;
  SolveConfig solve{6.0, 0.5, 1, 1e30, true};
  DataConfig data;
  CertifierConstants certifier;
  /// A <= morawetz_C E^2 regression bound used by sweeps and the energy-driven
  /// double-exponential bound.
  double morawetz_C = 0.05;
  OutputConfig output;
  unsigned workers = 1;

  /// Module preconditions except the light cone. Throws Error(config) with
  /// the key path of the offending field.
  void validate() const;

  /// Throws Error(cone_violation) when support_radius + t_final > r_max for
  /// a compactly supported profile.
  void check_light_cone() const;

  RadialGrid grid() const { return RadialGrid(r_max, n); }
  InitialData initial_data() const;
};

nlohmann::json to_json(const RunConfig& config);

/// Unknown keys and type mismatches throw Error(config) naming the key path.
RunConfig from_json(const nlohmann::json& doc);

/// "key.path=value"; value parsed as JSON, falling back to a plain string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Precedence, lowest first: built-in defaults, the config file, the
/// RADNLW_OUTPUT_DIR environment variable, then `overrides`.
RunConfig load_config(const std::filesystem::path& file, const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::vector<std::string>& overrides = {});

}  // namespace radnlw
