#pragma once

// Job configuration for the command-line front end, read from JSON.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "holocurve/fieldexpr.hpp"
#include "holocurve/odesolve.hpp"

namespace holocurve::cli {

/// Invalid or inconsistent configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::size_t dimension = 0;  // 0: take it from the field file
  std::optional<double> norm_p;
  std::optional<double> t0;
  std::optional<double> half_width;
  std::size_t grid_nodes = kDefaultGridNodes;
  std::size_t contour_nodes = kDefaultContourNodes;
  double contour_radius = 0.5;
  double tol = 1e-12;
  std::size_t max_iter = 200;
  std::optional<double> tube_radius;
  std::filesystem::path phi_path;
  std::optional<std::filesystem::path> dphi_path;
  std::vector<Complex> xi;
  std::vector<Complex> dxi;
  double fd_step = 1e-4;
  double fd_threshold = 1e-6;
  std::vector<std::string> suites;
  std::optional<std::filesystem::path> output;
  std::uint64_t seed = 0;

  ContourSpec contour() const { return ContourSpec(contour_nodes, contour_radius); }
  SolveOptions solve_options() const;
};

/// Parses and validates a configuration. Relative field paths are resolved
/// against `base_dir`. Throws ConfigError.
JobConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);

/// Reads `path` and parses it; relative paths resolve against its directory.
JobConfig load_config(const std::filesystem::path& path);

/// Canonical echo of a configuration, as embedded in reports.
nlohmann::json to_json(const JobConfig& config);

/// Loads the field at `path` and applies the configuration's interval,
/// norm and dimension overrides to its domain.
Field load_field(const std::filesystem::path& path, const JobConfig& config);

/// Complex numbers in JSON: a number, an [re, im] pair, or a string such
/// as "0.5-2i". Throws ConfigError.
Complex complex_from_json(const nlohmann::json& value);
nlohmann::json complex_to_json(Complex z);

}  // namespace holocurve::cli
