#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlse/boundary.hpp"
#include "nlse/experiments.hpp"
#include "nlse/laplacian.hpp"

namespace nlse::app {

/// Invalid or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridConfig {
  int dim = 1;
  std::vector<double> lo;
  std::vector<double> hi;
  double h = 0.2;
};

struct InitialConfig {
  std::string kind;  ///< soliton | vortex_pair | kicked_gaussian | snapshot | zero
  double omega = 1.0;
  int m = 1;
  double x0 = 4.0;
  std::string path;
};

/**
 * Everything a subcommand may need. Either `preset` or both `grid` and
 * `initial` describe the problem; the remaining fields override preset values.
 */
struct RunConfig {
  std::optional<std::string> preset;
  std::optional<double> half_width;
  std::optional<GridConfig> grid;
  std::optional<InitialConfig> initial;
  std::optional<double> a;
  std::optional<double> s;
  std::optional<std::string> potential;  ///< none | harmonic
  std::optional<std::string> scheme;
  std::optional<std::string> boundary;

  std::optional<double> k;
  std::optional<double> k_fraction;
  double t_end = 100.0;
  std::size_t monitor_every = 1;
  std::string out = "-";
  std::optional<std::string> snapshot;
  std::optional<std::string> json;

  int digits = 4;
  std::optional<double> k_lo;
  std::optional<double> k_hi;

  int spectrum_dim = 1;
  std::size_t spectrum_n = 10;
  std::optional<std::string> dump;

  int order = 4;
  std::size_t resolution = 201;
  double re_min = -3.0, re_max = 1.0, im_min = -3.0, im_max = 3.0;
};

/// Parses JSON text; unknown keys and wrong types raise ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

/// Initial state, parameters, scheme and boundary resolved from the config.
Preset build_problem(const RunConfig& config);

SchemeOrder resolved_scheme(const RunConfig& config, const Preset& problem);
BoundaryKind resolved_boundary(const RunConfig& config, const Preset& problem);

}  // namespace nlse::app
