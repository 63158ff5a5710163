#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "radiant/medium.hpp"

namespace radiant::cli {

enum class OutputFormat { Csv, Json };
enum class SampleGeometry { Ball, Dicke };

/// Options shared by every subcommand plus the per-command extras. Unset
/// optionals fall back to documented defaults.
struct RunConfig {
  double k0 = 1.0;
  double mu = 0.0;
  std::optional<double> rho;
  std::optional<double> radius;
  std::optional<std::size_t> n;
  std::uint64_t seed = 0;
  std::filesystem::path output_path = ".";
  OutputFormat format = OutputFormat::Csv;
  SampleGeometry geometry = SampleGeometry::Ball;
  std::size_t ensemble = 1;

  // spectrum
  double threshold = 1.0;
  bool eigenvalues_only = false;
  bool dump_matrix = false;
  // dispersion
  double k_min = 0.0;
  std::optional<double> k_max;
  std::size_t points = 400;
  // transform-check
  double k = 1.0;
  double tol = 1e-9;
  // mode-count
  std::optional<double> box_side;
  // quotient
  std::optional<double> carrier_k;
  // evolve
  double t_max = 5.0;
  std::size_t steps = 100;
  std::string initial = "uniform";

  PhysicalParams params() const;
};

/// Atom count and density of the sample a command should build. Exactly one
/// of n / rho may be derived from the other; if both are given they must
/// agree up to rounding.
struct ResolvedCount {
  std::size_t n = 0;
  double rho = 0.0;
};

ResolvedCount resolve_count(const RunConfig& cfg);

/// Throws InvalidArgument on any violated invariant.
void validate(const RunConfig& cfg);

/// Fills fields from a JSON object whose keys are the long flag names
/// ("k0", "mu", "radius", "k-max", ...). Only keys listed in `unset` are
/// applied, so flags given on the command line win.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j,
                       const std::function<bool(const std::string&)>& unset);

OutputFormat parse_format(const std::string& s);
SampleGeometry parse_geometry(const std::string& s);

}  // namespace radiant::cli
