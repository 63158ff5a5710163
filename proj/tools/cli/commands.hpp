#pragma once

#include "cli/run_config.hpp"

namespace radiant::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// Each command writes its files under cfg.output_path and returns an exit
// code. Validation problems are thrown (InvalidArgument / DomainError) and
// mapped to kExitUsage by the caller; a check that ran but failed its
// documented tolerance returns kExitNumerical.

/// sample.csv + sample.json sidecar (or sample.json with positions).
int cmd_sample(const RunConfig& cfg);
/// spectrum.csv (spectrum_seed<S>.csv per run for ensembles) + stats.json.
int cmd_spectrum(const RunConfig& cfg);
/// dispersion.csv (or .json) + peaks.json.
int cmd_dispersion(const RunConfig& cfg);
/// transform_check.json: quadrature vs closed form at one k.
int cmd_transform_check(const RunConfig& cfg);
/// mode_count.json: mode-counting identity (+ shell count if --box-side).
int cmd_mode_count(const RunConfig& cfg);
/// quotient.json: plane-wave Rayleigh quotient vs 1 + lambda_peak.
int cmd_quotient(const RunConfig& cfg);
/// decay.csv + evolve.json.
int cmd_evolve(const RunConfig& cfg);

/// Tolerances the commands report pass/fail against.
inline constexpr double kTransformTolerance = 1e-8;
inline constexpr double kModeCountTolerance = 1e-12;
inline constexpr double kQuotientTolerance = 0.15;

}  // namespace radiant::cli
