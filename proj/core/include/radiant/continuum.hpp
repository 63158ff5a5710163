#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "radiant/kernel.hpp"
#include "radiant/medium.hpp"

namespace radiant {

// Unbounded, uniform medium. A plane wave exp(i k.r) is an exact eigenvector
// of the continuum kernel; its eigenvalue is the kernel's Fourier transform
//
//   lambda(k) = (4 pi rho / (i k0)) / (k^2 + (mu - i k0)^2).
//
// For mu > 0 the real part is strictly positive and peaks either on the shell
// |k| = sqrt(k0^2 - mu^2) (mu < k0) or at k = 0 (mu >= k0).

/// Closed-form lambda(k). Throws DomainError at the pole mu = 0, k = k0 and
/// for k < 0.
cdouble dispersion(double k, const PhysicalParams& params);

struct DispersionCurve {
  std::vector<double> k_values;
  std::vector<cdouble> lambdas;
  PhysicalParams params;
};

/// Uniform grid of `points` wavenumbers on [k_min, k_max] (default
/// [0, 3 k0], 400 points). With mu = 0 the grid point k = k0 is dropped.
DispersionCurve dispersion_curve(const PhysicalParams& params, double k_min,
                                 double k_max, std::size_t points = 400);
DispersionCurve dispersion_curve(const PhysicalParams& params);

enum class Regime { SubcriticalMu, Dicke };

std::string_view to_string(Regime r);

/// mu < k0 -> SubcriticalMu, mu >= k0 -> Dicke.
Regime regime_of(const PhysicalParams& params);

struct PeakSummary {
  double k_peak = 0.0;
  double lambda_peak = 0.0;
  /// Nominal width: 2 mu on the shell, mu in the Dicke regime.
  double width = 0.0;
  Regime regime = Regime::SubcriticalMu;
};

/// Location, height and nominal width of the Re lambda(k) peak. Requires
/// mu > 0.
PeakSummary peak_summary(const PhysicalParams& params);

/// Large-mu approximation of the k = 0 peak, 8 pi rho / mu^3.
double dicke_peak_approximation(const PhysicalParams& params);

/// Measured width of the region where Re lambda(k) >= lambda_peak / 2 on
/// k >= 0 (crossings located by bisection to machine precision).
double half_max_width(const PhysicalParams& params);

struct QuadratureResult {
  cdouble value;
  /// Quadrature error estimate plus the truncated-tail bound.
  double error_estimate = 0.0;
};

/// Independent numerical evaluation of lambda(k): the 3D Fourier transform of
/// rho K(r) reduced to a radial integral,
///
///   (4 pi rho / (i k0 k)) * int_0^inf sin(k r) exp((i k0 - mu) r) dr,
///
/// by adaptive Gauss-Kronrod on [0, 40/mu] plus an analytic tail bound.
/// Requires mu > 0 and k > 0. Throws NumericalError when the relative error
/// budget `tol` is not met.
QuadratureResult kernel_transform_quadrature(double k,
                                             const PhysicalParams& params,
                                             double tol);

/// Modes of a cubic box of side L inside the superradiant shell,
/// (2 mu)(4 pi k0^2) / (2 pi / L)^3 = mu k0^2 L^3 / pi^2. Requires mu < k0.
double mode_count_shell(const PhysicalParams& params, double box_side);

/// Superradiant modes per correlation volume (cube of side 1/mu):
/// k0^2 / (pi^2 mu^2) on the shell, 1 / (6 pi^2) in the Dicke regime.
double modes_per_correlation_volume(const PhysicalParams& params);

struct ModeCountIdentity {
  /// Atoms per correlation volume divided by superradiant modes per volume.
  double lhs = 0.0;
  /// Geometric factor times the peak rate: (pi/2) lambda_peak on the shell,
  /// (3 pi / 4) * 8 pi rho / mu^3 in the Dicke regime.
  double rhs = 0.0;
  Regime regime = Regime::SubcriticalMu;
};

/// Both sides of the mode-counting identity. Requires mu > 0 and mu != k0.
ModeCountIdentity mode_count_identity_check(const PhysicalParams& params);

/// `k,re_lambda,im_lambda`.
void write_dispersion_csv(const DispersionCurve& curve,
                          const std::filesystem::path& path);

}  // namespace radiant
