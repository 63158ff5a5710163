#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "radiant/kernel.hpp"

namespace radiant {

/// Relative residual ||M v - lambda v|| / (||M||_F ||v||) every mode must meet.
inline constexpr double kResidualTolerance = 1e-8;

/// Eigen-decomposition of a coupling matrix.
///
/// Eigenvalues are ordered by descending real part, ties by descending
/// imaginary part. Re(lambda) is the decay rate and Im(lambda) the collective
/// shift, both in units of the isolated-atom rate.
struct Spectrum {
  std::vector<cdouble> eigenvalues;
  /// Columns are eigenvectors, normalised so that v^T v = 1 (no conjugation)
  /// when `bilinear_normalized`; otherwise v^H v = 1.
  std::optional<Eigen::MatrixXcd> eigenvectors;
  /// Empty when eigenvectors were not requested.
  std::vector<double> residuals;
  bool bilinear_normalized = false;

  std::size_t size() const { return eigenvalues.size(); }
  cdouble trace() const;
  double worst_residual() const;
};

/// Full dense eigen-decomposition (Hessenberg reduction + shifted QR through
/// LAPACK zgeev). Residuals are computed whenever vectors are requested.
///
/// Throws NumericalError when QR does not converge within LAPACK's iteration
/// cap or when a residual exceeds kResidualTolerance.
Spectrum eigendecompose(const Eigen::MatrixXcd& matrix, bool want_vectors);
Spectrum eigendecompose(const CouplingMatrix& matrix, bool want_vectors);

struct SpectrumStats {
  std::size_t n_superradiant = 0;
  /// Absent when no mode exceeds the threshold.
  std::optional<double> mean_superradiant_rate;
  double max_rate = 0.0;
  double threshold = 1.0;
};

/// Counts modes with Re(lambda) strictly above `threshold`.
SpectrumStats classify(const Spectrum& spectrum, double threshold = 1.0);

/// Mean Re(lambda) of the `count` fastest modes (count clamped to n).
double top_mode_mean_rate(const Spectrum& spectrum, std::size_t count);

/// Large-sphere estimate of the number of superradiant modes, k0^2 R^2 / pi.
/// Requires k0 R >= 1.
double superradiant_count_prediction(const PhysicalParams& params,
                                     double radius);

/// Large-sphere estimate of the common superradiant rate,
/// N / (k0^2 R^2 / pi) = 4 pi^2 R rho / (3 k0^2). Requires k0 R >= 1.
double superradiant_rate_prediction(const PhysicalParams& params,
                                    double radius);

/// `index,re_lambda,im_lambda,residual`; residual is `nan` if not computed.
void write_spectrum_csv(const Spectrum& spectrum,
                        const std::filesystem::path& path);

}  // namespace radiant
