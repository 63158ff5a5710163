#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "radiant/continuum.hpp"
#include "radiant/kernel.hpp"
#include "radiant/medium.hpp"

namespace radiant {

/// beta_a = exp(i k.r_a) exp(-envelope_mu |r_a - center|) over a sample.
/// envelope_mu = 0 gives a plain plane wave.
struct WavePacket {
  Vec3 carrier = Vec3::Zero();
  Vec3 center = Vec3::Zero();
  double envelope_mu = 0.0;
  Eigen::VectorXcd amplitudes;

  /// beta / sqrt(beta^H beta)
  Eigen::VectorXcd conj_normalized() const;
  /// beta / sqrt(beta^T beta); throws DomainError if beta^T beta vanishes.
  Eigen::VectorXcd bilinear_normalized() const;
};

WavePacket make_wave_packet(const Sample& sample, const Vec3& carrier,
                            const Vec3& center = Vec3::Zero(),
                            double envelope_mu = 0.0);

/// (beta^H M beta) / (beta^H beta): expected rate (real part) and shift
/// (imaginary part) of the prepared state. Throws DomainError for a zero
/// state or a size mismatch.
cdouble rayleigh_quotient(const Eigen::VectorXcd& state,
                          const CouplingMatrix& matrix);

/// (beta^T M beta) / (beta^T beta). Equals the eigenvalue for eigenvectors of
/// a complex-symmetric matrix.
cdouble bilinear_quotient(const Eigen::VectorXcd& state,
                          const CouplingMatrix& matrix);

struct QuotientExperiment {
  /// 1 + lambda_peak: self term plus the continuum peak rate.
  double predicted = 0.0;
  /// Re of the conjugated Rayleigh quotient.
  double measured = 0.0;
  cdouble quotient;
  double carrier_k = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

/// Uniform ball of density rho and the given radius, plane wave along z with
/// |k| on the peak of Re lambda(k) (or `carrier_k` if given), kernel
/// regularized by mu. Requires mu > 0 and radius >= 8/mu.
QuotientExperiment plane_wave_quotient_experiment(
    const PhysicalParams& params, double radius, std::uint64_t seed,
    std::optional<double> carrier_k = std::nullopt);

/// Same experiment on an already assembled matrix of `sample`.
QuotientExperiment plane_wave_quotient(const Sample& sample,
                                       const CouplingMatrix& matrix,
                                       double carrier_k);

enum class EvolutionMethod { SpectralExpansion, TimeStepper };

std::string_view to_string(EvolutionMethod m);

/// Normalized intensities ||beta(t)||^2 / ||beta(0)||^2 with
/// d beta / dt = -(1/2) M beta, so an eigenmode decays as exp(-Re(lambda) t).
struct DecayTrace {
  std::vector<double> times;
  std::vector<double> intensities;
  std::string initial_state;
  EvolutionMethod method = EvolutionMethod::SpectralExpansion;
};

/// beta(t) = exp(-M t / 2) beta(0) by spectral expansion. Throws
/// NumericalError if the eigenbasis is numerically singular.
Eigen::VectorXcd propagate(const CouplingMatrix& matrix,
                           const Eigen::VectorXcd& initial, double t);

/// Spectral expansion in the eigenbasis of M. Falls back to an adaptive
/// Dormand-Prince integrator when the eigenvector matrix is numerically
/// singular. `times` must be ascending and start at 0.
DecayTrace evolve(const CouplingMatrix& matrix, const Eigen::VectorXcd& initial,
                  const std::vector<double>& times,
                  std::string initial_state = "custom");

/// Forces the time-stepper path (also used as the fallback).
DecayTrace evolve_time_stepper(const CouplingMatrix& matrix,
                               const Eigen::VectorXcd& initial,
                               const std::vector<double>& times,
                               std::string initial_state = "custom");

/// `t,intensity`.
void write_decay_csv(const DecayTrace& trace, const std::filesystem::path& path);

}  // namespace radiant
