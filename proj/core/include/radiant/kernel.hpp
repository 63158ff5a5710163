#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>

#include <Eigen/Core>

#include "radiant/medium.hpp"

namespace radiant {

using cdouble = std::complex<double>;

/// Self-coupling K_aa. The real part is the isolated-atom rate; the divergent
/// single-atom shift is absorbed into the resonance frequency.
inline constexpr cdouble kDiagonalValue{1.0, 0.0};

/// K(r) = exp((i k0 - mu) r) / (i k0 r) for r > 0. mu = 0 gives the bare
/// scalar-photon kernel. Throws DomainError for r <= 0.
cdouble eval_kernel(double distance, const PhysicalParams& params);
cdouble eval_kernel(const Vec3& separation, const PhysicalParams& params);

/// Dense complex-symmetric coupling matrix of a sample.
class CouplingMatrix {
 public:
  CouplingMatrix(Eigen::MatrixXcd entries, const PhysicalParams& params)
      : entries_(std::move(entries)), params_(params) {}

  const Eigen::MatrixXcd& entries() const { return entries_; }
  const PhysicalParams& params() const { return params_; }
  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  cdouble operator()(std::size_t a, std::size_t b) const {
    return entries_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
  static constexpr cdouble diagonal_value() { return kDiagonalValue; }

 private:
  Eigen::MatrixXcd entries_;
  PhysicalParams params_;
};

/// Off-diagonal (a,b) = K(r_a - r_b), diagonal = 1. Each pair is evaluated
/// once and mirrored, so the result is bitwise symmetric. Rows are filled in
/// parallel. Throws DomainError naming the pair if two atoms coincide.
CouplingMatrix assemble_matrix(const Sample& sample,
                               const PhysicalParams& params);

/// Row-major interleaved (re, im) little-endian float64, preceded by the
/// dimension as a uint64.
void write_matrix_binary(const CouplingMatrix& m,
                         const std::filesystem::path& path);

/// One row per matrix row: re0,im0,re1,im1,...
void write_matrix_csv(const CouplingMatrix& m,
                      const std::filesystem::path& path);

}  // namespace radiant
