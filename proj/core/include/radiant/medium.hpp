#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace radiant {

using Vec3 = Eigen::Vector3d;

/// Physical parameters of the medium. Rates everywhere in the library are in
/// units of the isolated-atom decay rate.
///
///   k0  resonant wavenumber, > 0
///   mu  inverse correlation length, >= 0 (0 = unregularized kernel)
///   rho number density, > 0
struct PhysicalParams {
  double k0 = 1.0;
  double mu = 0.0;
  double rho = 1.0;

  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

enum class Geometry { UniformBall, DickeCluster, Explicit };

std::string_view to_string(Geometry g);

/// Version tag of the position sampler. Bumped whenever the mapping from
/// (geometry, seed, n) to positions changes.
inline constexpr int kSamplerVersion = 1;
inline constexpr std::string_view kSamplerName = "mt19937_64-ball-rejection";

/// Default minimum pairwise separation in units of 1/k0.
inline constexpr double kMinSeparationFactor = 1e-6;

/// Dicke clusters require epsilon * k0 below this bound.
inline constexpr double kDickeMaxSize = 0.05;

/// An immutable set of atomic positions together with how it was generated.
class Sample {
 public:
  /// Wraps caller-supplied positions (geometry Explicit). Throws DomainError
  /// if two atoms coincide, InvalidArgument if empty.
  static Sample from_positions(std::vector<Vec3> positions);

  std::span<const Vec3> positions() const { return positions_; }
  const Vec3& operator[](std::size_t i) const { return positions_[i]; }
  std::size_t size() const { return positions_.size(); }
  Geometry geometry() const { return geometry_; }
  /// Ball radius for UniformBall / DickeCluster; bounding radius for Explicit.
  double radius() const { return radius_; }
  std::uint64_t seed() const { return seed_; }

  /// Smallest pairwise distance (infinity for a single atom). O(n^2).
  double min_separation() const;

 private:
  Sample(std::vector<Vec3> positions, Geometry geometry, double radius,
         std::uint64_t seed)
      : positions_(std::move(positions)),
        geometry_(geometry),
        radius_(radius),
        seed_(seed) {}

  friend Sample uniform_ball_sample(std::size_t, double, std::uint64_t, double);
  friend Sample dicke_cluster(std::size_t, double, double, std::uint64_t);

  std::vector<Vec3> positions_;
  Geometry geometry_;
  double radius_;
  std::uint64_t seed_;
};

/// n points i.i.d. uniform in the ball of the given radius, centred at the
/// origin. A point closer than `min_separation` to an earlier point is
/// redrawn. Deterministic per seed; see README for the exact algorithm.
Sample uniform_ball_sample(std::size_t n, double radius, std::uint64_t seed,
                           double min_separation = kMinSeparationFactor);

/// Uniform ball of radius epsilon with epsilon * k0 < 0.05.
Sample dicke_cluster(std::size_t n, double epsilon, double k0,
                     std::uint64_t seed);

/// round(rho * 4/3 pi R^3), at least 1.
std::size_t density_to_count(const PhysicalParams& params, double radius);

/// Volume of a ball, 4/3 pi R^3.
double ball_volume(double radius);

/// `x,y,z` header, one row per atom, 17 significant digits.
void write_sample_csv(const Sample& sample, const std::filesystem::path& path);

/// JSON sidecar {geometry, seed, n, radius, sampler}.
void write_sample_sidecar(const Sample& sample,
                          const std::filesystem::path& path);

}  // namespace radiant
