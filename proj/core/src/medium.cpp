#include "radiant/medium.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "radiant/errors.hpp"
#include "radiant/io.hpp"

namespace radiant {

void PhysicalParams::validate() const {
  if (!(std::isfinite(k0) && k0 > 0.0)) {
    throw InvalidArgument("k0 must be finite and > 0");
  }
  if (!(std::isfinite(mu) && mu >= 0.0)) {
    throw InvalidArgument("mu must be finite and >= 0");
  }
  if (!(std::isfinite(rho) && rho > 0.0)) {
    throw InvalidArgument("rho must be finite and > 0");
  }
}

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::UniformBall:
      return "uniform_ball";
    case Geometry::DickeCluster:
      return "dicke_cluster";
    case Geometry::Explicit:
      return "explicit";
  }
  return "unknown";
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit_draw(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Buckets points in cubes of side `cell` so a minimum-distance query only
// visits the 27 neighbouring cells.
class SeparationGrid {
 public:
  explicit SeparationGrid(double cell) : cell_(cell) {}

  bool too_close(const Vec3& p, const std::vector<Vec3>& points) const {
    const auto c = cell_of(p);
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          auto it = buckets_.find(Key{c[0] + dx, c[1] + dy, c[2] + dz});
          if (it == buckets_.end()) continue;
          for (std::size_t idx : it->second) {
            if ((points[idx] - p).norm() < cell_) return true;
          }
        }
      }
    }
    return false;
  }

  void insert(const Vec3& p, std::size_t idx) { buckets_[cell_of(p)].push_back(idx); }

 private:
  using Key = std::array<std::int64_t, 3>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 1469598103934665603ULL;
      for (auto v : k) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 1099511628211ULL;
      }
      return static_cast<std::size_t>(h);
    }
  };

  Key cell_of(const Vec3& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x() / cell_)),
            static_cast<std::int64_t>(std::floor(p.y() / cell_)),
            static_cast<std::int64_t>(std::floor(p.z() / cell_))};
  }

  double cell_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
};

// Points in the unit ball by rejection from the cube [-1, 1)^3.
std::vector<Vec3> unit_ball_points(std::size_t n, std::uint64_t seed,
                                   double min_separation) {
  std::mt19937_64 engine(seed);
  std::vector<Vec3> points;
  points.reserve(n);
  const bool check = min_separation > 0.0;
  SeparationGrid grid(check ? min_separation : 1.0);
  while (points.size() < n) {
    const double x = 2.0 * unit_draw(engine) - 1.0;
    const double y = 2.0 * unit_draw(engine) - 1.0;
    const double z = 2.0 * unit_draw(engine) - 1.0;
    if (x * x + y * y + z * z > 1.0) continue;
    const Vec3 p(x, y, z);
    if (check) {
      if (grid.too_close(p, points)) continue;
      grid.insert(p, points.size());
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace

Sample Sample::from_positions(std::vector<Vec3> positions) {
  if (positions.empty()) throw InvalidArgument("sample must contain at least one atom");
  double bound = 0.0;
  for (std::size_t a = 0; a < positions.size(); ++a) {
    if (!positions[a].allFinite()) {
      throw InvalidArgument("atom " + std::to_string(a) + " has a non-finite coordinate");
    }
    bound = std::max(bound, positions[a].norm());
    for (std::size_t b = 0; b < a; ++b) {
      if ((positions[a] - positions[b]).norm() == 0.0) {
        throw DomainError("atoms " + std::to_string(b) + " and " + std::to_string(a) +
                          " coincide");
      }
    }
  }
  return Sample(std::move(positions), Geometry::Explicit, bound, 0);
}

double Sample::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < positions_.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      best = std::min(best, (positions_[a] - positions_[b]).norm());
    }
  }
  return best;
}

Sample uniform_ball_sample(std::size_t n, double radius, std::uint64_t seed,
                           double min_separation) {
  if (n == 0) throw InvalidArgument("atom count must be >= 1");
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw InvalidArgument("radius must be finite and > 0");
  }
  if (!(min_separation >= 0.0)) throw InvalidArgument("min_separation must be >= 0");

  auto points = unit_ball_points(n, seed, min_separation / radius);
  for (auto& p : points) p *= radius;
  return Sample(std::move(points), Geometry::UniformBall, radius, seed);
}

Sample dicke_cluster(std::size_t n, double epsilon, double k0,
                     std::uint64_t seed) {
  if (!(k0 > 0.0)) throw InvalidArgument("k0 must be > 0");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (!(epsilon * k0 < kDickeMaxSize)) {
    std::ostringstream msg;
    msg << "Dicke condition violated: epsilon*k0 = " << epsilon * k0
        << " must be < " << kDickeMaxSize;
    throw DomainError(msg.str());
  }
  Sample s = uniform_ball_sample(n, epsilon, seed, kMinSeparationFactor / k0);
  s.geometry_ = Geometry::DickeCluster;
  return s;
}

double ball_volume(double radius) {
  return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
}

std::size_t density_to_count(const PhysicalParams& params, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("radius must be > 0");
  const double n = std::round(params.rho * ball_volume(radius));
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

void write_sample_csv(const Sample& sample, const std::filesystem::path& path) {
  auto out = io::open_output(path);
  out << "x,y,z\n";
  for (const auto& p : sample.positions()) {
    out << io::format_double(p.x()) << ',' << io::format_double(p.y()) << ','
        << io::format_double(p.z()) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_sample_sidecar(const Sample& sample,
                          const std::filesystem::path& path) {
  nlohmann::json j;
  j["geometry"] = to_string(sample.geometry());
  j["seed"] = sample.seed();
  j["n"] = sample.size();
  j["radius"] = sample.radius();
  j["sampler"] = {{"name", kSamplerName}, {"version", kSamplerVersion}};
  auto out = io::open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace radiant
