#include "cli/run_config.hpp"

#include <cmath>
#include <sstream>

#include "radiant/errors.hpp"

namespace radiant::cli {

namespace {

template <class T>
struct is_optional : std::false_type {};
template <class T>
struct is_optional<std::optional<T>> : std::true_type {};

}  // namespace

PhysicalParams RunConfig::params() const {
  PhysicalParams p{k0, mu, rho.value_or(1.0)};
  if (!rho && n && radius && *radius > 0.0) {
    p.rho = static_cast<double>(*n) / ball_volume(*radius);
  }
  return p;
}

ResolvedCount resolve_count(const RunConfig& cfg) {
  if (!cfg.radius) throw InvalidArgument("--radius is required");
  if (!(*cfg.radius > 0.0)) throw InvalidArgument("--radius must be > 0");
  const double volume = ball_volume(*cfg.radius);
  if (cfg.n && cfg.rho) {
    const PhysicalParams p{cfg.k0, cfg.mu, *cfg.rho};
    const std::size_t expected = density_to_count(p, *cfg.radius);
    if (expected != *cfg.n) {
      std::ostringstream msg;
      msg << "--n " << *cfg.n << " is inconsistent with --rho " << *cfg.rho << " and --radius "
          << *cfg.radius << " (which give " << expected << " atoms)";
      throw InvalidArgument(msg.str());
    }
    return {*cfg.n, *cfg.rho};
  }
  if (cfg.n) {
    if (*cfg.n == 0) throw InvalidArgument("--n must be >= 1");
    return {*cfg.n, static_cast<double>(*cfg.n) / volume};
  }
  if (cfg.rho) {
    const PhysicalParams p{cfg.k0, cfg.mu, *cfg.rho};
    p.validate();
    return {density_to_count(p, *cfg.radius), *cfg.rho};
  }
  throw InvalidArgument("one of --n or --rho is required");
}

void validate(const RunConfig& cfg) {
  PhysicalParams{cfg.k0, cfg.mu, cfg.rho.value_or(1.0)}.validate();
  if (cfg.radius && !(*cfg.radius > 0.0)) throw InvalidArgument("--radius must be > 0");
  if (cfg.n && *cfg.n == 0) throw InvalidArgument("--n must be >= 1");
  if (cfg.ensemble == 0) throw InvalidArgument("--ensemble must be >= 1");
  if (cfg.points < 2) throw InvalidArgument("--points must be >= 2");
  if (!(cfg.tol > 0.0)) throw InvalidArgument("--tol must be > 0");
  if (!(cfg.t_max > 0.0)) throw InvalidArgument("--t-max must be > 0");
  if (cfg.steps == 0) throw InvalidArgument("--steps must be >= 1");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw InvalidArgument("unknown format '" + s + "' (expected csv or json)");
}

SampleGeometry parse_geometry(const std::string& s) {
  if (s == "ball") return SampleGeometry::Ball;
  if (s == "dicke") return SampleGeometry::Dicke;
  throw InvalidArgument("unknown geometry '" + s + "' (expected ball or dicke)");
}

void apply_config_json(RunConfig& cfg, const nlohmann::json& j,
                       const std::function<bool(const std::string&)>& unset) {
  if (!j.is_object()) throw InvalidArgument("config file must hold a JSON object");
  auto take = [&](const char* key, auto& field) {
    if (!j.contains(key) || !unset(key)) return;
    using T = std::decay_t<decltype(field)>;
    try {
      if constexpr (is_optional<T>::value) {
        field = j.at(key).get<typename T::value_type>();
      } else {
        field = j.at(key).get<T>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("config key '") + key + "': " + e.what());
    }
  };
  take("k0", cfg.k0);
  take("mu", cfg.mu);
  take("rho", cfg.rho);
  take("radius", cfg.radius);
  take("n", cfg.n);
  take("seed", cfg.seed);
  take("ensemble", cfg.ensemble);
  take("threshold", cfg.threshold);
  take("k-min", cfg.k_min);
  take("k-max", cfg.k_max);
  take("points", cfg.points);
  take("k", cfg.k);
  take("tol", cfg.tol);
  take("box-side", cfg.box_side);
  take("carrier-k", cfg.carrier_k);
  take("t-max", cfg.t_max);
  take("steps", cfg.steps);
  take("initial", cfg.initial);
  if (j.contains("output") && unset("output")) {
    cfg.output_path = j.at("output").get<std::string>();
  }
  if (j.contains("format") && unset("format")) {
    cfg.format = parse_format(j.at("format").get<std::string>());
  }
  if (j.contains("geometry") && unset("geometry")) {
    cfg.geometry = parse_geometry(j.at("geometry").get<std::string>());
  }
}

}  // namespace radiant::cli
