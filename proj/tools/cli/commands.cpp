#include "cli/commands.hpp"

#include <cmath>
#include <iostream>
#include <numeric>
#include <vector>

#include "radiant/continuum.hpp"
#include "radiant/dynamics.hpp"
#include "radiant/errors.hpp"
#include "radiant/io.hpp"
#include "radiant/kernel.hpp"
#include "radiant/parallel.hpp"
#include "radiant/spectra.hpp"

namespace radiant::cli {

namespace {

using nlohmann::json;

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = io::open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

json complex_json(cdouble z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json inputs_json(const RunConfig& cfg, const PhysicalParams& p) {
  json j = {{"k0", p.k0}, {"mu", p.mu}, {"rho", p.rho}, {"seed", cfg.seed}};
  if (cfg.radius) j["radius"] = *cfg.radius;
  if (cfg.n) j["n"] = *cfg.n;
  return j;
}

Sample make_sample(const RunConfig& cfg, std::size_t n, std::uint64_t seed) {
  if (cfg.geometry == SampleGeometry::Dicke) return dicke_cluster(n, *cfg.radius, cfg.k0, seed);
  return uniform_ball_sample(n, *cfg.radius, seed, kMinSeparationFactor / cfg.k0);
}

std::vector<std::uint64_t> ensemble_seeds(const RunConfig& cfg) {
  std::vector<std::uint64_t> seeds(cfg.ensemble);
  std::iota(seeds.begin(), seeds.end(), cfg.seed);
  return seeds;
}

// Runs fn(i) for every ensemble member on the worker pool. Results land in
// slot i, so aggregation order is fixed by seed regardless of scheduling.
template <class R, class Fn>
std::vector<R> run_ensemble(std::size_t count, Fn fn) {
  std::vector<R> out(count);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
  });
  return out;
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

void write_spectrum(const RunConfig& cfg, const Spectrum& s,
                    const std::filesystem::path& stem) {
  if (cfg.format == OutputFormat::Csv) {
    write_spectrum_csv(s, stem.string() + ".csv");
    return;
  }
  json rows = json::array();
  for (std::size_t j = 0; j < s.size(); ++j) {
    json row = {{"index", j},
                {"re_lambda", s.eigenvalues[j].real()},
                {"im_lambda", s.eigenvalues[j].imag()}};
    row["residual"] = j < s.residuals.size() ? json(s.residuals[j]) : json(nullptr);
    rows.push_back(row);
  }
  write_json(stem.string() + ".json", rows);
}

}  // namespace

int cmd_sample(const RunConfig& cfg) {
  validate(cfg);
  const auto count = resolve_count(cfg);
  const Sample s = make_sample(cfg, count.n, cfg.seed);
  const auto dir = cfg.output_path;
  if (cfg.format == OutputFormat::Csv) {
    write_sample_csv(s, dir / "sample.csv");
    write_sample_sidecar(s, dir / "sample.json");
  } else {
    json j = {{"geometry", to_string(s.geometry())},
              {"seed", s.seed()},
              {"n", s.size()},
              {"radius", s.radius()},
              {"sampler", {{"name", kSamplerName}, {"version", kSamplerVersion}}}};
    json pos = json::array();
    for (const auto& p : s.positions()) pos.push_back({p.x(), p.y(), p.z()});
    j["positions"] = std::move(pos);
    write_json(dir / "sample.json", j);
  }
  std::cout << "wrote " << s.size() << " atoms to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg) {
  validate(cfg);
  const auto count = resolve_count(cfg);
  PhysicalParams params{cfg.k0, cfg.mu, count.rho};
  params.validate();
  const auto seeds = ensemble_seeds(cfg);

  struct Run {
    Spectrum spectrum;
    SpectrumStats stats;
  };
  const auto runs = run_ensemble<Run>(seeds.size(), [&](std::size_t i) {
    const Sample sample = make_sample(cfg, count.n, seeds[i]);
    const CouplingMatrix m = assemble_matrix(sample, params);
    if (cfg.dump_matrix && seeds.size() == 1) write_matrix_binary(m, cfg.output_path / "matrix.bin");
    Run r;
    r.spectrum = eigendecompose(m, !cfg.eigenvalues_only);
    r.stats = classify(r.spectrum, cfg.threshold);
    return r;
  });

  const double radius = *cfg.radius;
  json predictions = json::object();
  const bool large = params.k0 * radius >= 1.0;
  if (large) {
    const double count_pred = superradiant_count_prediction(params, radius);
    predictions["superradiant_count"] = count_pred;
    predictions["superradiant_rate"] = superradiant_rate_prediction(params, radius);
    predictions["top_modes"] = static_cast<std::size_t>(std::ceil(count_pred));
  } else {
    predictions["superradiant_count"] = nullptr;
    predictions["superradiant_rate"] = nullptr;
  }
  if (params.k0 * radius < kDickeMaxSize) predictions["dicke_rate"] = static_cast<double>(count.n);

  json run_list = json::array();
  double sum_count = 0.0;
  double sum_max = 0.0;
  double sum_top = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    const cdouble tr = r.spectrum.trace();
    json entry = {{"seed", seeds[i]},
                  {"n", count.n},
                  {"n_superradiant", r.stats.n_superradiant},
                  {"max_rate", r.stats.max_rate},
                  {"threshold", r.stats.threshold},
                  {"trace", complex_json(tr)}};
    entry["mean_superradiant_rate"] =
        r.stats.mean_superradiant_rate ? json(*r.stats.mean_superradiant_rate) : json(nullptr);
    entry["worst_residual"] =
        r.spectrum.residuals.empty() ? json(nullptr) : json(r.spectrum.worst_residual());
    if (large) {
      const double top = top_mode_mean_rate(r.spectrum, predictions["top_modes"].get<std::size_t>());
      entry["top_mode_mean_rate"] = top;
      sum_top += top;
    }
    sum_count += static_cast<double>(r.stats.n_superradiant);
    sum_max += r.stats.max_rate;
    run_list.push_back(entry);

    const std::string stem = runs.size() == 1 ? "spectrum" : "spectrum_seed" + std::to_string(seeds[i]);
    write_spectrum(cfg, r.spectrum, cfg.output_path / stem);
  }

  const auto m = static_cast<double>(runs.size());
  json stats = {{"inputs", inputs_json(cfg, params)},
                {"geometry", cfg.geometry == SampleGeometry::Dicke ? "dicke_cluster" : "uniform_ball"},
                {"ensemble", runs.size()},
                {"threshold", cfg.threshold},
                {"predictions", predictions},
                {"runs", run_list}};
  stats["inputs"]["n"] = count.n;
  if (runs.size() == 1) {
    stats["n_superradiant"] = run_list[0]["n_superradiant"];
    stats["mean_superradiant_rate"] = run_list[0]["mean_superradiant_rate"];
    stats["max_rate"] = run_list[0]["max_rate"];
    if (large) stats["top_mode_mean_rate"] = run_list[0]["top_mode_mean_rate"];
  } else {
    stats["n_superradiant_mean"] = sum_count / m;
    stats["max_rate_mean"] = sum_max / m;
    if (large) stats["top_mode_mean_rate_mean"] = sum_top / m;
  }
  write_json(cfg.output_path / "stats.json", stats);
  std::cout << "spectrum of " << count.n << " atoms x " << runs.size() << " run(s) written to "
            << cfg.output_path.string() << '\n';
  return kExitOk;
}

int cmd_dispersion(const RunConfig& cfg) {
  validate(cfg);
  const PhysicalParams params = cfg.params();
  const auto curve =
      dispersion_curve(params, cfg.k_min, cfg.k_max.value_or(3.0 * params.k0), cfg.points);
  if (cfg.format == OutputFormat::Csv) {
    write_dispersion_csv(curve, cfg.output_path / "dispersion.csv");
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < curve.k_values.size(); ++i) {
      rows.push_back({{"k", curve.k_values[i]},
                      {"re_lambda", curve.lambdas[i].real()},
                      {"im_lambda", curve.lambdas[i].imag()}});
    }
    write_json(cfg.output_path / "dispersion.json", rows);
  }

  json peaks;
  if (params.mu > 0.0) {
    const PeakSummary p = peak_summary(params);
    peaks = {{"regime", to_string(p.regime)},
             {"k_peak", p.k_peak},
             {"lambda_peak", p.lambda_peak},
             {"width_nominal", p.width},
             {"width_half_max", half_max_width(params)}};
  } else {
    // mu = 0: the real part is a delta-like pole on |k| = k0.
    peaks = {{"regime", "unregularized"},
             {"k_peak", params.k0},
             {"lambda_peak", nullptr},
             {"width_nominal", 0.0},
             {"width_half_max", nullptr}};
  }
  write_json(cfg.output_path / "peaks.json", peaks);
  std::cout << "dispersion: " << curve.k_values.size() << " points written to "
            << cfg.output_path.string() << '\n';
  return kExitOk;
}

int cmd_transform_check(const RunConfig& cfg) {
  validate(cfg);
  const PhysicalParams params = cfg.params();
  const QuadratureResult q = kernel_transform_quadrature(cfg.k, params, cfg.tol);
  const cdouble closed = dispersion(cfg.k, params);
  const double rel = std::abs(q.value - closed) / std::abs(closed);
  const bool pass = rel < kTransformTolerance;
  json j = {{"inputs", {{"k", cfg.k}, {"k0", params.k0}, {"mu", params.mu}, {"rho", params.rho},
                        {"tol", cfg.tol}}},
            {"quadrature", {{"re", q.value.real()}, {"im", q.value.imag()},
                            {"error_estimate", q.error_estimate}}},
            {"closed_form", complex_json(closed)},
            {"relative_difference", rel},
            {"tolerance", kTransformTolerance},
            {"pass", pass}};
  write_json(cfg.output_path / "transform_check.json", j);
  std::cout << (pass ? "PASS" : "FAIL") << " transform-check relative difference " << rel << '\n';
  return pass ? kExitOk : kExitNumerical;
}

int cmd_mode_count(const RunConfig& cfg) {
  validate(cfg);
  const PhysicalParams params = cfg.params();
  json j = {{"inputs", {{"k0", params.k0}, {"mu", params.mu}, {"rho", params.rho}}}};
  if (cfg.box_side) {
    j["inputs"]["box_side"] = *cfg.box_side;
    j["shell_modes"] = mode_count_shell(params, *cfg.box_side);
  }
  const ModeCountIdentity id = mode_count_identity_check(params);
  const double rel = relative_difference(id.lhs, id.rhs);
  const bool pass = rel <= kModeCountTolerance;
  const double mu3 = params.mu * params.mu * params.mu;
  j["regime"] = to_string(id.regime);
  j["atoms_per_correlation_volume"] = params.rho / mu3;
  j["modes_per_correlation_volume"] = modes_per_correlation_volume(params);
  j["lambda_peak"] = peak_summary(params).lambda_peak;
  j["lhs"] = id.lhs;
  j["rhs"] = id.rhs;
  j["relative_difference"] = rel;
  j["tolerance"] = kModeCountTolerance;
  j["pass"] = pass;
  write_json(cfg.output_path / "mode_count.json", j);
  std::cout << (pass ? "PASS" : "FAIL") << " mode-count lhs " << io::format_double(id.lhs)
            << " rhs " << io::format_double(id.rhs) << '\n';
  return pass ? kExitOk : kExitNumerical;
}

int cmd_quotient(const RunConfig& cfg) {
  validate(cfg);
  const auto count = resolve_count(cfg);
  const PhysicalParams params{cfg.k0, cfg.mu, count.rho};
  const double radius = *cfg.radius;
  const auto seeds = ensemble_seeds(cfg);

  struct Run {
    QuotientExperiment on_peak;
    QuotientExperiment off_peak;
  };
  const auto runs = run_ensemble<Run>(seeds.size(), [&](std::size_t i) {
    return Run{plane_wave_quotient_experiment(params, radius, seeds[i], cfg.carrier_k),
               plane_wave_quotient_experiment(params, radius, seeds[i], 0.0)};
  });

  json run_list = json::array();
  double sum = 0.0;
  bool above_off_peak = true;
  for (const auto& r : runs) {
    run_list.push_back({{"seed", r.on_peak.seed},
                        {"n", r.on_peak.n},
                        {"carrier_k", r.on_peak.carrier_k},
                        {"measured", r.on_peak.measured},
                        {"quotient", complex_json(r.on_peak.quotient)},
                        {"off_peak_measured", r.off_peak.measured}});
    sum += r.on_peak.measured;
    above_off_peak = above_off_peak && r.on_peak.measured > r.off_peak.measured;
  }
  const double predicted = runs.front().on_peak.predicted;
  const double measured = sum / static_cast<double>(runs.size());
  const double rel = std::abs(measured - predicted) / predicted;
  const bool pass = rel <= kQuotientTolerance;
  json j = {{"inputs", inputs_json(cfg, params)},
            {"predicted", predicted},
            {"measured", measured},
            {"n", runs.front().on_peak.n},
            {"seed", cfg.seed},
            {"ensemble", runs.size()},
            {"relative_difference", rel},
            {"tolerance", kQuotientTolerance},
            {"on_peak_exceeds_off_peak", above_off_peak},
            {"pass", pass},
            {"note", "predicted = 1 + lambda_peak: the diagonal self-term contributes exactly 1"},
            {"runs", run_list}};
  write_json(cfg.output_path / "quotient.json", j);
  std::cout << (pass ? "PASS" : "FAIL") << " quotient measured " << measured << " predicted "
            << predicted << '\n';
  return pass ? kExitOk : kExitNumerical;
}

int cmd_evolve(const RunConfig& cfg) {
  validate(cfg);
  const auto count = resolve_count(cfg);
  const PhysicalParams params{cfg.k0, cfg.mu, count.rho};
  const Sample sample = make_sample(cfg, count.n, cfg.seed);
  const CouplingMatrix m = assemble_matrix(sample, params);
  const auto n = static_cast<Eigen::Index>(sample.size());

  Eigen::VectorXcd initial;
  if (cfg.initial == "uniform") {
    initial = Eigen::VectorXcd::Ones(n);
  } else if (cfg.initial == "atom") {
    initial = Eigen::VectorXcd::Unit(n, 0);
  } else if (cfg.initial == "top-mode") {
    initial = eigendecompose(m, true).eigenvectors->col(0);
  } else if (cfg.initial == "plane-wave") {
    const double k = params.mu > 0.0 ? peak_summary(params).k_peak : params.k0;
    initial = make_wave_packet(sample, Vec3(0.0, 0.0, k)).amplitudes;
  } else {
    throw InvalidArgument("unknown --initial '" + cfg.initial +
                          "' (expected uniform, atom, top-mode or plane-wave)");
  }

  std::vector<double> times(cfg.steps + 1);
  for (std::size_t i = 0; i <= cfg.steps; ++i) {
    times[i] = cfg.t_max * static_cast<double>(i) / static_cast<double>(cfg.steps);
  }
  const DecayTrace trace = evolve(m, initial, times, cfg.initial);

  if (cfg.format == OutputFormat::Csv) {
    write_decay_csv(trace, cfg.output_path / "decay.csv");
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
      rows.push_back({{"t", trace.times[i]}, {"intensity", trace.intensities[i]}});
    }
    write_json(cfg.output_path / "decay.json", rows);
  }
  json inputs = inputs_json(cfg, params);
  inputs["n"] = count.n;
  json j = {{"inputs", inputs},
            {"initial_state", trace.initial_state},
            {"method", to_string(trace.method)},
            {"convention", "d beta/dt = -(1/2) M beta; intensity = |beta(t)|^2/|beta(0)|^2"},
            {"t_max", cfg.t_max},
            {"steps", cfg.steps},
            {"final_intensity", trace.intensities.back()}};
  write_json(cfg.output_path / "evolve.json", j);
  std::cout << "evolve: " << trace.times.size() << " samples via " << to_string(trace.method)
            << '\n';
  return kExitOk;
}

}  // namespace radiant::cli
