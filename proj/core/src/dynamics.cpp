#include "radiant/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>
#include <boost/numeric/odeint.hpp>

#include "radiant/errors.hpp"
#include "radiant/io.hpp"
#include "radiant/spectra.hpp"

namespace radiant {

namespace {

void check_state(const Eigen::VectorXcd& state, const CouplingMatrix& matrix) {
  if (static_cast<std::size_t>(state.size()) != matrix.size()) {
    throw DomainError("state has " + std::to_string(state.size()) + " amplitudes, matrix is " +
                      std::to_string(matrix.size()) + "x" + std::to_string(matrix.size()));
  }
  if (state.squaredNorm() == 0.0) throw DomainError("state vector is zero");
}

void check_times(const std::vector<double>& times) {
  if (times.empty() || times.front() != 0.0) {
    throw InvalidArgument("time grid must start at t = 0");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("time grid must be strictly ascending");
  }
}

// Relative reconstruction error allowed when expanding the initial state.
constexpr double kExpansionTolerance = 1e-10;
// Reciprocal condition number below which the eigenbasis is treated as
// defective.
constexpr double kMinBasisRcond = 1e-12;

}  // namespace

Eigen::VectorXcd WavePacket::conj_normalized() const {
  const double n = amplitudes.norm();
  if (n == 0.0) throw DomainError("wave packet has zero amplitude");
  return amplitudes / n;
}

Eigen::VectorXcd WavePacket::bilinear_normalized() const {
  const cdouble s = amplitudes.transpose() * amplitudes;
  if (std::abs(s) <= 1e-14 * amplitudes.squaredNorm()) {
    throw DomainError("wave packet is self-orthogonal under the bilinear form");
  }
  return amplitudes / std::sqrt(s);
}

WavePacket make_wave_packet(const Sample& sample, const Vec3& carrier,
                            const Vec3& center, double envelope_mu) {
  if (!(envelope_mu >= 0.0)) throw InvalidArgument("envelope_mu must be >= 0");
  WavePacket wp;
  wp.carrier = carrier;
  wp.center = center;
  wp.envelope_mu = envelope_mu;
  wp.amplitudes.resize(static_cast<Eigen::Index>(sample.size()));
  for (std::size_t a = 0; a < sample.size(); ++a) {
    const Vec3& r = sample[a];
    wp.amplitudes(static_cast<Eigen::Index>(a)) =
        std::exp(cdouble(-envelope_mu * (r - center).norm(), carrier.dot(r)));
  }
  return wp;
}

cdouble rayleigh_quotient(const Eigen::VectorXcd& state,
                          const CouplingMatrix& matrix) {
  check_state(state, matrix);
  const cdouble num = state.dot(matrix.entries() * state);  // dot conjugates the left side
  return num / state.squaredNorm();
}

cdouble bilinear_quotient(const Eigen::VectorXcd& state,
                          const CouplingMatrix& matrix) {
  check_state(state, matrix);
  const cdouble den = state.transpose() * state;
  if (den == cdouble{}) throw DomainError("state is self-orthogonal under the bilinear form");
  const cdouble num = state.transpose() * (matrix.entries() * state);
  return num / den;
}

QuotientExperiment plane_wave_quotient(const Sample& sample,
                                       const CouplingMatrix& matrix,
                                       double carrier_k) {
  const PeakSummary peak = peak_summary(matrix.params());
  const WavePacket wave = make_wave_packet(sample, Vec3(0.0, 0.0, carrier_k));
  QuotientExperiment e;
  e.predicted = 1.0 + peak.lambda_peak;
  e.quotient = rayleigh_quotient(wave.amplitudes, matrix);
  e.measured = e.quotient.real();
  e.carrier_k = carrier_k;
  e.n = sample.size();
  e.seed = sample.seed();
  return e;
}

QuotientExperiment plane_wave_quotient_experiment(
    const PhysicalParams& params, double radius, std::uint64_t seed,
    std::optional<double> carrier_k) {
  params.validate();
  if (!(params.mu > 0.0)) throw DomainError("plane-wave experiment requires mu > 0");
  if (!(radius >= 8.0 / params.mu)) {
    std::ostringstream msg;
    msg << "radius " << radius << " too small: the experiment needs radius >= 8/mu = "
        << 8.0 / params.mu;
    throw DomainError(msg.str());
  }
  if (carrier_k && !(*carrier_k >= 0.0)) throw InvalidArgument("carrier |k| must be >= 0");

  const std::size_t n = density_to_count(params, radius);
  const Sample sample = uniform_ball_sample(n, radius, seed, kMinSeparationFactor / params.k0);
  const CouplingMatrix matrix = assemble_matrix(sample, params);
  return plane_wave_quotient(sample, matrix, carrier_k.value_or(peak_summary(params).k_peak));
}

std::string_view to_string(EvolutionMethod m) {
  return m == EvolutionMethod::SpectralExpansion ? "spectral_expansion" : "time_stepper";
}

DecayTrace evolve_time_stepper(const CouplingMatrix& matrix,
                               const Eigen::VectorXcd& initial,
                               const std::vector<double>& times,
                               std::string initial_state) {
  check_state(initial, matrix);
  check_times(times);
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<cdouble>;

  const auto n = initial.size();
  const Eigen::MatrixXcd& m = matrix.entries();
  auto rhs = [&m, n](const State& x, State& dxdt, double /*t*/) {
    Eigen::Map<const Eigen::VectorXcd> xv(x.data(), n);
    Eigen::Map<Eigen::VectorXcd> dv(dxdt.data(), n);
    dv.noalias() = -0.5 * (m * xv);
  };

  DecayTrace trace;
  trace.times = times;
  trace.initial_state = std::move(initial_state);
  trace.method = EvolutionMethod::TimeStepper;
  const double norm0 = initial.squaredNorm();
  auto observe = [&](const State& x, double /*t*/) {
    trace.intensities.push_back(Eigen::Map<const Eigen::VectorXcd>(x.data(), n).squaredNorm() /
                                norm0);
  };

  State x(initial.data(), initial.data() + n);
  if (times.size() == 1) {
    observe(x, 0.0);
    return trace;
  }
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-12, 1e-12);
  const double dt0 = std::min(1e-3, times[1] - times[0]);
  odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), dt0, observe);
  if (trace.intensities.size() != times.size()) {
    throw NumericalError("time stepper stopped early", trace.intensities.size(),
                         std::numeric_limits<double>::quiet_NaN());
  }
  return trace;
}

namespace {

// Initial state expanded in the right eigenvectors: beta(0) = V c.
struct Expansion {
  Spectrum spectrum;
  Eigen::VectorXcd coeff;
};

std::optional<Expansion> expand(const CouplingMatrix& matrix, const Eigen::VectorXcd& initial) {
  Expansion e;
  try {
    e.spectrum = eigendecompose(matrix, true);
  } catch (const NumericalError&) {
    return std::nullopt;
  }
  const Eigen::MatrixXcd& v = *e.spectrum.eigenvectors;
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(v);
  e.coeff = lu.solve(initial);
  const double recon = (v * e.coeff - initial).norm() / initial.norm();
  if (lu.rcond() < kMinBasisRcond || !(recon <= kExpansionTolerance)) return std::nullopt;
  return e;
}

Eigen::VectorXcd state_at(const Expansion& e, double t) {
  const auto n = static_cast<Eigen::Index>(e.spectrum.size());
  const Eigen::Map<const Eigen::VectorXcd> lambda(e.spectrum.eigenvalues.data(), n);
  const Eigen::VectorXcd factors = (-0.5 * t * lambda.array()).exp().matrix();
  return *e.spectrum.eigenvectors * factors.cwiseProduct(e.coeff);
}

}  // namespace

Eigen::VectorXcd propagate(const CouplingMatrix& matrix,
                           const Eigen::VectorXcd& initial, double t) {
  check_state(initial, matrix);
  const auto e = expand(matrix, initial);
  if (!e) {
    throw NumericalError("eigenbasis is numerically singular; use the time stepper", 0,
                         std::numeric_limits<double>::quiet_NaN());
  }
  return state_at(*e, t);
}

DecayTrace evolve(const CouplingMatrix& matrix, const Eigen::VectorXcd& initial,
                  const std::vector<double>& times, std::string initial_state) {
  check_state(initial, matrix);
  check_times(times);

  const auto e = expand(matrix, initial);
  if (!e) return evolve_time_stepper(matrix, initial, times, std::move(initial_state));

  DecayTrace trace;
  trace.times = times;
  trace.initial_state = std::move(initial_state);
  trace.method = EvolutionMethod::SpectralExpansion;
  const double norm0 = initial.squaredNorm();
  for (double t : times) {
    // t = 0 is the prepared state itself; skip the round trip through the basis.
    trace.intensities.push_back(t == 0.0 ? 1.0 : state_at(*e, t).squaredNorm() / norm0);
  }
  return trace;
}

void write_decay_csv(const DecayTrace& trace, const std::filesystem::path& path) {
  auto out = io::open_output(path);
  out << "t,intensity\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out << io::format_double(trace.times[i]) << ',' << io::format_double(trace.intensities[i])
        << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace radiant
