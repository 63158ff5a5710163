#include "radiant/continuum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radiant/errors.hpp"
#include "radiant/io.hpp"

namespace radiant {

namespace {

constexpr double kPi = std::numbers::pi;

void require_regularized(const PhysicalParams& params, const char* what) {
  params.validate();
  if (!(params.mu > 0.0)) {
    throw DomainError(std::string(what) + " requires mu > 0 (the mu = 0 dispersion has a pole)");
  }
}

double re_dispersion(double k, const PhysicalParams& p) { return dispersion(k, p).real(); }

// Root of Re lambda(k) - level on [lo, hi], where the sign differs at the ends.
double bisect_level(const PhysicalParams& p, double level, double lo, double hi) {
  const bool lo_above = re_dispersion(lo, p) >= level;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((re_dispersion(mid, p) >= level) == lo_above) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

cdouble dispersion(double k, const PhysicalParams& params) {
  params.validate();
  if (!(k >= 0.0)) throw DomainError("dispersion requires k >= 0");
  if (params.mu == 0.0 && k == params.k0) {
    throw DomainError("pole of the unregularized dispersion at k = k0 (infinite real part)");
  }
  const cdouble shifted(params.mu, -params.k0);
  return (4.0 * kPi * params.rho / cdouble(0.0, params.k0)) / (k * k + shifted * shifted);
}

DispersionCurve dispersion_curve(const PhysicalParams& params, double k_min,
                                 double k_max, std::size_t points) {
  params.validate();
  if (points < 2) throw InvalidArgument("dispersion grid needs at least 2 points");
  if (!(k_min >= 0.0 && k_max > k_min)) throw InvalidArgument("need 0 <= k_min < k_max");
  DispersionCurve curve;
  curve.params = params;
  curve.k_values.reserve(points);
  curve.lambdas.reserve(points);
  const double span = k_max - k_min;
  for (std::size_t i = 0; i < points; ++i) {
    const double k = k_min + span * static_cast<double>(i) / static_cast<double>(points - 1);
    if (params.mu == 0.0 && k == params.k0) continue;
    curve.k_values.push_back(k);
    curve.lambdas.push_back(dispersion(k, params));
  }
  return curve;
}

DispersionCurve dispersion_curve(const PhysicalParams& params) {
  return dispersion_curve(params, 0.0, 3.0 * params.k0, 400);
}

std::string_view to_string(Regime r) {
  return r == Regime::SubcriticalMu ? "subcritical_mu" : "dicke";
}

Regime regime_of(const PhysicalParams& params) {
  return params.mu < params.k0 ? Regime::SubcriticalMu : Regime::Dicke;
}

PeakSummary peak_summary(const PhysicalParams& params) {
  require_regularized(params, "peak_summary");
  const double k0 = params.k0;
  const double mu = params.mu;
  PeakSummary s;
  s.regime = regime_of(params);
  if (s.regime == Regime::SubcriticalMu) {
    s.k_peak = std::sqrt(k0 * k0 - mu * mu);
    s.lambda_peak = 2.0 * kPi * params.rho / (mu * k0 * k0);
    s.width = 2.0 * mu;
  } else {
    const double d = mu * mu + k0 * k0;
    s.k_peak = 0.0;
    s.lambda_peak = 8.0 * kPi * params.rho * mu / (d * d);
    s.width = mu;
  }
  return s;
}

double dicke_peak_approximation(const PhysicalParams& params) {
  require_regularized(params, "dicke_peak_approximation");
  return 8.0 * kPi * params.rho / (params.mu * params.mu * params.mu);
}

double half_max_width(const PhysicalParams& params) {
  const PeakSummary peak = peak_summary(params);
  const double half = 0.5 * peak.lambda_peak;

  double left = 0.0;
  if (peak.k_peak > 0.0 && re_dispersion(0.0, params) < half) {
    left = bisect_level(params, half, 0.0, peak.k_peak);
  }
  double hi = peak.k_peak + params.mu + params.k0;
  while (re_dispersion(hi, params) >= half) hi *= 2.0;
  const double right = bisect_level(params, half, peak.k_peak, hi);
  return right - left;
}

QuadratureResult kernel_transform_quadrature(double k,
                                             const PhysicalParams& params,
                                             double tol) {
  require_regularized(params, "kernel_transform_quadrature");
  if (!(k > 0.0)) throw DomainError("kernel_transform_quadrature requires k > 0");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be > 0");

  const double mu = params.mu;
  const double r_max = 40.0 / mu;
  const cdouble decay(-mu, params.k0);
  auto integrand = [k, decay](double r) { return std::sin(k * r) * std::exp(decay * r); };

  // Roughly four oscillation periods per panel keeps each adaptive
  // subproblem smooth.
  const double period = 2.0 * kPi / (k + params.k0);
  const auto panels = static_cast<std::size_t>(std::ceil(r_max / (4.0 * period)));
  const double h = r_max / static_cast<double>(panels);

  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  cdouble integral{};
  double err = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    double panel_err = 0.0;
    const double a = h * static_cast<double>(p);
    const double b = p + 1 == panels ? r_max : a + h;
    integral += Rule::integrate(integrand, a, b, 15, 1e-14, &panel_err);
    err += panel_err;
  }

  const cdouble prefactor = 4.0 * kPi * params.rho / cdouble(0.0, params.k0 * k);
  const double tail = std::exp(-mu * r_max) / mu;
  QuadratureResult result;
  result.value = prefactor * integral;
  result.error_estimate = std::abs(prefactor) * (err + tail);
  if (!(result.error_estimate <= tol * std::abs(result.value))) {
    std::ostringstream msg;
    msg << "quadrature error estimate " << result.error_estimate << " exceeds requested relative "
        << tol << " of |value| = " << std::abs(result.value);
    throw NumericalError(msg.str(), panels, result.error_estimate / std::abs(result.value));
  }
  return result;
}

double mode_count_shell(const PhysicalParams& params, double box_side) {
  params.validate();
  if (!(params.mu < params.k0)) {
    throw RegimeError("shell mode count needs mu < k0; for mu >= k0 use the Dicke-regime count");
  }
  if (!(box_side > 0.0)) throw InvalidArgument("box side must be > 0");
  const double shell_volume = (2.0 * params.mu) * (4.0 * kPi * params.k0 * params.k0);
  const double cell = 2.0 * kPi / box_side;
  return shell_volume / (cell * cell * cell);
}

double modes_per_correlation_volume(const PhysicalParams& params) {
  require_regularized(params, "modes_per_correlation_volume");
  const double mu = params.mu;
  if (regime_of(params) == Regime::SubcriticalMu) return mode_count_shell(params, 1.0 / mu);
  const double sphere = 4.0 * kPi * mu * mu * mu / 3.0;
  const double cell = 2.0 * kPi * mu;
  return sphere / (cell * cell * cell);
}

ModeCountIdentity mode_count_identity_check(const PhysicalParams& params) {
  require_regularized(params, "mode_count_identity_check");
  if (params.mu == params.k0) {
    throw RegimeError("mode-count identity is undefined at the regime boundary mu = k0");
  }
  ModeCountIdentity id;
  id.regime = regime_of(params);
  const double mu = params.mu;
  id.lhs = (params.rho / (mu * mu * mu)) / modes_per_correlation_volume(params);
  if (id.regime == Regime::SubcriticalMu) {
    id.rhs = 0.5 * kPi * peak_summary(params).lambda_peak;
  } else {
    id.rhs = 0.75 * kPi * dicke_peak_approximation(params);
  }
  return id;
}

void write_dispersion_csv(const DispersionCurve& curve,
                          const std::filesystem::path& path) {
  auto out = io::open_output(path);
  out << "k,re_lambda,im_lambda\n";
  for (std::size_t i = 0; i < curve.k_values.size(); ++i) {
    out << io::format_double(curve.k_values[i]) << ','
        << io::format_double(curve.lambdas[i].real()) << ','
        << io::format_double(curve.lambdas[i].imag()) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace radiant
