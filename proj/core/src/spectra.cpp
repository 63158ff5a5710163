#include "radiant/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <lapacke.h>

#include "radiant/errors.hpp"
#include "radiant/io.hpp"

namespace radiant {

namespace {

// zhseqr's QR sweep cap, ITMAX = 30 * max(10, n).
std::size_t lapack_iteration_cap(Eigen::Index n) {
  return 30 * static_cast<std::size_t>(std::max<Eigen::Index>(10, n));
}

bool descending(const cdouble& a, const cdouble& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

void check_for_k0_radius(const PhysicalParams& params, double radius) {
  params.validate();
  if (!(params.k0 * radius >= 1.0)) {
    throw InvalidArgument("large-sphere predictions require k0*R >= 1");
  }
}

}  // namespace

cdouble Spectrum::trace() const {
  return std::accumulate(eigenvalues.begin(), eigenvalues.end(), cdouble{});
}

double Spectrum::worst_residual() const {
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  return worst;
}

Spectrum eigendecompose(const Eigen::MatrixXcd& matrix, bool want_vectors) {
  const Eigen::Index n = matrix.rows();
  if (n == 0 || matrix.cols() != n) throw InvalidArgument("matrix must be square and nonempty");
  if (!matrix.allFinite()) throw InvalidArgument("matrix has non-finite entries");

  Eigen::MatrixXcd work = matrix;
  Eigen::VectorXcd w(n);
  Eigen::MatrixXcd vr;
  if (want_vectors) vr.resize(n, n);
  const auto ldv = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(work.data()), static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
      want_vectors ? reinterpret_cast<lapack_complex_double*>(vr.data()) : nullptr, ldv);
  if (info < 0) {
    throw InvalidArgument("zgeev rejected argument " + std::to_string(-info));
  }
  if (info > 0) {
    std::ostringstream msg;
    msg << "QR iteration failed to converge: " << info << " eigenvalues unresolved after the "
        << lapack_iteration_cap(n) << "-sweep cap";
    throw NumericalError(msg.str(), lapack_iteration_cap(n),
                         std::numeric_limits<double>::quiet_NaN());
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return descending(w(a), w(b)); });

  Spectrum s;
  s.eigenvalues.reserve(order.size());
  for (auto j : order) s.eigenvalues.push_back(w(j));
  if (!want_vectors) return s;

  Eigen::MatrixXcd v(n, n);
  for (Eigen::Index c = 0; c < n; ++c) v.col(c) = vr.col(order[static_cast<std::size_t>(c)]);

  // zgeev returns unit 2-norm columns. Switch to v^T v = 1 unless some column
  // is (numerically) self-orthogonal.
  Eigen::VectorXcd bilinear(n);
  bool ok = true;
  for (Eigen::Index c = 0; c < n; ++c) {
    bilinear(c) = v.col(c).transpose() * v.col(c);
    if (std::abs(bilinear(c)) < 1e-10) ok = false;
  }
  if (ok) {
    for (Eigen::Index c = 0; c < n; ++c) v.col(c) /= std::sqrt(bilinear(c));
  }
  s.bilinear_normalized = ok;

  const double norm = matrix.norm();
  const Eigen::MatrixXcd resid =
      matrix * v - v * Eigen::Map<const Eigen::VectorXcd>(s.eigenvalues.data(), n).asDiagonal();
  s.residuals.resize(static_cast<std::size_t>(n));
  for (Eigen::Index c = 0; c < n; ++c) {
    s.residuals[static_cast<std::size_t>(c)] = resid.col(c).norm() / (norm * v.col(c).norm());
  }
  s.eigenvectors = std::move(v);

  const double worst = s.worst_residual();
  if (!(worst <= kResidualTolerance)) {
    std::ostringstream msg;
    msg << "eigenpair residual " << worst << " exceeds tolerance " << kResidualTolerance;
    throw NumericalError(msg.str(), lapack_iteration_cap(n), worst);
  }
  return s;
}

Spectrum eigendecompose(const CouplingMatrix& matrix, bool want_vectors) {
  return eigendecompose(matrix.entries(), want_vectors);
}

SpectrumStats classify(const Spectrum& spectrum, double threshold) {
  SpectrumStats stats;
  stats.threshold = threshold;
  if (spectrum.eigenvalues.empty()) return stats;
  double sum = 0.0;
  stats.max_rate = -std::numeric_limits<double>::infinity();
  for (const auto& l : spectrum.eigenvalues) {
    stats.max_rate = std::max(stats.max_rate, l.real());
    if (l.real() > threshold) {
      ++stats.n_superradiant;
      sum += l.real();
    }
  }
  if (stats.n_superradiant > 0) {
    stats.mean_superradiant_rate = sum / static_cast<double>(stats.n_superradiant);
  }
  return stats;
}

double top_mode_mean_rate(const Spectrum& spectrum, std::size_t count) {
  std::vector<double> rates;
  rates.reserve(spectrum.size());
  for (const auto& l : spectrum.eigenvalues) rates.push_back(l.real());
  count = std::min(count, rates.size());
  if (count == 0) throw InvalidArgument("top-mode mean needs at least one mode");
  std::partial_sort(rates.begin(), rates.begin() + static_cast<std::ptrdiff_t>(count),
                    rates.end(), std::greater<>());
  return std::accumulate(rates.begin(), rates.begin() + static_cast<std::ptrdiff_t>(count), 0.0) /
         static_cast<double>(count);
}

double superradiant_count_prediction(const PhysicalParams& params,
                                     double radius) {
  check_for_k0_radius(params, radius);
  const double kr = params.k0 * radius;
  return kr * kr / std::numbers::pi;
}

double superradiant_rate_prediction(const PhysicalParams& params,
                                    double radius) {
  check_for_k0_radius(params, radius);
  return 4.0 * std::numbers::pi * std::numbers::pi * radius * params.rho /
         (3.0 * params.k0 * params.k0);
}

void write_spectrum_csv(const Spectrum& spectrum,
                        const std::filesystem::path& path) {
  auto out = io::open_output(path);
  out << "index,re_lambda,im_lambda,residual\n";
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    out << j << ',' << io::format_double(spectrum.eigenvalues[j].real()) << ','
        << io::format_double(spectrum.eigenvalues[j].imag()) << ','
        << (j < spectrum.residuals.size() ? io::format_double(spectrum.residuals[j]) : "nan")
        << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace radiant
