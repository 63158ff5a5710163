#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "radiant/continuum.hpp"
#include "radiant/errors.hpp"

using namespace radiant;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double rel(cdouble a, cdouble b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("dispersion: values from the closed form") {
  const cdouble bare = dispersion(0.0, PhysicalParams{1.0, 0.0, 1.0});
  CHECK(bare.real() == 0.0);
  CHECK(bare.imag() == doctest::Approx(4.0 * pi).epsilon(1e-14));

  const cdouble peak = dispersion(std::sqrt(0.99), PhysicalParams{1.0, 0.1, 1.0});
  CHECK(peak.real() == doctest::Approx(20.0 * pi).epsilon(1e-12));
  CHECK(std::abs(peak.imag()) < 1e-10 * peak.real());

  const cdouble dicke = dispersion(0.0, PhysicalParams{1.0, 10.0, 1.0});
  CHECK(dicke.real() == doctest::Approx(80.0 * pi / 10201.0).epsilon(1e-13));
  CHECK(dicke.real() == doctest::Approx(0.024630).epsilon(1e-5));
}

TEST_CASE("dispersion: domain errors") {
  CHECK_THROWS_AS(dispersion(1.0, PhysicalParams{1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(dispersion(-0.5, PhysicalParams{1.0, 0.1, 1.0}), DomainError);
  CHECK_NOTHROW(dispersion(1.0, PhysicalParams{1.0, 1e-9, 1.0}));
}

TEST_CASE("dispersion: positive real part for any mu > 0") {
  for (double mu : {1e-3, 0.05, 0.5, 1.0, 2.0, 30.0}) {
    const auto curve = dispersion_curve(PhysicalParams{1.0, mu, 0.7}, 0.0, 10.0, 5001);
    for (const auto& l : curve.lambdas) REQUIRE(l.real() > 0.0);
  }
}

TEST_CASE("dispersion: mu -> 0 recovers the bare pole form") {
  for (double k : {0.0, 0.5, 0.9, 1.1, 2.0, 4.0}) {
    const PhysicalParams p{1.0, 1e-6, 1.0};
    const cdouble bare = (4.0 * pi / cdouble(0.0, 1.0)) / (k * k - 1.0);
    CHECK(rel(dispersion(k, p), bare) < 1e-4);
  }
}

TEST_CASE("dispersion: scale invariance") {
  const cdouble a = dispersion(0.7, PhysicalParams{1.0, 0.3, 2.0});
  const cdouble b = dispersion(0.35, PhysicalParams{0.5, 0.15, 0.25});
  CHECK(a == b);
}

TEST_CASE("dispersion_curve grid") {
  const auto curve = dispersion_curve(PhysicalParams{1.0, 0.2, 1.0});
  CHECK(curve.k_values.size() == 400);
  CHECK(curve.k_values.front() == 0.0);
  CHECK(curve.k_values.back() == 3.0);
  const auto bare = dispersion_curve(PhysicalParams{1.0, 0.0, 1.0});
  CHECK(bare.k_values.size() == 399);
  for (double k : bare.k_values) CHECK(k != 1.0);
  CHECK_THROWS_AS(dispersion_curve(PhysicalParams{}, 1.0, 0.5, 10), InvalidArgument);
  CHECK_THROWS_AS(dispersion_curve(PhysicalParams{}, 0.0, 1.0, 1), InvalidArgument);
}

TEST_CASE("peak_summary: shell regime") {
  const auto p = peak_summary(PhysicalParams{1.0, 0.1, 1.0});
  CHECK(p.regime == Regime::SubcriticalMu);
  CHECK(p.k_peak == doctest::Approx(0.99499).epsilon(1e-5));
  CHECK(p.lambda_peak == doctest::Approx(20.0 * pi).epsilon(1e-14));
  CHECK(p.width == doctest::Approx(0.2));
}

TEST_CASE("peak_summary: Dicke regime") {
  const PhysicalParams params{1.0, 10.0, 1.0};
  const auto p = peak_summary(params);
  CHECK(p.regime == Regime::Dicke);
  CHECK(p.k_peak == 0.0);
  CHECK(p.lambda_peak == doctest::Approx(0.024630).epsilon(1e-5));
  CHECK(p.width == doctest::Approx(10.0));
  const double approx = dicke_peak_approximation(params);
  CHECK(approx == doctest::Approx(8.0 * pi / 1000.0));
  CHECK(rel(approx, p.lambda_peak) < 0.021);
}

TEST_CASE("peak_summary: boundary and errors") {
  const auto at = peak_summary(PhysicalParams{1.0, 1.0, 1.0});
  CHECK(at.regime == Regime::Dicke);
  CHECK(at.k_peak == 0.0);
  // Both branch formulas agree at mu = k0.
  CHECK(at.lambda_peak == doctest::Approx(2.0 * pi).epsilon(1e-14));
  const auto below = peak_summary(PhysicalParams{1.0, 1.0 - 1e-9, 1.0});
  CHECK(rel(below.lambda_peak, at.lambda_peak) < 1e-8);
  CHECK_THROWS_AS(peak_summary(PhysicalParams{1.0, 0.0, 1.0}), DomainError);
}

TEST_CASE("peak_summary agrees with a grid search over Re lambda(k)") {
  for (double mu : {0.02, 0.1, 0.5, 0.9, 1.5, 10.0}) {
    const PhysicalParams p{1.0, mu, 1.3};
    const auto found = oracle::zoom_grid_max(
        [&](double k) { return dispersion(k, p).real(); }, 0.0, 3.0);
    const auto summary = peak_summary(p);
    CHECK(rel(found.value, summary.lambda_peak) < 1e-6);
    CHECK(std::abs(found.k - summary.k_peak) < 1e-6 * std::max(1.0, summary.k_peak));
  }
}

TEST_CASE("half-maximum width") {
  const PhysicalParams shell{1.0, 0.05, 1.0};
  CHECK(rel(half_max_width(shell), 2.0 * 0.05) < 0.25);
  // Dicke regime: half maximum at k = mu sqrt(sqrt(2) - 1) for mu >> k0.
  const PhysicalParams dicke{1.0, 50.0, 1.0};
  CHECK(half_max_width(dicke) == doctest::Approx(50.0 * std::sqrt(std::sqrt(2.0) - 1.0)).epsilon(1e-3));
}

TEST_CASE("kernel_transform_quadrature matches the closed form") {
  SUBCASE("shell-regime point") {
    const PhysicalParams p{1.0, 0.3, 1.0};
    const auto q = kernel_transform_quadrature(1.2, p, 1e-9);
    CHECK(rel(q.value, dispersion(1.2, p)) < 1e-8);
    CHECK(q.error_estimate < 1e-9 * std::abs(q.value));
  }
  SUBCASE("on the superradiant shell") {
    const PhysicalParams p{1.0, 0.1, 1.0};
    const auto q = kernel_transform_quadrature(std::sqrt(0.99), p, 1e-9);
    CHECK(rel(q.value.real(), 20.0 * pi) < 1e-6);
  }
  SUBCASE("Dicke-regime point") {
    const PhysicalParams p{1.0, 2.0, 1.0};
    CHECK(rel(kernel_transform_quadrature(5.0, p, 1e-9).value, dispersion(5.0, p)) < 1e-8);
  }
  SUBCASE("random parameters") {
    std::mt19937_64 gen(123);
    std::uniform_real_distribution<double> k(0.05, 4.0), mu(0.05, 3.0), k0(0.5, 2.0), rho(0.1, 10.0);
    for (int i = 0; i < 25; ++i) {
      const PhysicalParams p{k0(gen), mu(gen), rho(gen)};
      const double kk = k(gen);
      REQUIRE(rel(kernel_transform_quadrature(kk, p, 1e-9).value, dispersion(kk, p)) < 1e-8);
    }
  }
}

TEST_CASE("kernel_transform_quadrature errors") {
  CHECK_THROWS_AS(kernel_transform_quadrature(1.0, PhysicalParams{1.0, 0.0, 1.0}, 1e-9), DomainError);
  CHECK_THROWS_AS(kernel_transform_quadrature(0.0, PhysicalParams{1.0, 0.5, 1.0}, 1e-9), DomainError);
  CHECK_THROWS_AS(kernel_transform_quadrature(1.0, PhysicalParams{1.0, 0.5, 1.0}, 0.0), InvalidArgument);
  // Beyond double precision: the error budget cannot be met.
  CHECK_THROWS_AS(kernel_transform_quadrature(1.0, PhysicalParams{1.0, 0.5, 1.0}, 1e-20),
                  NumericalError);
}

TEST_CASE("mode_count_shell") {
  const PhysicalParams p{1.0, 0.1, 1.0};
  CHECK(mode_count_shell(p, 10.0) == doctest::Approx(0.1 * 1000.0 / (pi * pi)).epsilon(1e-14));
  CHECK(mode_count_shell(p, 10.0) == doctest::Approx(10.132).epsilon(1e-4));
  CHECK(mode_count_shell(p, 20.0) == doctest::Approx(8.0 * mode_count_shell(p, 10.0)).epsilon(1e-14));
  CHECK(modes_per_correlation_volume(p) == doctest::Approx(1.0 / (pi * pi * 0.01)).epsilon(1e-14));
  CHECK_THROWS_AS(mode_count_shell(PhysicalParams{1.0, 1.0, 1.0}, 10.0), RegimeError);
  CHECK_THROWS_AS(mode_count_shell(PhysicalParams{1.0, 2.0, 1.0}, 10.0), RegimeError);
  CHECK_THROWS_AS(mode_count_shell(p, 0.0), InvalidArgument);
}

TEST_CASE("modes per correlation volume in the Dicke regime is mu independent") {
  for (double mu : {1.5, 4.0, 100.0}) {
    CHECK(modes_per_correlation_volume(PhysicalParams{1.0, mu, 1.0}) ==
          doctest::Approx(1.0 / (6.0 * pi * pi)).epsilon(1e-14));
  }
}

TEST_CASE("mode-count identities") {
  SUBCASE("shell instance") {
    const auto id = mode_count_identity_check(PhysicalParams{1.0, 0.1, 1.0});
    CHECK(id.regime == Regime::SubcriticalMu);
    CHECK(rel(id.lhs, 10.0 * pi * pi) < 1e-12);
    CHECK(rel(id.rhs, 10.0 * pi * pi) < 1e-12);
  }
  SUBCASE("Dicke instance") {
    const auto id = mode_count_identity_check(PhysicalParams{1.0, 10.0, 1.0});
    CHECK(id.regime == Regime::Dicke);
    CHECK(rel(id.lhs, 6.0 * pi * pi / 1000.0) < 1e-12);
    CHECK(rel(id.rhs, 6.0 * pi * pi / 1000.0) < 1e-12);
  }
  SUBCASE("random triples") {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> rho(1e-3, 1e3), k0(0.1, 10.0), frac(0.01, 0.99),
        mult(1.01, 100.0);
    for (int i = 0; i < 100; ++i) {
      const double kk = k0(gen);
      const auto a = mode_count_identity_check(PhysicalParams{kk, kk * frac(gen), rho(gen)});
      REQUIRE(rel(a.lhs, a.rhs) < 1e-12);
      const auto b = mode_count_identity_check(PhysicalParams{kk, kk * mult(gen), rho(gen)});
      REQUIRE(rel(b.lhs, b.rhs) < 1e-12);
    }
  }
  SUBCASE("undefined on the boundary") {
    CHECK_THROWS_AS(mode_count_identity_check(PhysicalParams{1.0, 1.0, 1.0}), RegimeError);
    CHECK_THROWS_AS(mode_count_identity_check(PhysicalParams{1.0, 0.0, 1.0}), DomainError);
  }
}
