#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "radiant/errors.hpp"
#include "radiant/kernel.hpp"
#include "radiant/spectra.hpp"
#include "temp_dir.hpp"

using namespace radiant;
using std::numbers::pi;

namespace {

CouplingMatrix pair_matrix(double distance, double mu = 0.0) {
  return assemble_matrix(Sample::from_positions({Vec3(0, 0, 0), Vec3(distance, 0, 0)}),
                         PhysicalParams{1.0, mu, 1.0});
}

}  // namespace

TEST_CASE("eigendecompose: 1x1") {
  const auto s = eigendecompose(assemble_matrix(uniform_ball_sample(1, 1.0, 0), {}), true);
  REQUIRE(s.size() == 1);
  CHECK(s.eigenvalues[0] == cdouble(1.0, 0.0));
  CHECK(s.worst_residual() <= kResidualTolerance);
}

TEST_CASE("eigendecompose: two-atom closed form") {
  const auto s = eigendecompose(pair_matrix(pi / 2), true);
  REQUIRE(s.size() == 2);
  CHECK(s.eigenvalues[0].real() == doctest::Approx(1.0 + 2.0 / pi).epsilon(1e-12));
  CHECK(s.eigenvalues[1].real() == doctest::Approx(1.0 - 2.0 / pi).epsilon(1e-12));
  CHECK(std::abs(s.eigenvalues[0].imag()) < 1e-12);
  CHECK(std::abs(s.eigenvalues[1].imag()) < 1e-12);
}

TEST_CASE("eigendecompose: characteristic-polynomial oracle for n <= 5") {
  SUBCASE("four atoms, seed 11") {
    const auto m = assemble_matrix(uniform_ball_sample(4, 1.0, 11), PhysicalParams{1.0, 0.0, 1.0});
    const auto s = eigendecompose(m, false);
    CHECK(oracle::max_matched_distance(s.eigenvalues, oracle::char_poly_roots(m.entries())) <
          1e-8);
  }
  SUBCASE("sweep of sizes, seeds and regulators") {
    for (std::size_t n = 2; n <= 5; ++n) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        for (double mu : {0.0, 0.3}) {
          const auto m =
              assemble_matrix(uniform_ball_sample(n, 1.5, seed), PhysicalParams{1.0, mu, 1.0});
          const auto s = eigendecompose(m, true);
          REQUIRE(oracle::max_matched_distance(s.eigenvalues,
                                               oracle::char_poly_roots(m.entries())) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("eigendecompose: spectrum invariants on random samples") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::size_t> n_dist(2, 120);
  std::uniform_real_distribution<double> r_dist(0.5, 6.0);
  const double mus[] = {0.0, 0.3, 3.0};
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = n_dist(gen);
    const auto sample = uniform_ball_sample(n, r_dist(gen), gen());
    const auto m = assemble_matrix(sample, PhysicalParams{1.0, mus[trial % 3], 1.0});
    const auto s = eigendecompose(m, true);
    REQUIRE(s.size() == n);
    const cdouble tr = s.trace();
    CHECK(std::abs(tr.real() - static_cast<double>(n)) <= 1e-8 * n);
    CHECK(std::abs(tr.imag()) <= 1e-8 * n);
    CHECK(s.worst_residual() <= kResidualTolerance);
    CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end(),
                         [](const cdouble& a, const cdouble& b) {
                           return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
                         }));
    REQUIRE(s.bilinear_normalized);
    const Eigen::MatrixXcd& v = *s.eigenvectors;
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      const cdouble norm = v.col(c).transpose() * v.col(c);
      REQUIRE(std::abs(norm - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("eigenvectors are orthogonal under the bilinear form") {
  const auto m = assemble_matrix(uniform_ball_sample(30, 2.0, 13), PhysicalParams{1.0, 0.2, 1.0});
  const auto s = eigendecompose(m, true);
  const Eigen::MatrixXcd& v = *s.eigenvectors;
  const Eigen::MatrixXcd gram = v.transpose() * v;
  CHECK((gram - Eigen::MatrixXcd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("isolated-atom limit") {
  // mu * min separation > 30: every coupling is below e^-30.
  const auto sample = uniform_ball_sample(40, 5.0, 3, 0.5);
  const double mu = 31.0 / sample.min_separation();
  const auto s = eigendecompose(assemble_matrix(sample, PhysicalParams{1.0, mu, 1.0}), false);
  for (const auto& l : s.eigenvalues) CHECK(std::abs(l - 1.0) < 1e-8);
}

TEST_CASE("permutation invariance") {
  const auto sample = uniform_ball_sample(25, 2.0, 17);
  std::vector<Vec3> shuffled(sample.positions().begin(), sample.positions().end());
  std::mt19937_64 gen(5);
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  const PhysicalParams p{1.0, 0.3, 1.0};
  const auto a = eigendecompose(assemble_matrix(sample, p), false);
  const auto b = eigendecompose(assemble_matrix(Sample::from_positions(shuffled), p), false);
  CHECK(oracle::max_matched_distance(a.eigenvalues, b.eigenvalues) < 1e-10);
}

TEST_CASE("eigendecompose rejects bad input") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(3, 3);
  bad(1, 2) = cdouble(NAN, 0.0);
  CHECK_THROWS_AS(eigendecompose(bad, false), InvalidArgument);
  CHECK_THROWS_AS(eigendecompose(Eigen::MatrixXcd(0, 0), false), InvalidArgument);
  CHECK_THROWS_AS(eigendecompose(Eigen::MatrixXcd(2, 3), false), InvalidArgument);
}

TEST_CASE("classify") {
  SUBCASE("Dicke cluster: one mode carries the rate N") {
    const auto s =
        eigendecompose(assemble_matrix(dicke_cluster(50, 0.01, 1.0, 9), PhysicalParams{}), false);
    const auto stats = classify(s);
    CHECK(stats.n_superradiant == 1);
    CHECK(stats.max_rate == doctest::Approx(50.0).epsilon(0.05));
    REQUIRE(stats.mean_superradiant_rate);
    CHECK(*stats.mean_superradiant_rate == stats.max_rate);
  }
  SUBCASE("two-atom pair") {
    const auto stats = classify(eigendecompose(pair_matrix(pi / 2), false));
    CHECK(stats.n_superradiant == 1);
    CHECK(stats.max_rate == doctest::Approx(1.0 + 2.0 / pi));
  }
  SUBCASE("isolated atom sits on the threshold, which is strict") {
    const auto stats = classify(eigendecompose(Eigen::MatrixXcd::Ones(1, 1), false));
    CHECK(stats.n_superradiant == 0);
    CHECK_FALSE(stats.mean_superradiant_rate.has_value());
    CHECK(stats.max_rate == 1.0);
  }
  SUBCASE("custom threshold") {
    const auto s = eigendecompose(pair_matrix(pi / 2), false);
    CHECK(classify(s, 0.0).n_superradiant == 2);
    CHECK(classify(s, 2.0).n_superradiant == 0);
  }
}

TEST_CASE("top_mode_mean_rate") {
  Spectrum s;
  s.eigenvalues = {{5.0, 0.0}, {3.0, 1.0}, {1.0, 0.0}, {0.5, 0.0}};
  CHECK(top_mode_mean_rate(s, 2) == doctest::Approx(4.0));
  CHECK(top_mode_mean_rate(s, 10) == doctest::Approx(2.375));
  CHECK_THROWS_AS(top_mode_mean_rate(Spectrum{}, 1), InvalidArgument);
}

TEST_CASE("large-sphere predictions") {
  const PhysicalParams unit{1.0, 0.0, 1.0};
  CHECK(superradiant_count_prediction(unit, 8.0) == doctest::Approx(64.0 / pi));
  CHECK(superradiant_count_prediction(unit, 8.0) == doctest::Approx(20.37).epsilon(1e-3));
  CHECK(superradiant_count_prediction(unit, 10.0) == doctest::Approx(31.83).epsilon(1e-3));
  CHECK_THROWS_AS(superradiant_count_prediction(unit, 0.5), InvalidArgument);

  // N / (k0^2 R^2 / pi) and 4 pi^2 R rho / (3 k0^2) are the same number.
  const double rho = 2000.0 / ball_volume(8.0);
  const PhysicalParams dense{1.0, 0.0, rho};
  const double rate = superradiant_rate_prediction(dense, 8.0);
  CHECK(rate == doctest::Approx(2000.0 / (64.0 / pi)).epsilon(1e-12));
  CHECK(rate == doctest::Approx(98.2).epsilon(1e-3));
  CHECK(superradiant_rate_prediction({1.0, 0.0, 3.0 / (4.0 * pi * pi)}, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(superradiant_rate_prediction(unit, 0.9), InvalidArgument);
}

TEST_CASE("spectrum.csv") {
  testing::TempDir dir;
  const auto s = eigendecompose(Eigen::MatrixXcd::Ones(1, 1), true);
  write_spectrum_csv(s, dir.path() / "spectrum.csv");
  std::ifstream in(dir.path() / "spectrum.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "index,re_lambda,im_lambda,residual");
  CHECK(row.rfind("0,1,0,", 0) == 0);

  const auto no_vectors = eigendecompose(Eigen::MatrixXcd::Ones(1, 1), false);
  write_spectrum_csv(no_vectors, dir.path() / "values.csv");
  std::ifstream in2(dir.path() / "values.csv");
  std::getline(in2, header);
  std::getline(in2, row);
  CHECK(row == "0,1,0,nan");
}
