#include <cmath>
#include <random>
#include <stdexcept>

#include "decorr/gaussian.hpp"
#include "doctest.h"

using namespace decorr;

namespace {

NoiseSpec isotropic_noise(double s2) {
  NoiseSpec n;
  n.sigma = RMat::identity(4) * s2;
  n.g = RMat::identity(4) * (1.0 / s2);
  return n;
}

RMat cross_block(const RMat& m) {
  RMat c(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = m(i, 2 + j);
  return c;
}

}  // namespace

TEST_CASE("twin beam correlation matrix") {
  CHECK((twin_beam(0.0).M - RMat::identity(4)).max_abs() < 1e-15);

  GaussianState tb = twin_beam(0.5);
  double s = (1.0 + 0.25) / (1.0 - 0.25);
  double c = 1.0 / (1.0 - 0.25);
  CHECK(tb.M(0, 0) == doctest::Approx(s).epsilon(1e-14));
  CHECK(tb.M(3, 3) == doctest::Approx(s).epsilon(1e-14));
  CHECK(tb.M(0, 2) == doctest::Approx(-c).epsilon(1e-14));
  CHECK(tb.M(1, 3) == doctest::Approx(c).epsilon(1e-14));
  CHECK(tb.M(0, 3) == 0.0);
  CHECK(tb.M(1, 2) == 0.0);
  for (double x : tb.mean) CHECK(x == 0.0);

  // squeezing splits the spectrum into (1-lam)/(1+lam) and its reciprocal
  std::vector<double> eig = symmetric_eigs(twin_beam(0.9).M);
  CHECK(eig[0] == doctest::Approx(1.0 / 19.0).epsilon(1e-12));
  CHECK(eig[1] == doctest::Approx(1.0 / 19.0).epsilon(1e-12));
  CHECK(eig[2] == doctest::Approx(19.0).epsilon(1e-12));
  CHECK(eig[3] == doctest::Approx(19.0).epsilon(1e-12));

  CHECK_THROWS_AS(twin_beam(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(twin_beam(1.0), std::invalid_argument);
}

TEST_CASE("uncertainty relation check") {
  CHECK(heisenberg_valid(RMat::identity(4)));
  CHECK(heisenberg_valid(twin_beam(0.8).M));
  CHECK(heisenberg_valid(RMat::identity(4) * 7.0));
  CHECK(!heisenberg_valid(RMat(4, 4)));
  CHECK(!heisenberg_valid(RMat::identity(4) * 0.1));
  CHECK_THROWS_AS(heisenberg_valid(RMat(3, 3)), std::invalid_argument);
}

TEST_CASE("injected noise map") {
  CHECK(injected_noise(RMat(4, 4)).max_abs() == 0.0);
  CHECK((injected_noise(RMat::identity(4) * 0.3) -
         RMat::identity(4) * 1.2)
            .max_abs() < 1e-14);

  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RMat a(4, 4), b(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      a(i, j) = a(j, i) = u(rng);
      b(i, j) = b(j, i) = u(rng);
    }
  RMat lhs = injected_noise(a + b * 0.7);
  RMat rhs = injected_noise(a) + injected_noise(b) * 0.7;
  CHECK((lhs - rhs).max_abs() < 1e-13);
}

TEST_CASE("random displacements heat the state without moving it") {
  GaussianState vac;
  vac.M = RMat::identity(4);
  vac.mean = {0.4, -0.2, 1.0, 0.3};

  GaussianState out = apply_displacement_noise(vac, isotropic_noise(0.05));
  for (int i = 0; i < 4; ++i) CHECK(out.mean[i] == vac.mean[i]);
  // isotropic sigma^2 adds 2 sigma^2 of occupation per mode
  CHECK(marginal_occupation(out, 0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(marginal_occupation(out, 1) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(heisenberg_valid(out.M));

  // eigenvalues can only grow when PSD noise is added
  GaussianState tb = twin_beam(0.6);
  GaussianState heated = apply_displacement_noise(tb, isotropic_noise(0.2));
  std::vector<double> before = symmetric_eigs(tb.M);
  std::vector<double> after = symmetric_eigs(heated.M);
  for (int k = 0; k < 4; ++k) CHECK(after[k] >= before[k]);

  NoiseSpec bad = isotropic_noise(0.05);
  bad.g = RMat::identity(4);
  CHECK_THROWS_AS(apply_displacement_noise(vac, bad), std::invalid_argument);
}

TEST_CASE("noise solver removes the cross block at minimal heating") {
  const double slack = 1e-3;

  // no correlations to start with: only the slack floor remains
  GaussianState vac;
  vac.M = RMat::identity(4);
  NoiseSpec n = solve_noise(vac, slack);
  CHECK((n.sigma - RMat::identity(4) * (slack / 4.0)).max_abs() < 1e-15);

  GaussianState tb = twin_beam(0.5);
  n = solve_noise(tb, slack);
  CHECK((n.g * n.sigma - RMat::identity(4)).max_abs() < 1e-9);

  GaussianState out = apply_displacement_noise(tb, n);
  CHECK(cross_block(out.M).max_abs() < 1e-12);
  CHECK(heisenberg_valid(out.M));

  // occupation lands exactly at lam/(1-lam) plus half the slack
  double nbar = marginal_occupation(out, 0);
  CHECK(std::abs(nbar - 1.0 - slack / 2.0) < 1e-12);
  CHECK(marginal_occupation(out, 1) == doctest::Approx(nbar).epsilon(1e-12));

  // the slack is the entire margin: removing it hits the PSD boundary,
  // removing twice as much goes negative
  std::vector<double> eig =
      symmetric_eigs(n.sigma - RMat::identity(4) * (slack / 4.0));
  CHECK(std::abs(eig.front()) < 1e-12);
  eig = symmetric_eigs(n.sigma - RMat::identity(4) * (slack / 2.0));
  CHECK(eig.front() < -slack / 8.0);

  CHECK_THROWS_AS(solve_noise(tb, 0.0), std::invalid_argument);
  GaussianState squeezed;
  squeezed.M = RMat::identity(4) * 0.1;
  CHECK_THROWS_AS(solve_noise(squeezed, slack), std::invalid_argument);
}

TEST_CASE("noise solver on generic correlated inputs") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    RMat a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = u(rng);
    GaussianState st;
    st.M = a.transpose() * a + RMat::identity(4) * 1.2;

    NoiseSpec n = solve_noise(st, 1e-4);
    GaussianState out = apply_displacement_noise(st, n);
    CHECK(cross_block(out.M).max_abs() < 1e-12);
    CHECK(heisenberg_valid(out.M));
    CHECK((n.g * n.sigma - RMat::identity(4)).max_abs() < 1e-8);
    std::vector<double> eig = symmetric_eigs(n.sigma);
    CHECK(eig.front() > 0.0);
  }
}

TEST_CASE("heating grows linearly with the slack") {
  GaussianState tb = twin_beam(0.3);
  auto occ = [&](double slack) {
    GaussianState out =
        apply_displacement_noise(tb, solve_noise(tb, slack));
    return marginal_occupation(out, 0);
  };
  CHECK(std::abs(occ(2e-3) - occ(1e-3) - 5e-4) < 1e-12);
}

TEST_CASE("marginal occupation readout") {
  GaussianState vac;
  vac.M = RMat::identity(4);
  CHECK(marginal_occupation(vac, 0) == 0.0);
  CHECK(marginal_occupation(vac, 1) == 0.0);

  GaussianState hot;
  hot.M = RMat::identity(4) * 3.0;
  CHECK(marginal_occupation(hot, 0) == doctest::Approx(1.0).epsilon(1e-14));

  GaussianState skew;
  skew.M = RMat::identity(4);
  skew.M(1, 1) = 2.0;
  CHECK_THROWS_AS(marginal_occupation(skew, 0), std::invalid_argument);
  CHECK_THROWS_AS(marginal_occupation(vac, 2), std::invalid_argument);
}

TEST_CASE("signal encoding commutes with the noise channel") {
  GaussianState tb = twin_beam(0.4);
  GaussianState shifted = encode_displacement(tb, cplx(0.5, -0.2), cplx(0.1, 0.9));
  CHECK(shifted.mean[0] == doctest::Approx(0.5));
  CHECK(shifted.mean[1] == doctest::Approx(-0.2));
  CHECK(shifted.mean[2] == doctest::Approx(0.1));
  CHECK(shifted.mean[3] == doctest::Approx(0.9));
  CHECK((shifted.M - tb.M).max_abs() == 0.0);

  NoiseSpec n = solve_noise(tb, 1e-4);
  CHECK(displacement_covariance_check(tb, cplx(0.0, 0.0), cplx(0.0, 0.0), n) ==
        0.0);
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    cplx alpha(u(rng), u(rng));
    cplx beta(u(rng), u(rng));
    CHECK(displacement_covariance_check(tb, alpha, beta, n) <= 1e-12);
    CHECK(displacement_covariance_check(tb, alpha, alpha, n) <= 1e-12);
  }
}

TEST_CASE("symplectic spectrum") {
  std::vector<double> nu = symplectic_eigenvalues(RMat::identity(4));
  CHECK(nu.size() == 2);
  CHECK(nu[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nu[1] == doctest::Approx(1.0).epsilon(1e-12));

  // two-mode squeezed vacuum is pure for every squeeze parameter
  for (double lam : {0.2, 0.5, 0.9}) {
    nu = symplectic_eigenvalues(twin_beam(lam).M);
    CHECK(nu[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(nu[1] == doctest::Approx(1.0).epsilon(1e-10));
  }

  nu = symplectic_eigenvalues(RMat::identity(4) * 5.0);
  CHECK(nu[0] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(nu[1] == doctest::Approx(5.0).epsilon(1e-12));

  // decorrelated twin beam: thermal at nbar, symplectic level 2 nbar + 1
  GaussianState tb = twin_beam(0.5);
  GaussianState out = apply_displacement_noise(tb, solve_noise(tb, 1e-6));
  double nbar = marginal_occupation(out, 0);
  nu = symplectic_eigenvalues(out.M);
  CHECK(nu[0] == doctest::Approx(2.0 * nbar + 1.0).epsilon(1e-9));
  CHECK(nu[1] == doctest::Approx(2.0 * nbar + 1.0).epsilon(1e-9));
}
