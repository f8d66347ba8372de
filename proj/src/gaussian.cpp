#include "decorr/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace decorr {

namespace {

void check_symmetric(const RMat& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw std::invalid_argument("correlation matrix must be 4x4");
  if ((m - m.transpose()).max_abs() > 1e-12)
    throw std::invalid_argument("correlation matrix must be symmetric");
}

void check_noise(const NoiseSpec& noise) {
  check_symmetric(noise.sigma);
  std::vector<double> eig = symmetric_eigs(noise.sigma);
  if (eig.front() < -1e-9)
    throw std::invalid_argument("noise covariance must be positive semidefinite");
  // an honest inverse of an ill-conditioned sigma can only reach eps * cond,
  // so scale the consistency tolerance with the conditioning
  double scale = std::max(1.0, noise.sigma.max_abs() * noise.g.max_abs());
  if ((noise.g * noise.sigma - RMat::identity(4)).max_abs() > 1e-9 * scale)
    throw std::invalid_argument("weight matrix must invert the covariance");
}

}  // namespace

const RMat& symplectic_form() {
  static const RMat omega = [] {
    RMat w(4, 4);
    w(0, 1) = 1.0;
    w(1, 0) = -1.0;
    w(2, 3) = 1.0;
    w(3, 2) = -1.0;
    return w;
  }();
  return omega;
}

GaussianState twin_beam(double lam) {
  if (lam < 0.0 || lam >= 1.0)
    throw std::invalid_argument("squeeze parameter must lie in [0, 1)");
  double denom = 1.0 - lam * lam;
  double s = (1.0 + lam * lam) / denom;
  double c = 2.0 * lam / denom;
  GaussianState state;
  state.M = RMat::identity(4) * s;
  state.M(0, 2) = -c;
  state.M(2, 0) = -c;
  state.M(1, 3) = c;
  state.M(3, 1) = c;
  return state;
}

bool heisenberg_valid(const RMat& m) {
  check_symmetric(m);
  CMat h = m.to_cmat() + symplectic_form().to_cmat() * cplx(0.0, 0.25);
  EigResult eig = hermitian_eigs(h);
  return eig.values.front() >= -1e-10;
}

RMat injected_noise(const RMat& sigma) {
  const RMat& omega = symplectic_form();
  return omega * sigma * omega.transpose() * 4.0;
}

GaussianState apply_displacement_noise(const GaussianState& state,
                                       const NoiseSpec& noise) {
  check_symmetric(state.M);
  check_noise(noise);
  GaussianState out = state;
  out.M = state.M + injected_noise(noise.sigma);
  return out;
}

NoiseSpec solve_noise(const GaussianState& state, double slack) {
  check_symmetric(state.M);
  if (!heisenberg_valid(state.M))
    throw std::invalid_argument("input violates the uncertainty relation");
  if (slack <= 0.0) throw std::invalid_argument("slack must be positive");

  CMat c(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = state.M(i, 2 + j);
  double t = singular_values(c).front() + slack;

  // The injected matrix must kill the cross block exactly; t 1 is the
  // cheapest diagonal completion keeping it positive semidefinite.
  RMat n(4, 4);
  for (int i = 0; i < 2; ++i) {
    n(i, i) = t;
    n(2 + i, 2 + i) = t;
    for (int j = 0; j < 2; ++j) {
      n(i, 2 + j) = -state.M(i, 2 + j);
      n(2 + j, i) = -state.M(i, 2 + j);
    }
  }

  const RMat& omega = symplectic_form();
  NoiseSpec noise;
  noise.sigma = omega.transpose() * n * omega * 0.25;
  noise.g = inverse(noise.sigma);
  return noise;
}

GaussianState encode_displacement(const GaussianState& state, cplx alpha,
                                  cplx beta) {
  GaussianState out = state;
  out.mean[0] += alpha.real();
  out.mean[1] += alpha.imag();
  out.mean[2] += beta.real();
  out.mean[3] += beta.imag();
  return out;
}

double marginal_occupation(const GaussianState& state, int party) {
  if (party != 0 && party != 1)
    throw std::invalid_argument("party must be 0 or 1");
  int o = 2 * party;
  double d00 = state.M(o, o);
  double d11 = state.M(o + 1, o + 1);
  double off = std::max(std::abs(state.M(o, o + 1)), std::abs(state.M(o + 1, o)));
  if (std::abs(d00 - d11) > 1e-9 || off > 1e-9)
    throw std::invalid_argument("marginal block is not thermal");
  return (0.5 * (d00 + d11) - 1.0) / 2.0;
}

double displacement_covariance_check(const GaussianState& state, cplx alpha,
                                     cplx beta, const NoiseSpec& noise) {
  GaussianState first = apply_displacement_noise(
      encode_displacement(state, alpha, beta), noise);
  GaussianState second = encode_displacement(
      apply_displacement_noise(state, noise), alpha, beta);
  double res = (first.M - second.M).max_abs();
  for (int i = 0; i < 4; ++i)
    res = std::max(res, std::abs(first.mean[i] - second.mean[i]));
  return res;
}

std::vector<double> symplectic_eigenvalues(const RMat& m) {
  check_symmetric(m);
  EigResult eig = hermitian_eigs(m.to_cmat());
  CMat root(4, 4);
  for (int k = 0; k < 4; ++k) {
    double v = std::sqrt(std::max(eig.values[k], 0.0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        root(i, j) += eig.vectors(i, k) * std::conj(eig.vectors(j, k)) * v;
  }
  CMat h = root * symplectic_form().to_cmat() * root * cplx(0.0, 1.0);
  EigResult spec = hermitian_eigs(h);
  std::vector<double> nu(4);
  for (int k = 0; k < 4; ++k) nu[k] = std::abs(spec.values[k]);
  std::sort(nu.begin(), nu.end(), std::greater<double>());
  return {nu[0], nu[2]};
}

}  // namespace decorr
