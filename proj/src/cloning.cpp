#include "decorr/cloning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "decorr/states.hpp"

namespace decorr {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegreeThreshold = 1e-8;

CMat kron_power(const CMat& m, int n) {
  CMat out = CMat::identity(1);
  for (int k = 0; k < n; ++k) out = kron(out, m);
  return out;
}

// Equatorial phase state |phi><phi|.
CMat phase_state(double phi) {
  CMat rho(2, 2);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  rho(0, 1) = 0.5 * std::exp(cplx(0.0, -phi));
  rho(1, 0) = 0.5 * std::exp(cplx(0.0, phi));
  return rho;
}

// Highest |frequency| with an entrywise Fourier coefficient above the
// threshold, for a matrix-valued function of the phase sampled at K points.
// K odd and larger than twice the true degree, so there is no aliasing.
int sampled_degree(const std::vector<CMat>& samples) {
  const int k = static_cast<int>(samples.size());
  const int half = (k - 1) / 2;
  const int dim = samples[0].rows();
  int degree = 0;
  for (int m = -half; m <= half; ++m) {
    CMat coeff(dim, dim);
    for (int s = 0; s < k; ++s) {
      double phase = -2.0 * kPi * m * s / k;
      coeff += samples[s] * (std::exp(cplx(0.0, phase)) / static_cast<double>(k));
    }
    if (coeff.max_abs() > kDegreeThreshold) degree = std::max(degree, std::abs(m));
  }
  return degree;
}

}  // namespace

CMat pure_ket(const PureQubit& q) {
  CMat ket(2, 1);
  ket(0, 0) = std::cos(q.theta / 2.0);
  ket(1, 0) = std::exp(cplx(0.0, q.phi)) * std::sin(q.theta / 2.0);
  return ket;
}

CMat uqcm(const CMat& ket) {
  if (ket.rows() != 2 || ket.cols() != 1)
    throw std::invalid_argument("uqcm expects a single-qubit column vector");
  double norm2 = std::norm(ket(0, 0)) + std::norm(ket(1, 0));
  if (std::abs(norm2 - 1.0) > 1e-12)
    throw std::invalid_argument("uqcm input is not normalized");
  CMat rho = ket * ket.dagger();
  CMat sym = triplet_projector();
  return sym * kron(rho, CMat::identity(2)) * sym * (2.0 / 3.0);
}

CMat uqcm(const PureQubit& psi) { return uqcm(pure_ket(psi)); }

DegreeReport fourier_degree_report(int n, double eta) {
  if (n < 1) throw std::invalid_argument("need at least one input copy");
  if (eta < 0.0 || eta > 1.0)
    throw std::invalid_argument("shrink factor must lie in [0, 1]");

  const int k = 2 * n + 5;
  std::vector<CMat> input(k), target(k);
  for (int s = 0; s < k; ++s) {
    double phi = 2.0 * kPi * s / k;
    CMat rho = phase_state(phi);
    CMat shrunk = rho * eta + CMat::identity(2) * ((1.0 - eta) / 2.0);
    input[s] = kron_power(rho, n);
    target[s] = kron_power(shrunk, n + 1);
  }

  DegreeReport rep;
  rep.n_inputs = n;
  rep.eta = eta;
  rep.input_degree = sampled_degree(input);
  rep.target_degree = sampled_degree(target);
  rep.obstruction = rep.target_degree > rep.input_degree;
  return rep;
}

DegreeReport asymmetric_degree_report(const std::vector<double>& etas, int n) {
  if (n < 1) throw std::invalid_argument("need at least one input copy");
  if (etas.size() != static_cast<size_t>(n) + 1)
    throw std::invalid_argument("need one shrink factor per output clone");

  DegreeReport rep;
  rep.n_inputs = n;
  rep.input_degree = n;
  for (double e : etas) {
    if (std::abs(e) > 1e-12) ++rep.target_degree;
    rep.eta = std::max(rep.eta, std::abs(e));
  }
  rep.obstruction = rep.target_degree > rep.input_degree;
  return rep;
}

}  // namespace decorr
