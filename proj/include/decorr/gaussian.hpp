#pragma once

#include <array>
#include <vector>

#include "decorr/linalg.hpp"

namespace decorr {

// Two-mode Gaussian state: displacement means (q1, p1, q2, p2) and the real
// symmetric 4x4 correlation matrix M, normalized so the vacuum has M = 1
// and a thermal state of occupation nbar has M = (2 nbar + 1) 1.
struct GaussianState {
  std::array<double, 4> mean{};
  RMat M;
};

// Block-diagonal symplectic form: omega = [[0, 1], [-1, 0]] per mode.
const RMat& symplectic_form();

// Classical displacement noise: Sigma is the covariance of the random mean
// shifts, G = Sigma^{-1} the weight matrix of the channel's Gaussian kernel.
struct NoiseSpec {
  RMat sigma;
  RMat g;
};

// Two-mode squeezed vacuum with squeeze parameter 0 <= lam < 1: diagonal
// blocks ((1+lam^2)/(1-lam^2)) 1, off-diagonal blocks -(2 lam/(1-lam^2)) sz.
GaussianState twin_beam(double lam);

// Uncertainty relation in this normalization: the Hermitian matrix
// M + (i/4) Omega has min eigenvalue >= -1e-10.
bool heisenberg_valid(const RMat& m);

// Correlation-matrix noise added by averaging over displacements with
// covariance sigma: 4 Omega sigma Omega^T. Linear in sigma.
RMat injected_noise(const RMat& sigma);

// Random-displacement channel: means unchanged, M -> M + injected_noise.
GaussianState apply_displacement_noise(const GaussianState& state,
                                       const NoiseSpec& noise);

// Minimal isotropic noise that cancels the cross-mode block C of M: the
// injected matrix gets off-diagonal block -C and diagonal blocks t 1 with
// t = sigma_max(C) + slack. slack > 0 keeps Sigma invertible so the weight
// matrix G exists; it adds slack/2 of thermal occupation per mode.
NoiseSpec solve_noise(const GaussianState& state, double slack);

// Signal encoding: shifts the means by (Re alpha, Im alpha, Re beta, Im beta).
GaussianState encode_displacement(const GaussianState& state, cplx alpha,
                                  cplx beta);

// Thermal occupation of one party (0 or 1); requires that party's 2x2 block
// of M to be isotropic m 1 within 1e-9 and returns (m - 1)/2.
double marginal_occupation(const GaussianState& state, int party);

// Max-norm difference, over means and M, between encoding then adding noise
// and adding noise then encoding.
double displacement_covariance_check(const GaussianState& state, cplx alpha,
                                     cplx beta, const NoiseSpec& noise);

// The two positive symplectic eigenvalues of M, descending; both are 1
// exactly for pure Gaussian states in this normalization.
std::vector<double> symplectic_eigenvalues(const RMat& m);

}  // namespace decorr
