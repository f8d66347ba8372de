#pragma once

#include <array>

#include "decorr/linalg.hpp"

namespace decorr {

// Two-qubit seed with independent signal directions:
//   rho = 1/4 [ 1x1 + eta (sz x 1 + 1 x sz) - lam sz x sz ].
// Positivity requires |lam| <= 1 and 2|eta| <= 1 - lam.
struct SeedIndep {
  double eta = 0.0;
  double lam = 0.0;
};

// Two-qubit seed for identical signal directions: a singlet admixed with a
// permutation-invariant triplet-supported state,
//   rho = p |S><S| + (1-p) rho_sym(eta, lam),
//   rho_sym = 1/4 [ 1x1 + eta (sz x 1 + 1 x sz)
//                   + (1+lam)/2 (sx x sx + sy x sy) - lam sz x sz ].
struct SeedSym {
  double p = 0.0;
  double eta = 0.0;
  double lam = 0.0;
};

// Pauli matrices; index 0 is the identity, 1..3 are sigma_x, sigma_y, sigma_z.
const CMat& pauli(int k);

// coeff[m][n] = Tr[rho (sigma_m x sigma_n)]; real for Hermitian rho.
using PauliCoeffs = std::array<std::array<double, 4>, 4>;

// Builds the independent-direction seed; throws std::invalid_argument when
// the parameters leave the positive-semidefinite region.
CMat seed_indep(const SeedIndep& s);

// Builds the identical-direction seed; requires 0 <= p <= 1 and positivity
// of the triplet component. seed_sym({1, eta, lam}) is the singlet exactly.
CMat seed_sym(const SeedSym& s);

// SU(2) element cos(theta/2) 1 + i sin(theta/2) (axis . sigma); the axis is
// normalized internally and must be nonzero.
CMat su2(double theta, const std::array<double, 3>& axis);

// Applies local unitaries: rho -> (uA x uB) rho (uA x uB)^dag.
CMat encode(const CMat& rho, const CMat& u_a, const CMat& u_b);

PauliCoeffs pauli_decompose(const CMat& rho);
CMat pauli_reconstruct(const PauliCoeffs& c);

// Tr[rho sigma_z] of a single-qubit state.
double bloch_length_z(const CMat& rho1);

// Coupled basis of two qubits: coupled_state(0,0) is the singlet,
// coupled_state(1,m) the triplet with z-projection m. Column vectors.
CMat coupled_state(int j, int m);

// Singlet/triplet projectors.
CMat singlet_projector();
CMat triplet_projector();

// Single-qubit state 1/2 (1 + t sigma_z).
CMat qubit_along_z(double t);

}  // namespace decorr
