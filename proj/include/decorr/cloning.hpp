#pragma once

#include <vector>

#include "decorr/linalg.hpp"

namespace decorr {

// Pure qubit by Bloch angles: cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
// Equatorial states have theta = pi/2.
struct PureQubit {
  double theta = 0.0;
  double phi = 0.0;
};

// 2x1 unit column vector for the given angles.
CMat pure_ket(const PureQubit& q);

// Optimal 1-to-2 universal cloner, rho_out = (2/3) P_sym (rho x 1) P_sym
// with P_sym the projector onto the symmetric subspace. Both marginals come
// out as (2/3)|psi><psi| + (1/6) 1 regardless of the input.
CMat uqcm(const PureQubit& psi);
CMat uqcm(const CMat& ket);

struct DegreeReport {
  int n_inputs = 0;
  int input_degree = 0;
  int target_degree = 0;
  bool obstruction = false;  // target_degree > input_degree
  double eta = 0.0;          // shrink factor (largest one when they differ)
};

// Compares entrywise Fourier degrees in the equatorial phase: the input side
// (|phi><phi|)^xN against the shrunk product target
// (eta |phi><phi| + (1-eta)/2 1)^x(N+1), sampled at K = 2N+5 phases with
// coefficients above 1e-8 counted. A linear map acting on the input cannot
// raise the phase degree, so obstruction = true means no machine can emit
// the target for every phase.
DegreeReport fourier_degree_report(int n, double eta = 2.0 / 3.0);

// Variant with one shrink factor per output clone (etas has n+1 entries):
// the target degree counts the nonzero factors, so the obstruction fires
// exactly when every clone keeps a nonzero signal.
DegreeReport asymmetric_degree_report(const std::vector<double>& etas, int n);

}  // namespace decorr
