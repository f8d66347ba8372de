#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "decorr/linalg.hpp"

namespace decorr {

enum class Mode { independent, identical };

// Linear map on two-qubit operators, stored as a 16x16 matrix acting on
// column-stacked vec(rho).
struct SuperOp {
  CMat mat;

  SuperOp() : mat(16, 16) {}
  explicit SuperOp(CMat m);

  CMat apply(const CMat& rho) const;
};

// Mixing weights of the independent-direction channel family
// a id + b d1 + c d2 with a + b + c = 1.
struct ABCParams {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
};

// Scale factors the family applies to Pauli coefficients: f1 multiplies
// single-party terms (sigma_m x 1 and 1 x sigma_n), f2 the cross terms.
struct TransferFactors {
  double f1 = 1.0;
  double f2 = 1.0;
};

// Weights of the six extreme covariant maps for identical directions,
// indexed by (input sector j, transferred momentum l, output sector J) in
// the order listed in identical_triples(). Trace preservation requires the
// j=0 weights and the j=1 weights to each sum to one.
using SixParams = std::array<double, 6>;

const std::array<std::array<int, 3>, 6>& identical_triples();

// d1(rho) = (rho_A x 1 + 1 x rho_B - rho) / 3
CMat apply_d1(const CMat& rho);
// d2(rho) = (4 1x1 - 2 rho_A x 1 - 2 1 x rho_B + rho) / 9
CMat apply_d2(const CMat& rho);

SuperOp superop_identity();
SuperOp superop_d1();
SuperOp superop_d2();

// Superoperator of rho -> U rho U^dag.
SuperOp conjugation_superop(const CMat& u);

// Builds a SuperOp from Kraus operators: rho -> sum_k A_k rho A_k^dag.
SuperOp superop_from_kraus(const std::vector<CMat>& kraus);

// a id + b d1 + c d2; throws unless a + b + c = 1 within 1e-12. The weights
// may be negative (the result is then not completely positive).
SuperOp family_indep(const ABCParams& p);

TransferFactors transfer_factors(const ABCParams& p);

// Inverts transfer_factors; every (f1, f2) determines unique weights.
ABCParams abc_from_factors(const TransferFactors& f);

// True when (f1, f2) lies in the triangle of completely positive family
// members, i.e. the recovered weights are all >= -tol.
bool cp_point(const TransferFactors& f, double tol = 1e-12);

// Clebsch-Gordan coefficient <J,M | j,mu; l,m> for integer spins up to 2.
// Hard-coded closed forms in the Condon-Shortley convention.
double clebsch_gordan(int j, int mu, int l, int m, int J, int M);

// Kraus operators of the extreme covariant map for the triple (j, l, J),
// normalized to preserve trace on the spin-j sector. 4x4 matrices in the
// computational basis.
std::vector<CMat> kraus_tlj(int j, int l, int J);

// Convex combination of the six extreme maps; throws when a weight is
// negative beyond 1e-12 or a sector sum deviates from one by more than 1e-10.
SuperOp family_identical(const SixParams& s);

// Choi matrix C(i*4+k, j*4+l) = <k| S(|i><j|) |l>.
CMat choi(const SuperOp& s);

struct CptpReport {
  bool cp = false;
  bool tp = false;
  double choi_min_eig = 0.0;
  double tp_residual = 0.0;
  double hermiticity_residual = 0.0;

  bool ok() const { return cp && tp; }
};

CptpReport is_cptp(const SuperOp& s, double tol = 1e-9);

// Orthonormal basis (Hilbert-Schmidt on superoperators) of all maps
// commuting with the signal rotations: U x V conjugations for independent
// directions, U x U for identical ones; perm_invariant additionally imposes
// symmetry under swapping the two qubits.
std::vector<SuperOp> commutant_basis(Mode mode, bool perm_invariant, double tol = 1e-6);

// Singular values (descending) of the stacked commutation constraints the
// basis is the nullspace of; exposed so tests can check the spectral gap at
// the rank threshold.
std::vector<double> commutant_singular_values(Mode mode, bool perm_invariant);

// Largest deviation max|S(U rho U^dag) - U S(rho) U^dag| over n_samples
// random rotations and random states.
double covariance_residual(const SuperOp& s, Mode mode, int n_samples = 100,
                           std::uint64_t seed = 12345);

// Haar-random SU(2) element.
CMat haar_su2(std::mt19937_64& rng);

// Random full-rank density matrix of the given dimension.
CMat random_density(int dim, std::mt19937_64& rng);

}  // namespace decorr
