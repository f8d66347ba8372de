#pragma once

#include <array>
#include <vector>

#include "decorr/channels.hpp"
#include "decorr/states.hpp"

namespace decorr {

// Result of maximizing the surviving signal length eta_tilde over the
// covariant channel family, subject to the channel output being the product
// state [1/2 (1 + eta_tilde sz)]^x2 (up to the sign of the input signal).
struct Solution {
  Mode mode = Mode::independent;
  double eta_tilde = 0.0;
  std::vector<double> params;       // (a, b, c), or the six sector weights
  double residual = 0.0;            // max|channel(seed) - product target|
  bool feasible_nontrivial = false;  // eta_tilde > 1e-9
};

Solution solve_indep(const SeedIndep& seed);

// Same maximization for an explicit density matrix. Any Pauli component the
// product target cannot carry forces the corresponding transfer factor to
// zero, so states outside the seed_indep family only admit the total
// depolarizer.
Solution solve_indep(const CMat& seed);

Solution solve_identical(const SeedSym& seed);
Solution solve_identical(const CMat& seed);

struct SweepGrid {
  Mode mode = Mode::independent;
  double eta_min = 0.0;
  double eta_max = 1.0;
  int eta_steps = 51;
  double lam_min = -1.0;
  double lam_max = 1.0;
  int lam_steps = 51;
  double p = 0.0;  // singlet admixture, identical mode only
};

struct SweepCell {
  double eta = 0.0;
  double lam = 0.0;
  bool valid = false;  // false when (eta, lam) leaves the physical region
  double eta_tilde = 0.0;
  int n_params = 0;
  std::array<double, 6> params{};
};

struct SweepResult {
  SweepGrid grid;
  std::vector<SweepCell> cells;  // lambda index outer (ascending), eta inner

  const SweepCell& at(int i_lam, int i_eta) const {
    return cells[static_cast<size_t>(i_lam) * grid.eta_steps + i_eta];
  }
};

// Evaluates the solver on every grid cell. The parallel path distributes
// cells across OpenMP threads; each cell is computed independently with no
// shared state, so the output is bit-identical to sweep_serial.
SweepResult sweep(const SweepGrid& grid, bool parallel = true);
SweepResult sweep_serial(const SweepGrid& grid);

// True when no single channel can faithfully decorrelate both states: their
// marginals differ on both parties, and the forced convex-combination output
// differs from the product of the mixture's marginals.
bool convexity_obstruction(const CMat& rho1, const CMat& rho2, double mix);

}  // namespace decorr
