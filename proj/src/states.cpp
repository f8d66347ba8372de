#include "decorr/states.hpp"

#include <cmath>
#include <stdexcept>

namespace decorr {

namespace {

const cplx I{0.0, 1.0};

CMat make_pauli(int k) {
  CMat m(2, 2);
  switch (k) {
    case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -I; m(1, 0) = I; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: throw std::invalid_argument("pauli: index out of range");
  }
  return m;
}

}  // namespace

const CMat& pauli(int k) {
  static const CMat s0 = make_pauli(0);
  static const CMat s1 = make_pauli(1);
  static const CMat s2 = make_pauli(2);
  static const CMat s3 = make_pauli(3);
  switch (k) {
    case 0: return s0;
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw std::invalid_argument("pauli: index out of range");
  }
}

CMat seed_indep(const SeedIndep& s) {
  if (std::abs(s.lam) > 1.0 + 1e-12 || 2.0 * std::abs(s.eta) > 1.0 - s.lam + 1e-12)
    throw std::invalid_argument("seed_indep: parameters outside the positive region");
  CMat rho = kron(pauli(0), pauli(0));
  rho += s.eta * (kron(pauli(3), pauli(0)) + kron(pauli(0), pauli(3)));
  rho -= s.lam * kron(pauli(3), pauli(3));
  return rho * 0.25;
}

CMat seed_sym(const SeedSym& s) {
  if (s.p < -1e-12 || s.p > 1.0 + 1e-12)
    throw std::invalid_argument("seed_sym: mixing weight outside [0, 1]");
  if (std::abs(s.lam) > 1.0 + 1e-12 || 2.0 * std::abs(s.eta) > 1.0 - s.lam + 1e-12)
    throw std::invalid_argument("seed_sym: parameters outside the positive region");
  CMat sym = kron(pauli(0), pauli(0));
  sym += s.eta * (kron(pauli(3), pauli(0)) + kron(pauli(0), pauli(3)));
  sym += (0.5 * (1.0 + s.lam)) * (kron(pauli(1), pauli(1)) + kron(pauli(2), pauli(2)));
  sym -= s.lam * kron(pauli(3), pauli(3));
  return s.p * singlet_projector() + (0.25 * (1.0 - s.p)) * sym;
}

CMat su2(double theta, const std::array<double, 3>& axis) {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (n < 1e-300) throw std::invalid_argument("su2: axis must be nonzero");
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  CMat u = pauli(0) * cplx(c, 0.0);
  for (int k = 0; k < 3; ++k) u += (I * (s * axis[k] / n)) * pauli(k + 1);
  return u;
}

CMat encode(const CMat& rho, const CMat& u_a, const CMat& u_b) {
  if (rho.rows() != 4 || rho.cols() != 4 || u_a.rows() != 2 || u_b.rows() != 2)
    throw std::invalid_argument("encode: expected a two-qubit state and single-qubit unitaries");
  const CMat u = kron(u_a, u_b);
  return u * rho * u.dagger();
}

PauliCoeffs pauli_decompose(const CMat& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("pauli_decompose: expected a 4x4 operator");
  PauliCoeffs c{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      c[m][n] = (kron(pauli(m), pauli(n)) * rho).trace().real();
  return c;
}

CMat pauli_reconstruct(const PauliCoeffs& c) {
  CMat rho(4, 4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      if (c[m][n] == 0.0) continue;
      rho += c[m][n] * kron(pauli(m), pauli(n));
    }
  return rho * 0.25;
}

double bloch_length_z(const CMat& rho1) {
  if (rho1.rows() != 2 || rho1.cols() != 2)
    throw std::invalid_argument("bloch_length_z: expected a single-qubit state");
  return (rho1(0, 0) - rho1(1, 1)).real();
}

CMat coupled_state(int j, int m) {
  CMat v(4, 1);
  const double r = 1.0 / std::sqrt(2.0);
  if (j == 0 && m == 0) {
    v(1, 0) = r;
    v(2, 0) = -r;
  } else if (j == 1 && m == 1) {
    v(0, 0) = 1.0;
  } else if (j == 1 && m == 0) {
    v(1, 0) = r;
    v(2, 0) = r;
  } else if (j == 1 && m == -1) {
    v(3, 0) = 1.0;
  } else {
    throw std::invalid_argument("coupled_state: invalid quantum numbers");
  }
  return v;
}

CMat singlet_projector() {
  const CMat s = coupled_state(0, 0);
  return s * s.dagger();
}

CMat triplet_projector() {
  return CMat::identity(4) - singlet_projector();
}

CMat qubit_along_z(double t) {
  CMat rho(2, 2);
  rho(0, 0) = 0.5 * (1.0 + t);
  rho(1, 1) = 0.5 * (1.0 - t);
  return rho;
}

}  // namespace decorr
