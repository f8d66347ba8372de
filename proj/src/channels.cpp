#include "decorr/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "decorr/states.hpp"

namespace decorr {

namespace {

const cplx I{0.0, 1.0};

CMat basis_element(int i, int j) {
  CMat e(4, 4);
  e(i, j) = 1.0;
  return e;
}

template <typename F>
SuperOp superop_from_map(F&& map) {
  CMat s(16, 16);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      const CMat out = map(basis_element(i, j));
      const int col = j * 4 + i;
      for (int l = 0; l < 4; ++l)
        for (int k = 0; k < 4; ++k) s(l * 4 + k, col) = out(k, l);
    }
  return SuperOp(std::move(s));
}

CMat swap_gate() {
  CMat w(4, 4);
  w(0, 0) = 1.0;
  w(1, 2) = 1.0;
  w(2, 1) = 1.0;
  w(3, 3) = 1.0;
  return w;
}

}  // namespace

SuperOp::SuperOp(CMat m) : mat(std::move(m)) {
  if (mat.rows() != 16 || mat.cols() != 16)
    throw std::invalid_argument("SuperOp: expected a 16x16 matrix");
}

CMat SuperOp::apply(const CMat& rho) const {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("SuperOp::apply: expected a 4x4 operator");
  return unvec(mat * vec(rho), 4, 4);
}

const std::array<std::array<int, 3>, 6>& identical_triples() {
  static const std::array<std::array<int, 3>, 6> t = {{
      {0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}, {1, 2, 1},
  }};
  return t;
}

CMat apply_d1(const CMat& rho) {
  const CMat ra = partial_trace_second(rho, 2, 2);
  const CMat rb = partial_trace_first(rho, 2, 2);
  return (kron(ra, pauli(0)) + kron(pauli(0), rb) - rho) * (1.0 / 3.0);
}

CMat apply_d2(const CMat& rho) {
  const CMat ra = partial_trace_second(rho, 2, 2);
  const CMat rb = partial_trace_first(rho, 2, 2);
  CMat out = CMat::identity(4) * (4.0 * rho.trace());
  out -= 2.0 * kron(ra, pauli(0));
  out -= 2.0 * kron(pauli(0), rb);
  out += rho;
  return out * (1.0 / 9.0);
}

SuperOp superop_identity() { return SuperOp(CMat::identity(16)); }

SuperOp superop_d1() {
  return superop_from_map([](const CMat& rho) { return apply_d1(rho); });
}

SuperOp superop_d2() {
  return superop_from_map([](const CMat& rho) { return apply_d2(rho); });
}

SuperOp conjugation_superop(const CMat& u) {
  if (u.rows() != 4 || u.cols() != 4)
    throw std::invalid_argument("conjugation_superop: expected a 4x4 unitary");
  return SuperOp(kron(u.conjugate(), u));
}

SuperOp superop_from_kraus(const std::vector<CMat>& kraus) {
  CMat s(16, 16);
  for (const CMat& a : kraus) {
    if (a.rows() != 4 || a.cols() != 4)
      throw std::invalid_argument("superop_from_kraus: expected 4x4 Kraus operators");
    s += kron(a.conjugate(), a);
  }
  return SuperOp(std::move(s));
}

SuperOp family_indep(const ABCParams& p) {
  if (std::abs(p.a + p.b + p.c - 1.0) > 1e-12)
    throw std::invalid_argument("family_indep: weights must sum to one");
  CMat s = superop_identity().mat * p.a;
  s += superop_d1().mat * p.b;
  s += superop_d2().mat * p.c;
  return SuperOp(std::move(s));
}

TransferFactors transfer_factors(const ABCParams& p) {
  if (std::abs(p.a + p.b + p.c - 1.0) > 1e-12)
    throw std::invalid_argument("transfer_factors: weights must sum to one");
  return {p.a + (p.b - p.c) / 3.0, p.a - p.b / 3.0 + p.c / 9.0};
}

ABCParams abc_from_factors(const TransferFactors& f) {
  ABCParams p;
  p.c = 9.0 * (1.0 - 2.0 * f.f1 + f.f2) / 16.0;
  p.b = 1.5 * (1.0 - f.f1) - 2.0 * p.c;
  p.a = 1.0 - p.b - p.c;
  return p;
}

bool cp_point(const TransferFactors& f, double tol) {
  const ABCParams p = abc_from_factors(f);
  return p.a >= -tol && p.b >= -tol && p.c >= -tol;
}

double clebsch_gordan(int j, int mu, int l, int m, int J, int M) {
  if (std::abs(mu) > j || std::abs(m) > l || std::abs(M) > J)
    throw std::invalid_argument("clebsch_gordan: projection out of range");
  if (M != mu + m) return 0.0;

  if (j == 0 && l == 0 && J == 0) return 1.0;
  if (j == 0 && l == 1 && J == 1) return 1.0;
  if (j == 1 && l == 0 && J == 1) return 1.0;
  if (j == 1 && l == 1 && J == 0) return (mu == 0 ? -1.0 : 1.0) / std::sqrt(3.0);
  if (j == 1 && l == 1 && J == 1) {
    static const double tab[3][3] = {
        {0.0, -1.0, -1.0},  // mu = -1
        {1.0, 0.0, -1.0},   // mu =  0
        {1.0, 1.0, 0.0},    // mu = +1
    };
    return tab[mu + 1][m + 1] / std::sqrt(2.0);
  }
  if (j == 1 && l == 2 && J == 1) {
    const double s35 = std::sqrt(3.0 / 5.0);
    const double s310 = std::sqrt(3.0 / 10.0);
    const double s110 = std::sqrt(1.0 / 10.0);
    const double s25 = std::sqrt(2.0 / 5.0);
    static const double tab[3][5] = {
        {0.0, 0.0, 1.0, 2.0, 3.0},    // mu = -1: s110, s310, s35
        {0.0, -2.0, -4.0, -2.0, 0.0}, // mu =  0: -s310, -s25, -s310
        {3.0, 2.0, 1.0, 0.0, 0.0},    // mu = +1: s35, s310, s110
    };
    const double code = tab[mu + 1][m + 2];
    switch (static_cast<int>(std::abs(code))) {
      case 0: return 0.0;
      case 1: return std::copysign(s110, code);
      case 2: return std::copysign(s310, code);
      case 3: return std::copysign(s35, code);
      case 4: return std::copysign(s25, code);
    }
  }
  throw std::invalid_argument("clebsch_gordan: unsupported spin triple");
}

std::vector<CMat> kraus_tlj(int j, int l, int J) {
  bool known = false;
  for (const auto& t : identical_triples())
    if (t[0] == j && t[1] == l && t[2] == J) known = true;
  if (!known) throw std::invalid_argument("kraus_tlj: unsupported triple");

  const double norm = std::sqrt((2.0 * j + 1.0) / (2.0 * J + 1.0));
  std::vector<CMat> ops;
  for (int m = -l; m <= l; ++m) {
    CMat a(4, 4);
    bool nonzero = false;
    for (int mu = -j; mu <= j; ++mu) {
      const int M = mu + m;
      if (std::abs(M) > J) continue;
      const double cg = clebsch_gordan(j, mu, l, m, J, M);
      if (cg == 0.0) continue;
      a += (norm * cg) * (coupled_state(J, M) * coupled_state(j, mu).dagger());
      nonzero = true;
    }
    if (nonzero) ops.push_back(std::move(a));
  }
  return ops;
}

SuperOp family_identical(const SixParams& s) {
  double sum0 = 0.0, sum1 = 0.0;
  for (int k = 0; k < 6; ++k) {
    if (s[k] < -1e-12) throw std::invalid_argument("family_identical: negative weight");
    (identical_triples()[k][0] == 0 ? sum0 : sum1) += s[k];
  }
  if (std::abs(sum0 - 1.0) > 1e-10 || std::abs(sum1 - 1.0) > 1e-10)
    throw std::invalid_argument("family_identical: sector weights must each sum to one");

  CMat m(16, 16);
  for (int k = 0; k < 6; ++k) {
    if (s[k] == 0.0) continue;
    const auto& t = identical_triples()[k];
    m += superop_from_kraus(kraus_tlj(t[0], t[1], t[2])).mat * s[k];
  }
  return SuperOp(std::move(m));
}

CMat choi(const SuperOp& s) {
  CMat c(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) c(i * 4 + k, j * 4 + l) = s.mat(l * 4 + k, j * 4 + i);
  return c;
}

CptpReport is_cptp(const SuperOp& s, double tol) {
  CptpReport rep;
  const CMat c = choi(s);

  double herm = 0.0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) herm = std::max(herm, std::abs(c(i, j) - std::conj(c(j, i))));
  rep.hermiticity_residual = herm;

  const CMat tr_out = partial_trace_second(c, 4, 4);
  rep.tp_residual = (tr_out - CMat::identity(4)).max_abs();
  rep.tp = rep.tp_residual <= tol;

  if (herm > tol) {
    rep.cp = false;
    rep.choi_min_eig = -herm;
    return rep;
  }
  const EigResult eig = hermitian_eigs((c + c.dagger()) * 0.5);
  rep.choi_min_eig = eig.values.front();
  rep.cp = rep.choi_min_eig >= -tol;
  return rep;
}

namespace {

std::vector<CMat> covariance_generators(Mode mode) {
  std::vector<CMat> gens;
  for (int k = 1; k <= 3; ++k) {
    if (mode == Mode::independent) {
      gens.push_back(kron(pauli(k), pauli(0)));
      gens.push_back(kron(pauli(0), pauli(k)));
    } else {
      gens.push_back(kron(pauli(k), pauli(0)) + kron(pauli(0), pauli(k)));
    }
  }
  return gens;
}

// Stacks, for each generator G, the matrix of S -> S K - K S acting on
// vec(S), where K is the superoperator of rho -> i[G, rho]; optionally adds
// the swap-symmetry constraint S -> W S W - S.
CMat commutant_constraints(Mode mode, bool perm_invariant) {
  const CMat id16 = CMat::identity(16);
  std::vector<CMat> blocks;
  for (const CMat& g : covariance_generators(mode)) {
    const CMat k = (kron(CMat::identity(4), g) - kron(g.transpose(), CMat::identity(4))) * I;
    blocks.push_back(kron(k.transpose(), id16) - kron(id16, k));
  }
  if (perm_invariant) {
    const CMat w = conjugation_superop(swap_gate()).mat;
    blocks.push_back(kron(w, w) - CMat::identity(256));
  }

  CMat l(static_cast<int>(blocks.size()) * 256, 256);
  for (size_t b = 0; b < blocks.size(); ++b)
    for (int i = 0; i < 256; ++i)
      for (int j = 0; j < 256; ++j) l(static_cast<int>(b) * 256 + i, j) = blocks[b](i, j);
  return l;
}

}  // namespace

std::vector<SuperOp> commutant_basis(Mode mode, bool perm_invariant, double tol) {
  const CMat basis = nullspace(commutant_constraints(mode, perm_invariant), tol);
  std::vector<SuperOp> out;
  out.reserve(basis.cols());
  for (int k = 0; k < basis.cols(); ++k) {
    CMat v(256, 1);
    for (int i = 0; i < 256; ++i) v(i, 0) = basis(i, k);
    out.push_back(SuperOp(unvec(v, 16, 16)));
  }
  return out;
}

std::vector<double> commutant_singular_values(Mode mode, bool perm_invariant) {
  return singular_values(commutant_constraints(mode, perm_invariant));
}

double covariance_residual(const SuperOp& s, Mode mode, int n_samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int it = 0; it < n_samples; ++it) {
    const CMat ua = haar_su2(rng);
    const CMat ub = mode == Mode::independent ? haar_su2(rng) : ua;
    const CMat u = kron(ua, ub);
    const CMat rho = random_density(4, rng);
    const CMat lhs = s.apply(u * rho * u.dagger());
    const CMat rhs = u * s.apply(rho) * u.dagger();
    worst = std::max(worst, (lhs - rhs).max_abs());
  }
  return worst;
}

CMat haar_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double q[4];
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& v : q) {
      v = gauss(rng);
      n2 += v * v;
    }
  } while (n2 < 1e-12);
  const double n = std::sqrt(n2);
  for (double& v : q) v /= n;
  CMat u = pauli(0) * cplx(q[0], 0.0);
  for (int k = 0; k < 3; ++k) u += (I * q[k + 1]) * pauli(k + 1);
  return u;
}

CMat random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  CMat rho = g * g.dagger();
  return rho * (1.0 / rho.trace().real());
}

}  // namespace decorr
