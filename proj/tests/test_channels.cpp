#include <cmath>
#include <random>
#include <stdexcept>

#include "decorr/channels.hpp"
#include "decorr/states.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace decorr;

namespace {

cplx hs_inner(const CMat& a, const CMat& b) {
  return (a.dagger() * b).trace();
}

CMat swap_gate() {
  CMat s(4, 4);
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

SixParams random_six(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SixParams s{};
  s[0] = u(rng);
  s[1] = 1.0 - s[0];
  double w[4] = {u(rng) + 1e-3, u(rng) + 1e-3, u(rng) + 1e-3, u(rng) + 1e-3};
  double tot = w[0] + w[1] + w[2] + w[3];
  for (int k = 0; k < 4; ++k) s[2 + k] = w[k] / tot;
  return s;
}

}  // namespace

TEST_CASE("the two extreme maps rescale pauli coefficients") {
  CMat quarter = CMat::identity(4) * cplx(0.25, 0.0);
  CHECK((apply_d1(quarter) - quarter).max_abs() < 1e-14);
  CHECK((apply_d2(quarter) - quarter).max_abs() < 1e-14);

  std::mt19937_64 rng(31);
  CMat rho = random_density(4, rng);
  PauliCoeffs c = pauli_decompose(rho);
  PauliCoeffs c1 = pauli_decompose(apply_d1(rho));
  PauliCoeffs c2 = pauli_decompose(apply_d2(rho));
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      double f1 = 1.0, f2 = 1.0;
      if ((m == 0) != (n == 0)) {
        f1 = 1.0 / 3.0;
        f2 = -1.0 / 3.0;
      } else if (m != 0 && n != 0) {
        f1 = -1.0 / 3.0;
        f2 = 1.0 / 9.0;
      }
      CHECK(std::abs(c1[m][n] - f1 * c[m][n]) < 1e-12);
      CHECK(std::abs(c2[m][n] - f2 * c[m][n]) < 1e-12);
    }
}

TEST_CASE("channel family interpolates identity and total depolarizer") {
  SuperOp id = family_indep({1.0, 0.0, 0.0});
  std::mt19937_64 rng(32);
  CMat rho = random_density(4, rng);
  CHECK((id.apply(rho) - rho).max_abs() < 1e-13);

  SuperOp depol = family_indep({1.0 / 16.0, 3.0 / 8.0, 9.0 / 16.0});
  CMat quarter = CMat::identity(4) * cplx(0.25, 0.0);
  for (int k = 0; k < 5; ++k) {
    CMat out = depol.apply(random_density(4, rng));
    CHECK((out - quarter).max_abs() < 1e-13);
  }

  CHECK_THROWS_AS(family_indep({0.5, 0.2, 0.2}), std::invalid_argument);
}

TEST_CASE("transfer factors match the family action on every coefficient") {
  CHECK(transfer_factors({1.0, 0.0, 0.0}).f1 == doctest::Approx(1.0));
  CHECK(transfer_factors({1.0, 0.0, 0.0}).f2 == doctest::Approx(1.0));
  CHECK(transfer_factors({0.0, 1.0, 0.0}).f1 == doctest::Approx(1.0 / 3.0));
  CHECK(transfer_factors({0.0, 1.0, 0.0}).f2 == doctest::Approx(-1.0 / 3.0));
  CHECK(transfer_factors({0.0, 0.0, 1.0}).f1 == doctest::Approx(-1.0 / 3.0));
  CHECK(transfer_factors({0.0, 0.0, 1.0}).f2 == doctest::Approx(1.0 / 9.0));
  TransferFactors zero =
      transfer_factors({1.0 / 16.0, 3.0 / 8.0, 9.0 / 16.0});
  CHECK(std::abs(zero.f1) < 1e-15);
  CHECK(std::abs(zero.f2) < 1e-15);

  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    double a = u(rng), b = u(rng) * (1.0 - a), c = 1.0 - a - b;
    TransferFactors f = transfer_factors({a, b, c});
    SuperOp s = family_indep({a, b, c});
    CMat rho = random_density(4, rng);
    PauliCoeffs in = pauli_decompose(rho);
    PauliCoeffs out = pauli_decompose(s.apply(rho));
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        double scale = 1.0;
        if ((m == 0) != (n == 0))
          scale = f.f1;
        else if (m != 0 && n != 0)
          scale = f.f2;
        CHECK(std::abs(out[m][n] - scale * in[m][n]) < 1e-12);
      }

    ABCParams back = abc_from_factors(f);
    CHECK(back.a == doctest::Approx(a).epsilon(1e-11));
    CHECK(back.b == doctest::Approx(b).epsilon(1e-11));
    CHECK(back.c == doctest::Approx(c).epsilon(1e-11));
  }

  CHECK(cp_point({1.0, 1.0}));
  CHECK(cp_point({1.0 / 3.0, -1.0 / 3.0}));
  CHECK(cp_point({-1.0 / 3.0, 1.0 / 9.0}));
  CHECK(cp_point({0.0, 0.0}));
  CHECK(!cp_point({1.01, 1.0}));
  CHECK(!cp_point({0.5, 0.9}));
}

TEST_CASE("angular momentum table survives the ladder recursions") {
  CHECK(oracle::cg_ladder_residual() < 1e-12);
  CHECK(oracle::cg_normalization_residual() < 1e-12);

  // cross-sector orthogonality where two output spins share a table
  double dot = 0.0;
  for (int mu = -1; mu <= 1; ++mu)
    dot += clebsch_gordan(1, mu, 1, -mu, 0, 0) *
           clebsch_gordan(1, mu, 1, -mu, 1, 0);
  CHECK(std::abs(dot) < 1e-14);

  // hand-checked anchor values in the Condon-Shortley convention
  CHECK(clebsch_gordan(1, 0, 1, 0, 0, 0) ==
        doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(1, 1, 2, 0, 1, 1) ==
        doctest::Approx(std::sqrt(0.1)).epsilon(1e-14));
  CHECK(clebsch_gordan(1, 0, 2, 0, 1, 0) ==
        doctest::Approx(-std::sqrt(0.4)).epsilon(1e-14));
  CHECK(clebsch_gordan(1, 0, 2, 1, 1, 1) ==
        doctest::Approx(-std::sqrt(0.3)).epsilon(1e-14));
  CHECK(clebsch_gordan(1, 1, 2, -2, 1, -1) ==
        doctest::Approx(std::sqrt(0.6)).epsilon(1e-14));

  // highest-weight coefficient is positive for every triple
  for (const auto& tr : identical_triples()) {
    const int j = tr[0], l = tr[1], J = tr[2];
    CHECK(clebsch_gordan(j, j, l, J - j, J, J) > 0.0);
  }

  CHECK_THROWS_AS(clebsch_gordan(2, 0, 2, 0, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(clebsch_gordan(1, 2, 1, -1, 1, 1), std::invalid_argument);
}

TEST_CASE("sector maps preserve trace exactly on their input sector") {
  for (const auto& tr : identical_triples()) {
    std::vector<CMat> kraus = kraus_tlj(tr[0], tr[1], tr[2]);
    CMat sum = CMat::zero(4, 4);
    for (const CMat& a : kraus) sum += a.dagger() * a;
    CMat proj = tr[0] == 0 ? singlet_projector() : triplet_projector();
    CHECK((sum - proj).max_abs() < 1e-13);
  }
}

TEST_CASE("identical-direction family holds its endpoint maps") {
  // weight on the two l=0 triples gives the identity on block-diag states
  SixParams ident{};
  ident[0] = 1.0;  // (0,0,0)
  ident[3] = 1.0;  // (1,0,1)
  SuperOp s = family_identical(ident);
  CMat rho = seed_sym({0.3, 0.2, 0.1});
  CHECK((s.apply(rho) - rho).max_abs() < 1e-13);

  // full transfer into the singlet annihilates the triplet block
  SixParams crush{};
  crush[0] = 1.0;  // (0,0,0)
  crush[2] = 1.0;  // (1,1,0)
  SuperOp t = family_identical(crush);
  CMat triplet_in = seed_sym({0.0, 0.2, 0.1});
  CMat out = t.apply(triplet_in);
  CHECK((out - singlet_projector()).max_abs() < 1e-13);

  SixParams bad{};
  bad[0] = 1.2;
  bad[1] = -0.2;
  bad[3] = 1.0;
  CHECK_THROWS_AS(family_identical(bad), std::invalid_argument);
  SixParams unnorm{};
  unnorm[0] = 1.0;
  unnorm[3] = 0.7;
  CHECK_THROWS_AS(family_identical(unnorm), std::invalid_argument);
}

TEST_CASE("identical-direction family is covariant, swap safe, and cptp") {
  std::mt19937_64 rng(34);
  CMat sw = swap_gate();
  SuperOp swap_conj = conjugation_superop(sw);
  for (int trial = 0; trial < 5; ++trial) {
    SixParams s = random_six(rng);
    SuperOp f = family_identical(s);
    CHECK(covariance_residual(f, Mode::identical, 40, 777 + trial) < 1e-10);
    CptpReport rep = is_cptp(f, 1e-9);
    CHECK(rep.ok());
    CHECK(rep.choi_min_eig > -1e-10);
    CHECK(rep.tp_residual < 1e-10);
    CHECK((swap_conj.mat * f.mat - f.mat * swap_conj.mat).max_abs() < 1e-10);

    CMat out = f.apply(seed_sym({0.0, 2.0 / 3.0, -1.0 / 3.0}));
    CHECK((sw * out * sw - out).max_abs() < 1e-10);
    CHECK((singlet_projector() * out * triplet_projector()).max_abs() <
          1e-10);
  }
}

TEST_CASE("complete positivity verdicts track the choi spectrum") {
  CptpReport rep = is_cptp(superop_identity());
  CHECK(rep.ok());
  EigResult eig = hermitian_eigs(choi(superop_identity()));
  CHECK(eig.values.back() == doctest::Approx(4.0).epsilon(1e-12));
  for (size_t k = 0; k + 1 < eig.values.size(); ++k)
    CHECK(std::abs(eig.values[k]) < 1e-12);

  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    double a = u(rng), b = u(rng) * (1.0 - a);
    CptpReport r = is_cptp(family_indep({a, b, 1.0 - a - b}));
    CHECK(r.ok());
  }

  CptpReport outside = is_cptp(family_indep({1.2, -0.2, 0.0}));
  CHECK(!outside.cp);
  CHECK(outside.choi_min_eig < -1e-6);
}

TEST_CASE("covariance residual separates covariant maps from others") {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = u(rng), b = u(rng) * (1.0 - a);
  CHECK(covariance_residual(family_indep({a, b, 1.0 - a - b}),
                            Mode::independent, 60, 99) < 1e-10);

  SuperOp fixed = conjugation_superop(kron(pauli(1), CMat::identity(2)));
  CHECK(covariance_residual(fixed, Mode::independent, 60, 99) > 0.1);
}

TEST_CASE("commutant dimensions count the free channel parameters") {
  std::vector<SuperOp> perm = commutant_basis(Mode::independent, true);
  std::vector<SuperOp> indep = commutant_basis(Mode::independent, false);
  std::vector<SuperOp> ident = commutant_basis(Mode::identical, false);
  CHECK(perm.size() == 3);
  CHECK(indep.size() == 4);
  CHECK(ident.size() == 14);

  // every element truly commutes with the signal rotations
  for (const SuperOp& s : perm)
    CHECK(covariance_residual(s, Mode::independent, 100, 4242) < 1e-9);
  for (const SuperOp& s : indep)
    CHECK(covariance_residual(s, Mode::independent, 100, 4243) < 1e-9);
  for (const SuperOp& s : ident)
    CHECK(covariance_residual(s, Mode::identical, 100, 4244) < 1e-9);

  // the permutation-invariant independent commutant is exactly the span of
  // the three family generators
  std::vector<CMat> span = {superop_identity().mat, superop_d1().mat,
                            superop_d2().mat};
  for (size_t k = 0; k < span.size(); ++k) {
    for (size_t l = 0; l < k; ++l)
      span[k] -= span[l] * hs_inner(span[l], span[k]);
    span[k] = span[k] * cplx(1.0 / span[k].frobenius(), 0.0);
  }
  double worst = 0.0;
  for (const SuperOp& s : perm) {
    CMat resid = s.mat;
    for (const CMat& v : span) resid -= v * hs_inner(v, s.mat);
    worst = std::max(worst, resid.frobenius());
  }
  CHECK(worst < 1e-9);

  // spectral gap at the rank threshold
  for (bool pi : {true, false}) {
    std::vector<double> sv =
        commutant_singular_values(Mode::independent, pi);
    size_t dim = pi ? 3 : 4;
    // discarded values sit at the Gram-matrix noise floor (~sqrt(eps)),
    // kept values are O(1)
    CHECK(sv[sv.size() - dim] < 2e-7);
    CHECK(sv[sv.size() - dim - 1] > 1.0);
  }
  std::vector<double> sv = commutant_singular_values(Mode::identical, false);
  CHECK(sv[sv.size() - 14] < 2e-7);
  CHECK(sv[sv.size() - 15] > 1.0);
}
