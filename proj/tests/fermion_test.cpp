#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/dense.hpp"
#include "support/fci_ladder.hpp"
#include "vqx/fermion.hpp"
#include "vqx/statevector.hpp"

using vqx::cdouble;
using vqx::Encoding;
using vqx::FermionOperator;
using vqx::LadderOp;
using vqx::PauliSum;
using vqx::StateVector;
using testsupport::ladder_matrix;
using testsupport::many_body_matrix;

namespace {

// Occupation-basis matrices index mode 0 at the least significant bit;
// qubit matrices put qubit 0 (mode 0 under Jordan-Wigner) at the most
// significant bit. The bit-reversal permutation connects the two.
Eigen::MatrixXcd to_qubit_order(const Eigen::MatrixXcd& m, int n_modes) {
  const int dim = 1 << n_modes;
  Eigen::MatrixXcd out(dim, dim);
  auto rev = [&](int i) {
    int r = 0;
    for (int b = 0; b < n_modes; ++b)
      if (i & (1 << b)) r |= 1 << (n_modes - 1 - b);
    return r;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out(rev(i), rev(j)) = m(i, j);
  return out;
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("encoding names parse and round trip") {
  CHECK(vqx::encoding_from_string("jw") == Encoding::jordan_wigner);
  CHECK(vqx::encoding_from_string("jordan_wigner") == Encoding::jordan_wigner);
  CHECK(vqx::encoding_from_string("bk") == Encoding::bravyi_kitaev);
  CHECK(vqx::encoding_from_string("bravyi_kitaev") == Encoding::bravyi_kitaev);
  CHECK(vqx::to_string(Encoding::jordan_wigner) == "jw");
  CHECK(vqx::to_string(Encoding::bravyi_kitaev) == "bk");
  CHECK_THROWS_AS(vqx::encoding_from_string("parity"), std::invalid_argument);
}

TEST_CASE("jordan-wigner number operator on one mode is (I - Z)/2") {
  const FermionOperator n0 =
      FermionOperator::term({{0, true}, {0, false}}, 1.0);
  const PauliSum p = vqx::jordan_wigner(n0, 2);
  CHECK(std::abs(p.coefficient("II") - cdouble(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(p.coefficient("ZI") - cdouble(-0.5, 0.0)) < 1e-14);
  CHECK(p.size() == 2);
}

TEST_CASE("jordan-wigner hopping term is the XX+YY exchange") {
  FermionOperator hop;
  hop.add_term({{0, true}, {1, false}}, 1.0);
  hop.add_term({{1, true}, {0, false}}, 1.0);
  const PauliSum p = vqx::jordan_wigner(hop, 2);
  CHECK(std::abs(p.coefficient("XX") - cdouble(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(p.coefficient("YY") - cdouble(0.5, 0.0)) < 1e-14);
  CHECK(p.size() == 2);
}

TEST_CASE("jordan-wigner matrices equal occupation-basis ladder products") {
  const int n = 4;
  struct Case {
    std::vector<LadderOp> ops;
    cdouble coeff;
  };
  const std::vector<Case> cases = {
      {{{2, true}}, 1.0},
      {{{1, false}}, 1.0},
      {{{3, true}, {0, false}}, cdouble(0.5, -0.25)},
      {{{2, true}, {2, false}}, 1.0},
      {{{0, true}, {1, true}, {3, false}, {2, false}}, 1.0},
  };
  for (const auto& c : cases) {
    const FermionOperator op = FermionOperator::term(c.ops, c.coeff);
    const Eigen::MatrixXcd got = vqx::jordan_wigner(op, n).to_matrix();
    const Eigen::MatrixXcd want =
        to_qubit_order(many_body_matrix(op, n), n);
    CHECK(max_abs_diff(got, want) < 1e-13);
  }
}

TEST_CASE("bravyi-kitaev preserves spectra and anticommutation") {
  const int n = 4;
  // Hermitian mix of number, hopping and pair terms.
  FermionOperator h;
  h.add_term({{0, true}, {0, false}}, 0.7);
  h.add_term({{3, true}, {3, false}}, -1.2);
  h.add_term({{0, true}, {2, false}}, 0.4);
  h.add_term({{2, true}, {0, false}}, 0.4);
  h.add_term({{1, true}, {2, true}, {2, false}, {1, false}}, 0.9);
  h.add_term({{0, true}, {1, true}, {3, false}, {2, false}}, 0.25);
  h.add_term({{2, true}, {3, true}, {1, false}, {0, false}}, 0.25);

  const auto jw = testsupport::sorted_eigenvalues(
      vqx::jordan_wigner(h, n).to_matrix());
  const auto bk = testsupport::sorted_eigenvalues(
      vqx::bravyi_kitaev(h, n).to_matrix());
  REQUIRE(jw.size() == bk.size());
  for (size_t i = 0; i < jw.size(); ++i)
    CHECK(jw[i] == doctest::Approx(bk[i]).epsilon(1e-12));

  // {a_p, a_q^+} = delta_pq survives the encoding.
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const auto ap =
          vqx::bravyi_kitaev(FermionOperator::term({{p, false}}, 1.0), n)
              .to_matrix();
      const auto aqd =
          vqx::bravyi_kitaev(FermionOperator::term({{q, true}}, 1.0), n)
              .to_matrix();
      const Eigen::MatrixXcd anti = ap * aqd + aqd * ap;
      Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(16, 16);
      if (p == q) want = Eigen::MatrixXcd::Identity(16, 16);
      CHECK(max_abs_diff(anti, want) < 1e-13);
    }
  }
  CHECK_THROWS_AS(vqx::bravyi_kitaev(h, 6), std::invalid_argument);
}

TEST_CASE("normal ordering expands anticommutators and kills nilpotents") {
  // a0 a0^+ = 1 - a0^+ a0.
  const FermionOperator raw =
      FermionOperator::term({{0, false}, {0, true}}, 1.0);
  const Eigen::MatrixXcd direct = many_body_matrix(raw, 2);
  const Eigen::MatrixXcd ordered = many_body_matrix(raw.normal_ordered(), 2);
  CHECK(max_abs_diff(direct, ordered) < 1e-14);

  const FermionOperator doubled =
      FermionOperator::term({{1, true}, {1, true}}, 3.0);
  CHECK(doubled.normal_ordered().terms().empty());

  // Random product: ordering must not change the operator.
  const FermionOperator mixed = FermionOperator::term(
      {{1, false}, {0, true}, {1, true}, {0, false}}, cdouble(0.5, 1.0));
  CHECK(max_abs_diff(many_body_matrix(mixed, 2),
                     many_body_matrix(mixed.normal_ordered(), 2)) < 1e-13);
}

TEST_CASE("adjoint of a fermion operator matches the matrix adjoint") {
  FermionOperator op;
  op.add_term({{0, true}, {2, false}}, cdouble(0.3, -0.8));
  op.add_term({{1, true}}, 2.0);
  const Eigen::MatrixXcd m = many_body_matrix(op, 3);
  const Eigen::MatrixXcd madj = many_body_matrix(op.adjoint(), 3);
  CHECK(max_abs_diff(madj, m.adjoint()) < 1e-14);
}

TEST_CASE("encoded occupation kets diagonalize the encoded number operators") {
  const std::vector<std::vector<int>> occs = {
      {1, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 0}};
  for (Encoding e : {Encoding::jordan_wigner, Encoding::bravyi_kitaev}) {
    for (const auto& occ : occs) {
      const StateVector ket =
          StateVector::basis_state(vqx::encode_occupation(occ, e));
      for (int p = 0; p < 4; ++p) {
        const PauliSum np = vqx::encode(
            FermionOperator::term({{p, true}, {p, false}}, 1.0), 4, e);
        CHECK(ket.expectation(np) == doctest::Approx(occ[p]).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(vqx::encode_occupation({1, 2, 0, 0}, Encoding::jordan_wigner),
                  std::invalid_argument);
}

TEST_CASE("bravyi-kitaev occupation labels store parity partial sums") {
  using vqx::encode_occupation;
  const Encoding bk = Encoding::bravyi_kitaev;
  CHECK(encode_occupation({1, 1, 0, 0}, bk) == "1000");
  CHECK(encode_occupation({0, 1, 1, 0}, bk) == "0110");
  CHECK(encode_occupation({1, 0, 0, 1}, bk) == "1100");
  CHECK(encode_occupation({0, 0, 1, 1}, bk) == "0010");
  CHECK(encode_occupation({1, 1, 0, 0}, Encoding::jordan_wigner) == "1100");
}

TEST_CASE("spin observables have the right spectra and all commute") {
  for (Encoding e : {Encoding::jordan_wigner, Encoding::bravyi_kitaev}) {
    const vqx::SpinObservables obs = vqx::build_observables(2, e);
    const auto evs_contain = [](const std::vector<double>& evs,
                                std::vector<double> expect) {
      for (double x : evs) {
        bool found = false;
        for (double w : expect)
          if (std::abs(x - w) < 1e-9) found = true;
        if (!found) return false;
      }
      return true;
    };
    CHECK(evs_contain(testsupport::sorted_eigenvalues(obs.number.to_matrix()),
                      {0, 1, 2, 3, 4}));
    CHECK(evs_contain(testsupport::sorted_eigenvalues(obs.sz.to_matrix()),
                      {-1, -0.5, 0, 0.5, 1}));
    CHECK(evs_contain(testsupport::sorted_eigenvalues(obs.s_squared.to_matrix()),
                      {0, 0.75, 2}));
    CHECK(vqx::commutator_norm(obs.number, obs.sz) < 1e-12);
    CHECK(vqx::commutator_norm(obs.number, obs.s_squared) < 1e-12);
    CHECK(vqx::commutator_norm(obs.sz, obs.s_squared) < 1e-12);
  }
  CHECK_THROWS_AS(vqx::build_observables(0, Encoding::jordan_wigner),
                  std::invalid_argument);
}

TEST_CASE("closed-shell and one-electron kets carry sharp spin labels") {
  for (Encoding e : {Encoding::jordan_wigner, Encoding::bravyi_kitaev}) {
    const vqx::SpinObservables obs = vqx::build_observables(2, e);
    const StateVector closed =
        StateVector::basis_state(vqx::encode_occupation({1, 1, 0, 0}, e));
    CHECK(closed.expectation(obs.number) == doctest::Approx(2.0));
    CHECK(closed.expectation(obs.sz) == doctest::Approx(0.0));
    CHECK(closed.expectation(obs.s_squared) ==
          doctest::Approx(0.0).epsilon(1e-10));

    const StateVector single =
        StateVector::basis_state(vqx::encode_occupation({1, 0, 0, 0}, e));
    CHECK(single.expectation(obs.number) == doctest::Approx(1.0));
    CHECK(single.expectation(obs.sz) == doctest::Approx(0.5));
    CHECK(single.expectation(obs.s_squared) == doctest::Approx(0.75));
  }
}
