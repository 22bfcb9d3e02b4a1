// Occupation-number-basis many-body matrices built directly from dense
// ladder-operator matrices, bypassing the qubit encodings entirely. Basis
// index bit q (least significant = mode 0) is the occupation of mode q.
#pragma once

#include <Eigen/Dense>

#include "vqx/fermion.hpp"
#include "vqx/molecule.hpp"

namespace testsupport {

Eigen::MatrixXcd ladder_matrix(int n_modes, int mode, bool creation);

Eigen::MatrixXcd many_body_matrix(const vqx::FermionOperator& op, int n_modes);

// e_nuc + sum h_pq a^+_p a_q + 1/4 sum <pq||rs> a^+_p a^+_q a_s a_r of a
// spin-orbital problem in the antisymmetrized physicists' convention.
Eigen::MatrixXcd many_body_matrix(const vqx::MolecularProblem& spin);

}  // namespace testsupport
