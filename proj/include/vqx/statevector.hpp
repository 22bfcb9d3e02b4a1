// Dense statevector simulator over the gate set {H, Rx, Ry, Rz, CNOT} with
// the Pauli-exponential ladder used by the ansatz circuits.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vqx/pauli.hpp"

namespace vqx {

// Basis-label convention: bit 0 of a label like "1100" is the leftmost
// character and addresses the most significant bit of the amplitude index,
// so basis_state("1000") has amplitude 1 at index 8 on four qubits.
class StateVector {
 public:
  explicit StateVector(int n_qubits);                 // |00...0>
  static StateVector basis_state(const std::string& label);

  int n_qubits() const { return n_qubits_; }
  const std::vector<cdouble>& amplitudes() const { return amps_; }
  std::vector<cdouble>& amplitudes() { return amps_; }

  void apply_h(int qubit);
  void apply_rx(int qubit, double angle);   // exp(-i angle X / 2)
  void apply_ry(int qubit, double angle);   // exp(-i angle Y / 2)
  void apply_rz(int qubit, double angle);   // exp(-i angle Z / 2)
  void apply_cnot(int control, int target);

  // exp(-i theta P) for the bare string of p (its coefficient is ignored),
  // realized as basis changes + CNOT parity ladder + Rz(2 theta). An
  // all-identity string applies the global phase exp(-i theta).
  void apply_pauli_exponential(const PauliTerm& p, double theta);

  // In-place |s> -> P|s> for a single weighted string (coefficient applied).
  void apply_pauli_term(const PauliTerm& p);

  double norm() const;
  // <s|O|s> for a Hermitian-flagged observable; throws otherwise. The
  // residual imaginary part must stay below 1e-10 and is discarded.
  double expectation(const PauliSum& observable) const;
  cdouble overlap(const StateVector& other) const;    // <this|other>

 private:
  void apply_single(int qubit, const cdouble m[2][2]);

  int n_qubits_;
  std::vector<cdouble> amps_;
};

}  // namespace vqx
