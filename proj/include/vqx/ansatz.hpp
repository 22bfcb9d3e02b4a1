// Unitary coupled-cluster singles/doubles generators built from a reference
// occupation, plus Trotterized application to a statevector.
#pragma once

#include <vector>

#include "vqx/fermion.hpp"
#include "vqx/pauli.hpp"
#include "vqx/statevector.hpp"

namespace vqx {

struct Excitation {
  std::vector<int> from;  // occupied modes, ascending
  std::vector<int> to;    // virtual modes, ascending
};

// Spin-preserving singles (same spin) then Sz-preserving doubles, each in
// lexicographic (from, to) order. occupation[mode] is 0 or 1; even modes
// are spin-up, odd are spin-down.
std::vector<Excitation> uccsd_excitations(const std::vector<int>& occupation);

// Anti-Hermitian encoded generators t - t^ for each excitation.
std::vector<PauliSum> uccsd_generators(const std::vector<int>& occupation,
                                       Encoding e);

// Union of per-state generator lists in order of first appearance;
// generators equal up to an overall sign are kept once.
std::vector<PauliSum> merge_generators(
    const std::vector<std::vector<PauliSum>>& per_state);

// psi <- [prod_k exp((theta_k / depth) G_k)]^depth applied Trotter-style:
// within each repetition the generators act in list order, and each
// generator's Pauli terms act in the sum's deterministic term order.
void apply_ansatz(StateVector& psi, const std::vector<PauliSum>& generators,
                  const std::vector<double>& theta, int trotter_depth);

}  // namespace vqx
