// Dense exact diagonalization of the qubit Hamiltonian with symmetry
// labeling, used as the reference for every accuracy figure.
#pragma once

#include <string>
#include <vector>

#include "vqx/fermion.hpp"
#include "vqx/pauli.hpp"

namespace vqx {

struct SpectrumLevel {
  double energy = 0.0;
  double n_particles = 0.0;   // <N>
  double sz = 0.0;            // <Sz>
  double s_squared = 0.0;     // <S^2>
  Eigen::VectorXcd state;
};

struct Spectrum {
  std::vector<SpectrumLevel> levels;  // ascending energy

  // Lowest level whose (N, Sz, S^2) match within tol, skipping `rank`
  // earlier matches. Returns -1 if absent.
  int find_level(double n, double sz, double s2, int rank = 0,
                 double tol = 1e-4) const;
};

// Full diagonalization; degenerate groups (within degeneracy_tol) are
// rotated so N, Sz and S^2 are simultaneously sharp, then ordered by
// ascending <S^2> and <Sz> inside each group.
Spectrum fci_spectrum(const PauliSum& hamiltonian, const SpinObservables& obs,
                      double degeneracy_tol = 1e-9);

// log10 |e - e_ref|, clamped below at -12.
double accuracy_log10(double e, double e_ref);

}  // namespace vqx
