// Second-quantized operator algebra on spin orbitals plus the Jordan-Wigner
// and Bravyi-Kitaev maps to Pauli sums, and the N / Sz / S^2 observables.
//
// Spin orbitals interleave as 0-up, 0-down, 1-up, 1-down; mode p belongs to
// spatial orbital p/2 with spin up when p is even.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vqx/pauli.hpp"

namespace vqx {

enum class Encoding { jordan_wigner, bravyi_kitaev };

Encoding encoding_from_string(const std::string& name);
std::string to_string(Encoding e);

struct LadderOp {
  int mode = 0;
  bool creation = false;
};

struct FermionTerm {
  std::vector<LadderOp> ops;  // applied right-to-left, like operator products
  cdouble coeff;
};

class FermionOperator {
 public:
  FermionOperator() = default;

  static FermionOperator identity(cdouble coeff = 1.0);
  // Convenience: coeff * prod of the listed ladder operators.
  static FermionOperator term(std::vector<LadderOp> ops, cdouble coeff);

  const std::vector<FermionTerm>& terms() const { return terms_; }
  void add_term(std::vector<LadderOp> ops, cdouble coeff);

  FermionOperator adjoint() const;
  FermionOperator operator*(const FermionOperator& other) const;
  FermionOperator& operator+=(const FermionOperator& other);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) {
    return a += b;
  }
  FermionOperator& operator*=(cdouble scale);

  // Canonical form: creations first (modes ascending), then annihilations
  // (modes descending), with anticommutator delta terms expanded and
  // like terms merged. Nilpotent repetitions vanish.
  FermionOperator normal_ordered() const;

  int max_mode() const;  // -1 when empty

 private:
  std::vector<FermionTerm> terms_;
};

PauliSum jordan_wigner(const FermionOperator& op, int n_modes);
// Bravyi-Kitaev via the update / parity / flip sets of the binary indexing
// tree; n_modes must be a power of two.
PauliSum bravyi_kitaev(const FermionOperator& op, int n_modes);
PauliSum encode(const FermionOperator& op, int n_modes, Encoding e);

// Basis label ("1100"-style) of the computational ket that represents the
// given occupation-number vector under the encoding.
std::string encode_occupation(const std::vector<int>& occupation, Encoding e);

struct SpinObservables {
  PauliSum number;     // N
  PauliSum sz;         // S_z
  PauliSum s_squared;  // S^2 = S- S+ + S_z (S_z + 1)
};

SpinObservables build_observables(int n_spatial, Encoding e);

}  // namespace vqx
