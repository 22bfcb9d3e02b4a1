// STO-3G integrals for H/He s-type Gaussians, restricted SCF reference
// orbitals, spin-orbital integral transforms, and FCIDUMP I/O.
#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqx/fermion.hpp"

namespace vqx {

inline constexpr double kBohrPerAngstrom = 1.8897259886;

struct Atom {
  std::string element;                     // "H" or "He"
  std::array<double, 3> position;          // Bohr
};

struct Geometry {
  std::vector<Atom> atoms;
  int charge = 0;
  int multiplicity = 1;

  int electron_count() const;
  // Two atoms on the z axis separated by r (Angstrom): "H2" or "HeH".
  static Geometry diatomic(const std::string& molecule, double r_angstrom);
  static Geometry from_json_text(const std::string& text);
};

// Contracted s-type Gaussian: primitive exponents with contraction weights
// that include the primitive normalization factors.
struct ContractedGaussian {
  std::array<double, 3> center;            // Bohr
  std::vector<double> exponents;
  std::vector<double> weights;
};

ContractedGaussian sto3g_orbital(const std::string& element,
                                 const std::array<double, 3>& center);

struct AoIntegrals {
  Eigen::MatrixXd s, t, v;                 // overlap, kinetic, nuclear attraction
  std::vector<double> eri;                 // chemists' (ij|kl), dense
  double e_nuc = 0.0;
  int n_orbitals = 0;

  double eri_at(int i, int j, int k, int l) const;
  double& eri_at(int i, int j, int k, int l);
};

double boys_f0(double x);
AoIntegrals ao_integrals(const Geometry& geometry);

struct ScfResult {
  Eigen::MatrixXd coefficients;            // columns = orbitals, S-orthonormal
  Eigen::VectorXd orbital_energies;        // ascending
  double total_energy = 0.0;               // electronic + nuclear
  int iterations = 0;
  std::vector<double> energy_history;      // total energy per iteration
};

// H2 (even electron count): restricted Hartree-Fock, converged on a density
// change below 1e-10 within 200 iterations. Odd electron counts (HeH
// radical): core-Hamiltonian orbitals in the Loewdin-orthogonalized basis.
ScfResult reference_orbitals(const Geometry& geometry, const AoIntegrals& ao);

struct MolecularProblem {
  enum class Convention { spatial_chemist, spin_physicist_antisym };

  Convention convention = Convention::spatial_chemist;
  Eigen::MatrixXd h;                       // one-electron integrals
  std::vector<double> eri;                 // layout depends on convention
  double e_nuc = 0.0;
  int n_electrons = 0;
  int n_orbitals = 0;                      // spatial count for chemist form
  int n_spin_orbitals = 0;
  std::string orbital_order = "interleaved 0u 0d 1u 1d";

  double eri_at(int i, int j, int k, int l) const;
  double& eri_at(int i, int j, int k, int l);
};

// Transform AO integrals into the molecular-orbital basis given by the
// reference orbitals; spatial chemists' convention.
MolecularProblem mo_problem(const AoIntegrals& ao, const Eigen::MatrixXd& c,
                            int n_electrons);

// Expand a spatial chemists'-convention problem over interleaved spin
// orbitals with antisymmetrized physicists' two-electron integrals
// <pq||rs> = <pq|rs> - <pq|sr>.
MolecularProblem to_spin_orbital(const MolecularProblem& spatial);

// H = sum h_pq p^ q + 1/4 sum <pq||rs> p^ q^ s r + e_nuc.
FermionOperator molecular_hamiltonian(const MolecularProblem& spin_orbital);

// Full pipeline: geometry -> integrals -> reference orbitals -> encoded
// qubit Hamiltonian over 2 * n_orbitals spin orbitals.
PauliSum qubit_hamiltonian(const Geometry& geometry, Encoding e);

MolecularProblem load_fcidump(const std::string& path);
void write_fcidump(const MolecularProblem& spatial, const std::string& path);

}  // namespace vqx
