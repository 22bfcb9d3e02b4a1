// Variational cost functions: energy expectation plus optional constraint,
// tabu and overlap-deflation penalties, for single-state and
// weighted-multistate (shared-parameter) minimization.
#pragma once

#include <vector>

#include "vqx/ansatz.hpp"
#include "vqx/pauli.hpp"
#include "vqx/statevector.hpp"

namespace vqx {

struct PenaltySpec {
  std::vector<PauliSum> constraint_ops;
  std::vector<double> constraint_targets;
  double constraint_weight = 1.0;

  std::vector<PauliSum> tabu_ops;
  std::vector<double> tabu_centers;   // expectation values to steer away from
  double tabu_height = 100.0;
  double tabu_width = 100.0;
};

// Bond-length-aware variant of the overlap penalty: a logistic gate blends a
// flat wall into a polynomial well as the geometry passes a reference
// separation, so the penalty relaxes smoothly along a dissociation scan.
struct SmoothDeflationSpec {
  bool enabled = false;
  double a = 1.0;        // wall height on the short-separation side
  double b = 0.0;        // height on the far side; no canonical default
  double alpha = 100.0;  // logistic sharpness
  double r = 1.0;        // current separation
  double r_d = 1.0;      // crossover separation
  double e_p = 0.0;      // energy of the next-lower level at r
};

struct DeflationSpec {
  std::vector<StateVector> priors;
  std::vector<double> coefficients;   // one per prior state
  SmoothDeflationSpec smooth;         // replaces the plain penalty when enabled
};

// weight * sum_j |<U_j> - target_j|
double constraint_penalty(const StateVector& psi,
                          const std::vector<PauliSum>& ops,
                          const std::vector<double>& targets, double weight);

// sum_j height * exp(-width * (<U_j> - center_j)^2)
double tabu_penalty(const StateVector& psi, const std::vector<PauliSum>& ops,
                    const std::vector<double>& centers, double height,
                    double width);

// sum_j c_j |<prior_j|psi>|^2, or the smooth variant when d.smooth.enabled
double deflation_penalty(const StateVector& psi, const DeflationSpec& d);

// (a f + b (1 - f)) * sum_j [ g x_j + (1 - g) p(x_j) ] with x_j the squared
// overlap against prior j, f = 1/(exp(alpha (r - r_d)) + 1),
// g = 1/(exp(r - r_d/4) + 1), and p a quadratic-plus-linear well in x scaled
// by (r/r_d)^4 * e_p/4.
double smooth_deflation_term(const StateVector& psi,
                             const std::vector<StateVector>& priors,
                             const SmoothDeflationSpec& s);

// Certified bound on the largest eigenvalue: identity coefficient plus the
// absolute sum of the remaining coefficients.
double hamiltonian_upper_bound(const PauliSum& h);

struct ObjectiveBreakdown {
  double energy = 0.0;
  double constraint = 0.0;
  double tabu = 0.0;
  double deflation = 0.0;
  double total = 0.0;
};

class VqeObjective {
 public:
  VqeObjective(PauliSum hamiltonian, StateVector reference,
               std::vector<PauliSum> generators, int trotter_depth,
               PenaltySpec penalties, DeflationSpec deflation);

  size_t parameter_count() const { return generators_.size(); }
  StateVector prepare(const std::vector<double>& theta) const;
  double operator()(const std::vector<double>& theta) const;
  const ObjectiveBreakdown& last_breakdown() const { return last_; }

 private:
  PauliSum hamiltonian_;
  StateVector reference_;
  std::vector<PauliSum> generators_;
  int trotter_depth_;
  PenaltySpec penalties_;
  DeflationSpec deflation_;
  mutable ObjectiveBreakdown last_;
};

// Weighted sum over states sharing one parameterized circuit; each state has
// its own penalty settings, deflation priors apply to every state.
class SsvqeObjective {
 public:
  SsvqeObjective(PauliSum hamiltonian, std::vector<StateVector> references,
                 std::vector<double> weights, std::vector<PauliSum> generators,
                 int trotter_depth, std::vector<PenaltySpec> penalties,
                 DeflationSpec deflation);

  size_t parameter_count() const { return generators_.size(); }
  size_t state_count() const { return references_.size(); }
  StateVector prepare(size_t state, const std::vector<double>& theta) const;
  double operator()(const std::vector<double>& theta) const;
  const std::vector<ObjectiveBreakdown>& last_breakdowns() const {
    return last_;
  }

 private:
  PauliSum hamiltonian_;
  std::vector<StateVector> references_;
  std::vector<double> weights_;
  std::vector<PauliSum> generators_;
  int trotter_depth_;
  std::vector<PenaltySpec> penalties_;
  DeflationSpec deflation_;
  mutable std::vector<ObjectiveBreakdown> last_;
};

}  // namespace vqx
