#include "vqx/objective.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace vqx {
namespace {

ObjectiveBreakdown evaluate_state(const PauliSum& h, const StateVector& psi,
                                  const PenaltySpec& pen,
                                  const DeflationSpec& defl) {
  ObjectiveBreakdown b;
  b.energy = psi.expectation(h);
  b.constraint = constraint_penalty(psi, pen.constraint_ops,
                                    pen.constraint_targets,
                                    pen.constraint_weight);
  b.tabu = tabu_penalty(psi, pen.tabu_ops, pen.tabu_centers, pen.tabu_height,
                        pen.tabu_width);
  b.deflation = deflation_penalty(psi, defl);
  b.total = b.energy + b.constraint + b.tabu + b.deflation;
  return b;
}

}  // namespace

double constraint_penalty(const StateVector& psi,
                          const std::vector<PauliSum>& ops,
                          const std::vector<double>& targets, double weight) {
  if (ops.size() != targets.size())
    throw std::invalid_argument("constraint ops/targets size mismatch");
  double sum = 0.0;
  for (size_t j = 0; j < ops.size(); ++j)
    sum += std::abs(psi.expectation(ops[j]) - targets[j]);
  return weight * sum;
}

double tabu_penalty(const StateVector& psi, const std::vector<PauliSum>& ops,
                    const std::vector<double>& centers, double height,
                    double width) {
  if (ops.size() != centers.size())
    throw std::invalid_argument("tabu ops/centers size mismatch");
  double sum = 0.0;
  for (size_t j = 0; j < ops.size(); ++j) {
    double d = psi.expectation(ops[j]) - centers[j];
    sum += height * std::exp(-width * d * d);
  }
  return sum;
}

double deflation_penalty(const StateVector& psi, const DeflationSpec& d) {
  if (d.smooth.enabled) return smooth_deflation_term(psi, d.priors, d.smooth);
  if (d.priors.size() != d.coefficients.size())
    throw std::invalid_argument("deflation priors/coefficients size mismatch");
  double sum = 0.0;
  for (size_t j = 0; j < d.priors.size(); ++j)
    sum += d.coefficients[j] * std::norm(d.priors[j].overlap(psi));
  return sum;
}

double smooth_deflation_term(const StateVector& psi,
                             const std::vector<StateVector>& priors,
                             const SmoothDeflationSpec& s) {
  if (s.r_d <= 0.0) throw std::invalid_argument("crossover separation must be positive");
  const double f = 1.0 / (std::exp(s.alpha * (s.r - s.r_d)) + 1.0);
  const double g = 1.0 / (std::exp(s.r - 0.25 * s.r_d) + 1.0);
  const double golden2 = 2.0 * (std::sqrt(5.0) + 1.0);
  const double scale = std::pow(s.r / s.r_d, 4.0) * s.e_p / 4.0;
  double sum = 0.0;
  for (const auto& prior : priors) {
    const double x = std::norm(prior.overlap(psi));
    const double well = (1.0 + golden2) * scale * x * x + golden2 * scale * x;
    sum += g * x + (1.0 - g) * well;
  }
  return (s.a * f + s.b * (1.0 - f)) * sum;
}

double hamiltonian_upper_bound(const PauliSum& h) {
  std::string id(size_t(h.n_qubits()), 'I');
  double bound = 0.0;
  for (const auto& [axes, coeff] : h.terms()) {
    if (axes == id)
      bound += coeff.real();
    else
      bound += std::abs(coeff);
  }
  return bound;
}

VqeObjective::VqeObjective(PauliSum hamiltonian, StateVector reference,
                           std::vector<PauliSum> generators, int trotter_depth,
                           PenaltySpec penalties, DeflationSpec deflation)
    : hamiltonian_(std::move(hamiltonian)),
      reference_(std::move(reference)),
      generators_(std::move(generators)),
      trotter_depth_(trotter_depth),
      penalties_(std::move(penalties)),
      deflation_(std::move(deflation)) {}

StateVector VqeObjective::prepare(const std::vector<double>& theta) const {
  StateVector psi = reference_;
  apply_ansatz(psi, generators_, theta, trotter_depth_);
  return psi;
}

double VqeObjective::operator()(const std::vector<double>& theta) const {
  last_ = evaluate_state(hamiltonian_, prepare(theta), penalties_, deflation_);
  return last_.total;
}

SsvqeObjective::SsvqeObjective(PauliSum hamiltonian,
                               std::vector<StateVector> references,
                               std::vector<double> weights,
                               std::vector<PauliSum> generators,
                               int trotter_depth,
                               std::vector<PenaltySpec> penalties,
                               DeflationSpec deflation)
    : hamiltonian_(std::move(hamiltonian)),
      references_(std::move(references)),
      weights_(std::move(weights)),
      generators_(std::move(generators)),
      trotter_depth_(trotter_depth),
      penalties_(std::move(penalties)),
      deflation_(std::move(deflation)) {
  if (references_.empty())
    throw std::invalid_argument("at least one reference state required");
  if (weights_.size() != references_.size())
    throw std::invalid_argument("weights/references size mismatch");
  if (penalties_.size() != references_.size())
    throw std::invalid_argument("penalties/references size mismatch");
  // Orthogonality of the outputs is inherited from the references through the
  // shared unitary, so non-orthogonal references break the method's guarantee.
  for (size_t i = 0; i < references_.size(); ++i)
    for (size_t j = i + 1; j < references_.size(); ++j)
      if (std::abs(references_[i].overlap(references_[j])) > 1e-10)
        throw std::invalid_argument("reference states must be orthogonal");
}

StateVector SsvqeObjective::prepare(size_t state,
                                    const std::vector<double>& theta) const {
  StateVector psi = references_.at(state);
  apply_ansatz(psi, generators_, theta, trotter_depth_);
  return psi;
}

// Weights multiply only the energies; constraint, tabu and deflation terms
// enter the sum once per state, unweighted.
double SsvqeObjective::operator()(const std::vector<double>& theta) const {
  last_.clear();
  double total = 0.0;
  for (size_t i = 0; i < references_.size(); ++i) {
    const auto& b = last_.emplace_back(evaluate_state(
        hamiltonian_, prepare(i, theta), penalties_[i], deflation_));
    total += weights_[i] * b.energy + b.constraint + b.tabu + b.deflation;
  }
  return total;
}

}  // namespace vqx
