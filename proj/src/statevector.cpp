#include "vqx/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace vqx {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 24) {
    throw std::invalid_argument("qubit count out of range");
  }
  amps_.assign(std::size_t(1) << n_qubits, 0.0);
  amps_[0] = 1.0;
}

StateVector StateVector::basis_state(const std::string& label) {
  StateVector s(static_cast<int>(label.size()));
  std::size_t index = 0;
  for (char c : label) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("basis label must be 0/1 characters");
    }
    index = (index << 1) | std::size_t(c - '0');
  }
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

void StateVector::apply_single(int qubit, const cdouble m[2][2]) {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw std::invalid_argument("qubit index out of range");
  }
  const std::size_t stride = std::size_t(1) << (n_qubits_ - 1 - qubit);
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t k = 0; k < stride; ++k) {
      const std::size_t i0 = base + k;
      const std::size_t i1 = i0 + stride;
      const cdouble a0 = amps_[i0], a1 = amps_[i1];
      amps_[i0] = m[0][0] * a0 + m[0][1] * a1;
      amps_[i1] = m[1][0] * a0 + m[1][1] * a1;
    }
  }
}

void StateVector::apply_h(int qubit) {
  const double s = 1.0 / std::sqrt(2.0);
  const cdouble m[2][2] = {{s, s}, {s, -s}};
  apply_single(qubit, m);
}

void StateVector::apply_rx(int qubit, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const cdouble i(0.0, 1.0);
  const cdouble m[2][2] = {{c, -i * s}, {-i * s, c}};
  apply_single(qubit, m);
}

void StateVector::apply_ry(int qubit, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const cdouble m[2][2] = {{c, -s}, {s, c}};
  apply_single(qubit, m);
}

void StateVector::apply_rz(int qubit, double angle) {
  const cdouble i(0.0, 1.0);
  const cdouble m[2][2] = {{std::exp(-i * (angle / 2)), 0.0},
                           {0.0, std::exp(i * (angle / 2))}};
  apply_single(qubit, m);
}

void StateVector::apply_cnot(int control, int target) {
  if (control == target || control < 0 || target < 0 ||
      control >= n_qubits_ || target >= n_qubits_) {
    throw std::invalid_argument("bad CNOT qubit indices");
  }
  const std::size_t cbit = std::size_t(1) << (n_qubits_ - 1 - control);
  const std::size_t tbit = std::size_t(1) << (n_qubits_ - 1 - target);
  const std::size_t dim = amps_.size();
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if ((idx & cbit) && !(idx & tbit)) {
      std::swap(amps_[idx], amps_[idx | tbit]);
    }
  }
}

void StateVector::apply_pauli_exponential(const PauliTerm& p, double theta) {
  if (p.n_qubits() != n_qubits_) {
    throw std::invalid_argument("Pauli string size mismatch");
  }
  std::vector<int> active;
  for (int q = 0; q < n_qubits_; ++q) {
    if (p.axes()[std::size_t(q)] != 'I') active.push_back(q);
  }
  if (active.empty()) {
    // Identity string: exp(-i theta) acts as a global phase.
    const cdouble phase = std::exp(cdouble(0.0, -theta));
    for (auto& a : amps_) a *= phase;
    return;
  }
  const double half_pi = std::acos(0.0);
  for (int q : active) {
    const char ax = p.axes()[std::size_t(q)];
    if (ax == 'X') apply_h(q);
    else if (ax == 'Y') apply_rx(q, half_pi);
  }
  for (std::size_t k = 0; k + 1 < active.size(); ++k) {
    apply_cnot(active[k], active[k + 1]);
  }
  apply_rz(active.back(), 2.0 * theta);
  for (std::size_t k = active.size() - 1; k-- > 0;) {
    apply_cnot(active[k], active[k + 1]);
  }
  for (int q : active) {
    const char ax = p.axes()[std::size_t(q)];
    if (ax == 'X') apply_h(q);
    else if (ax == 'Y') apply_rx(q, -half_pi);
  }
}

void StateVector::apply_pauli_term(const PauliTerm& p) {
  if (p.n_qubits() != n_qubits_) {
    throw std::invalid_argument("Pauli string size mismatch");
  }
  const cdouble i(0.0, 1.0);
  std::size_t flip = 0;
  for (int q = 0; q < n_qubits_; ++q) {
    const char ax = p.axes()[std::size_t(q)];
    if (ax == 'X' || ax == 'Y') flip |= std::size_t(1) << (n_qubits_ - 1 - q);
  }
  std::vector<cdouble> out(amps_.size(), 0.0);
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    cdouble phase = p.coeff();
    for (int q = 0; q < n_qubits_; ++q) {
      const char ax = p.axes()[std::size_t(q)];
      const bool bit = (idx >> (n_qubits_ - 1 - q)) & 1;
      if (ax == 'Z' && bit) phase = -phase;
      else if (ax == 'Y') phase *= bit ? -i : i;  // Y|b> = (-1)^b i |1-b>
    }
    out[idx ^ flip] += phase * amps_[idx];
  }
  amps_ = std::move(out);
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

double StateVector::expectation(const PauliSum& observable) const {
  if (observable.n_qubits() != n_qubits_) {
    throw std::invalid_argument("observable size mismatch");
  }
  if (!observable.is_hermitian()) {
    throw std::invalid_argument("expectation requires a Hermitian observable");
  }
  cdouble acc = 0.0;
  StateVector scratch(n_qubits_);
  for (const auto& [axes, c] : observable.terms()) {
    scratch.amps_ = amps_;
    scratch.apply_pauli_term(PauliTerm(axes, c));
    acc += overlap(scratch);
  }
  if (std::abs(acc.imag()) >= 1e-10) {
    throw std::runtime_error("expectation value has non-negligible imaginary part");
  }
  return acc.real();
}

cdouble StateVector::overlap(const StateVector& other) const {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("state size mismatch in overlap");
  }
  cdouble acc = 0.0;
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    acc += std::conj(amps_[idx]) * other.amps_[idx];
  }
  return acc;
}

}  // namespace vqx
