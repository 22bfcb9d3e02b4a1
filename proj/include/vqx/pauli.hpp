// Sparse Pauli-string algebra: weighted strings over {I,X,Y,Z} with complex
// coefficients, merged multiplication, text round-trip and dense realization.
#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vqx {

using cdouble = std::complex<double>;

// Coefficients with modulus at or below this are dropped by simplify().
inline constexpr double kCoeffPruneTol = 1e-12;

// One weighted Pauli string. axes holds one of 'I','X','Y','Z' per qubit;
// qubit 0 is the leftmost character (most significant bit of basis indices).
class PauliTerm {
 public:
  PauliTerm(std::string axes, cdouble coeff);

  const std::string& axes() const { return axes_; }
  cdouble coeff() const { return coeff_; }
  int n_qubits() const { return static_cast<int>(axes_.size()); }
  bool identity_axes() const;

 private:
  std::string axes_;
  cdouble coeff_;
};

// Product with the single-qubit multiplication table; phases tracked exactly.
PauliTerm multiply(const PauliTerm& a, const PauliTerm& b);

// Sum of Pauli terms keyed by axes string, so merging is a single map walk.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits);
  static PauliSum identity(int n_qubits, cdouble coeff = 1.0);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  const std::map<std::string, cdouble>& terms() const { return terms_; }
  cdouble coefficient(const std::string& axes) const;

  void add(const std::string& axes, cdouble coeff);
  void add(const PauliTerm& term);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cdouble scale);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cdouble s) { return a *= s; }
  friend PauliSum operator*(cdouble s, PauliSum a) { return a *= s; }
  PauliSum operator*(const PauliSum& other) const;

  // Drops |coeff| <= kCoeffPruneTol terms. Idempotent.
  void simplify();

  bool is_hermitian(double tol = kCoeffPruneTol) const;
  bool is_anti_hermitian(double tol = kCoeffPruneTol) const;

  // Dense matrix, qubit 0 as the leftmost Kronecker factor. Guarded n <= 12.
  Eigen::MatrixXcd to_matrix() const;

  // One term per line: coefficient then axis tokens like "X0 Z2" (identity
  // axes omitted). Coefficients print with 17 significant digits and
  // round-trip exactly; non-real coefficients use the "(re,im)" form.
  std::string to_text() const;
  static PauliSum from_text(const std::string& text, int n_qubits);

 private:
  int n_qubits_;
  std::map<std::string, cdouble> terms_;
};

// Sum of absolute coefficients of simplify(ab - ba); zero iff a and b commute.
double commutator_norm(const PauliSum& a, const PauliSum& b);

}  // namespace vqx
