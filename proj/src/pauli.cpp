#include "vqx/pauli.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vqx {

namespace {

bool valid_axis(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

void check_axes(const std::string& axes) {
  for (char c : axes) {
    if (!valid_axis(c)) {
      throw std::invalid_argument("invalid Pauli axis character '" +
                                  std::string(1, c) + "' (want I/X/Y/Z)");
    }
  }
}

// Single-qubit product a*b -> (axis, phase), phase in {1, i, -1, -i}.
void axis_product(char a, char b, char& axis, cdouble& phase) {
  if (a == 'I') { axis = b; phase = 1.0; return; }
  if (b == 'I') { axis = a; phase = 1.0; return; }
  if (a == b) { axis = 'I'; phase = 1.0; return; }
  const cdouble i(0.0, 1.0);
  // Cyclic XY=iZ, YZ=iX, ZX=iY; reversed order picks up the minus sign.
  auto cyc = [](char p, char q) {
    return (p == 'X' && q == 'Y') || (p == 'Y' && q == 'Z') ||
           (p == 'Z' && q == 'X');
  };
  char third = 'I';
  for (char c : {'X', 'Y', 'Z'}) {
    if (c != a && c != b) third = c;
  }
  axis = third;
  phase = cyc(a, b) ? i : -i;
}

Eigen::Matrix2cd axis_matrix(char a) {
  const cdouble i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (a) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    default:  m << 1, 0, 0, -1; break;
  }
  return m;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.17g", v);
  return buf;
}

}  // namespace

PauliTerm::PauliTerm(std::string axes, cdouble coeff)
    : axes_(std::move(axes)), coeff_(coeff) {
  check_axes(axes_);
}

bool PauliTerm::identity_axes() const {
  return axes_.find_first_not_of('I') == std::string::npos;
}

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("Pauli term size mismatch in multiply");
  }
  std::string axes(a.axes().size(), 'I');
  cdouble coeff = a.coeff() * b.coeff();
  for (std::size_t q = 0; q < axes.size(); ++q) {
    char ax;
    cdouble phase;
    axis_product(a.axes()[q], b.axes()[q], ax, phase);
    axes[q] = ax;
    coeff *= phase;
  }
  return PauliTerm(std::move(axes), coeff);
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0) throw std::invalid_argument("negative qubit count");
}

PauliSum PauliSum::identity(int n_qubits, cdouble coeff) {
  PauliSum s(n_qubits);
  s.add(std::string(static_cast<std::size_t>(n_qubits), 'I'), coeff);
  return s;
}

cdouble PauliSum::coefficient(const std::string& axes) const {
  auto it = terms_.find(axes);
  return it == terms_.end() ? cdouble(0.0) : it->second;
}

void PauliSum::add(const std::string& axes, cdouble coeff) {
  if (static_cast<int>(axes.size()) != n_qubits_) {
    throw std::invalid_argument("axes length does not match qubit count");
  }
  check_axes(axes);
  terms_[axes] += coeff;
}

void PauliSum::add(const PauliTerm& term) { add(term.axes(), term.coeff()); }

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("qubit count mismatch in sum");
  }
  for (const auto& [axes, c] : other.terms_) terms_[axes] += c;
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("qubit count mismatch in sum");
  }
  for (const auto& [axes, c] : other.terms_) terms_[axes] -= c;
  return *this;
}

PauliSum& PauliSum::operator*=(cdouble scale) {
  for (auto& [axes, c] : terms_) c *= scale;
  return *this;
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  if (other.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("qubit count mismatch in product");
  }
  PauliSum out(n_qubits_);
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : other.terms_) {
      out.add(multiply(PauliTerm(ka, ca), PauliTerm(kb, cb)));
    }
  }
  out.simplify();
  return out;
}

void PauliSum::simplify() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= kCoeffPruneTol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [axes, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

bool PauliSum::is_anti_hermitian(double tol) const {
  for (const auto& [axes, c] : terms_) {
    if (std::abs(c.real()) > tol) return false;
  }
  return true;
}

Eigen::MatrixXcd PauliSum::to_matrix() const {
  if (n_qubits_ > 12) {
    throw std::invalid_argument("to_matrix guarded at n <= 12 qubits");
  }
  const Eigen::Index dim = Eigen::Index(1) << n_qubits_;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [axes, c] : terms_) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Constant(1, 1, c);
    for (char a : axes) {
      Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
      const Eigen::Matrix2cd p = axis_matrix(a);
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          next.block(i * 2, j * 2, 2, 2) = m(i, j) * p;
        }
      }
      m = std::move(next);
    }
    out += m;
  }
  return out;
}

std::string PauliSum::to_text() const {
  std::ostringstream os;
  for (const auto& [axes, c] : terms_) {
    if (c.imag() == 0.0) {
      os << format_real(c.real());
    } else {
      os << '(' << format_real(c.real()) << ',' << format_real(c.imag()) << ')';
    }
    for (std::size_t q = 0; q < axes.size(); ++q) {
      if (axes[q] != 'I') os << ' ' << axes[q] << q;
    }
    os << '\n';
  }
  return os.str();
}

PauliSum PauliSum::from_text(const std::string& text, int n_qubits) {
  PauliSum out(n_qubits);
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    cdouble coeff;
    if (tok.front() == '(') {
      std::istringstream cs(tok);
      if (!(cs >> coeff)) {
        throw std::invalid_argument("bad coefficient at line " +
                                    std::to_string(line_no));
      }
    } else {
      try {
        coeff = std::stod(tok);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad coefficient at line " +
                                    std::to_string(line_no));
      }
    }
    std::string axes(static_cast<std::size_t>(n_qubits), 'I');
    while (ls >> tok) {
      if (tok.size() < 2 || !valid_axis(tok[0])) {
        throw std::invalid_argument("bad axis token '" + tok + "' at line " +
                                    std::to_string(line_no));
      }
      int q = std::stoi(tok.substr(1));
      if (q < 0 || q >= n_qubits) {
        throw std::invalid_argument("qubit index out of range at line " +
                                    std::to_string(line_no));
      }
      axes[static_cast<std::size_t>(q)] = tok[0];
    }
    out.add(axes, coeff);
  }
  return out;
}

double commutator_norm(const PauliSum& a, const PauliSum& b) {
  PauliSum c = a * b - b * a;
  c.simplify();
  double norm = 0.0;
  for (const auto& [axes, coeff] : c.terms()) norm += std::abs(coeff);
  return norm;
}

}  // namespace vqx
