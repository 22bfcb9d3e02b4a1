#include "vqx/ansatz.hpp"

#include <cmath>
#include <stdexcept>

namespace vqx {
namespace {

int spin_z2(int mode) { return mode % 2; }  // 0 = up, 1 = down

FermionOperator excitation_operator(const Excitation& x) {
  std::vector<LadderOp> ops;
  for (auto it = x.to.rbegin(); it != x.to.rend(); ++it)
    ops.push_back({*it, true});
  for (int m : x.from) ops.push_back({m, false});
  return FermionOperator::term(std::move(ops), 1.0);
}

bool same_up_to_sign(const PauliSum& a, const PauliSum& b, double tol) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.size() != tb.size()) return false;
  for (int sign = 0; sign < 2; ++sign) {
    bool ok = true;
    for (const auto& [axes, coeff] : ta) {
      auto it = tb.find(axes);
      if (it == tb.end() ||
          std::abs(coeff - (sign ? -it->second : it->second)) > tol) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::vector<Excitation> uccsd_excitations(const std::vector<int>& occupation) {
  std::vector<int> occ, virt;
  for (size_t m = 0; m < occupation.size(); ++m) {
    if (occupation[m] != 0 && occupation[m] != 1)
      throw std::invalid_argument("occupation entries must be 0 or 1");
    (occupation[m] ? occ : virt).push_back(int(m));
  }
  if (occ.empty() || virt.empty())
    throw std::invalid_argument(
        "occupation must leave at least one occupied and one virtual orbital");

  std::vector<Excitation> out;
  for (int j : occ)
    for (int k : virt)
      if (spin_z2(j) == spin_z2(k)) out.push_back({{j}, {k}});
  for (size_t a = 0; a < occ.size(); ++a)
    for (size_t b = a + 1; b < occ.size(); ++b)
      for (size_t c = 0; c < virt.size(); ++c)
        for (size_t d = c + 1; d < virt.size(); ++d) {
          int sz_from = spin_z2(occ[a]) + spin_z2(occ[b]);
          int sz_to = spin_z2(virt[c]) + spin_z2(virt[d]);
          if (sz_from == sz_to)
            out.push_back({{occ[a], occ[b]}, {virt[c], virt[d]}});
        }
  return out;
}

std::vector<PauliSum> uccsd_generators(const std::vector<int>& occupation,
                                       Encoding e) {
  int n_modes = int(occupation.size());
  std::vector<PauliSum> out;
  for (const auto& x : uccsd_excitations(occupation)) {
    FermionOperator t = excitation_operator(x);
    FermionOperator minus_tdag = t.adjoint();
    minus_tdag *= -1.0;
    FermionOperator g = t + minus_tdag;
    PauliSum p = encode(g, n_modes, e);
    p.simplify();
    if (!p.is_anti_hermitian())
      throw std::logic_error("excitation generator is not anti-Hermitian");
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<PauliSum> merge_generators(
    const std::vector<std::vector<PauliSum>>& per_state) {
  std::vector<PauliSum> out;
  for (const auto& list : per_state)
    for (const auto& g : list) {
      bool duplicate = false;
      for (const auto& kept : out)
        if (same_up_to_sign(g, kept, 1e-10)) {
          duplicate = true;
          break;
        }
      if (!duplicate) out.push_back(g);
    }
  return out;
}

void apply_ansatz(StateVector& psi, const std::vector<PauliSum>& generators,
                  const std::vector<double>& theta, int trotter_depth) {
  if (theta.size() != generators.size())
    throw std::invalid_argument("parameter count does not match generators");
  if (trotter_depth < 1)
    throw std::invalid_argument("trotter depth must be at least 1");
  for (int rep = 0; rep < trotter_depth; ++rep)
    for (size_t k = 0; k < generators.size(); ++k) {
      double step = theta[k] / trotter_depth;
      for (const auto& [axes, coeff] : generators[k].terms()) {
        // exp(step * i g P) with coeff = i g; the primitive applies
        // exp(-i angle P), so angle = -step * g.
        psi.apply_pauli_exponential(PauliTerm{axes, 1.0}, -step * coeff.imag());
      }
    }
}

}  // namespace vqx
