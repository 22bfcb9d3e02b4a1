#include "vqx/fermion.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace vqx {

Encoding encoding_from_string(const std::string& name) {
  if (name == "jw" || name == "jordan_wigner") return Encoding::jordan_wigner;
  if (name == "bk" || name == "bravyi_kitaev") return Encoding::bravyi_kitaev;
  throw std::invalid_argument("unknown encoding '" + name + "' (want jw or bk)");
}

std::string to_string(Encoding e) {
  return e == Encoding::jordan_wigner ? "jw" : "bk";
}

FermionOperator FermionOperator::identity(cdouble coeff) {
  FermionOperator op;
  op.add_term({}, coeff);
  return op;
}

FermionOperator FermionOperator::term(std::vector<LadderOp> ops, cdouble coeff) {
  FermionOperator op;
  op.add_term(std::move(ops), coeff);
  return op;
}

void FermionOperator::add_term(std::vector<LadderOp> ops, cdouble coeff) {
  for (const auto& o : ops) {
    if (o.mode < 0) throw std::invalid_argument("negative mode index");
  }
  terms_.push_back({std::move(ops), coeff});
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  for (const auto& t : terms_) {
    std::vector<LadderOp> ops(t.ops.rbegin(), t.ops.rend());
    for (auto& o : ops) o.creation = !o.creation;
    out.add_term(std::move(ops), std::conj(t.coeff));
  }
  return out;
}

FermionOperator FermionOperator::operator*(const FermionOperator& other) const {
  FermionOperator out;
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      std::vector<LadderOp> ops = a.ops;
      ops.insert(ops.end(), b.ops.begin(), b.ops.end());
      out.add_term(std::move(ops), a.coeff * b.coeff);
    }
  }
  return out;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

FermionOperator& FermionOperator::operator*=(cdouble scale) {
  for (auto& t : terms_) t.coeff *= scale;
  return *this;
}

FermionOperator FermionOperator::normal_ordered() const {
  // Worklist of raw strings; reorder with a_p a_q^ = delta_pq - a_q^ a_p and
  // a_p a_q = -a_q a_p, merging coefficients keyed by the canonical string.
  std::map<std::vector<std::pair<int, bool>>, cdouble> merged;
  std::vector<FermionTerm> work(terms_.begin(), terms_.end());
  while (!work.empty()) {
    FermionTerm t = std::move(work.back());
    work.pop_back();
    if (std::abs(t.coeff) <= kCoeffPruneTol) continue;
    bool swapped = false;
    for (std::size_t k = 0; k + 1 < t.ops.size() && !swapped; ++k) {
      LadderOp& a = t.ops[k];
      LadderOp& b = t.ops[k + 1];
      const bool out_of_order =
          (!a.creation && b.creation) ||
          (a.creation == b.creation &&
           (a.creation ? a.mode > b.mode : a.mode < b.mode));
      if (!out_of_order) continue;
      swapped = true;
      if (a.creation == b.creation) {
        if (a.mode == b.mode) { t.coeff = 0.0; break; }  // nilpotent
        std::swap(a, b);
        t.coeff = -t.coeff;
        work.push_back(std::move(t));
      } else {
        // a annihilation, b creation
        if (a.mode == b.mode) {
          FermionTerm contracted;
          contracted.coeff = t.coeff;
          contracted.ops.assign(t.ops.begin(), t.ops.begin() + long(k));
          contracted.ops.insert(contracted.ops.end(),
                                t.ops.begin() + long(k) + 2, t.ops.end());
          work.push_back(std::move(contracted));
          std::swap(t.ops[k], t.ops[k + 1]);
          t.coeff = -t.coeff;
          work.push_back(std::move(t));
        } else {
          std::swap(a, b);
          t.coeff = -t.coeff;
          work.push_back(std::move(t));
        }
      }
    }
    if (!swapped && std::abs(t.coeff) > kCoeffPruneTol) {
      std::vector<std::pair<int, bool>> key;
      key.reserve(t.ops.size());
      bool dead = false;
      for (std::size_t k = 0; k < t.ops.size(); ++k) {
        if (k + 1 < t.ops.size() && t.ops[k].mode == t.ops[k + 1].mode &&
            t.ops[k].creation == t.ops[k + 1].creation) {
          dead = true;
          break;
        }
        key.emplace_back(t.ops[k].mode, t.ops[k].creation);
      }
      if (!dead) merged[key] += t.coeff;
    }
  }
  FermionOperator out;
  for (const auto& [key, coeff] : merged) {
    if (std::abs(coeff) <= kCoeffPruneTol) continue;
    std::vector<LadderOp> ops;
    ops.reserve(key.size());
    for (const auto& [mode, cr] : key) ops.push_back({mode, cr});
    out.add_term(std::move(ops), coeff);
  }
  return out;
}

int FermionOperator::max_mode() const {
  int m = -1;
  for (const auto& t : terms_) {
    for (const auto& o : t.ops) m = std::max(m, o.mode);
  }
  return m;
}

namespace {

void check_modes(const FermionOperator& op, int n_modes) {
  if (op.max_mode() >= n_modes) {
    throw std::invalid_argument("mode index exceeds register size");
  }
}

// Encoded image of a single ladder operator as a two-term Pauli sum.
using LadderImage = PauliSum (*)(const LadderOp&, int);

PauliSum encode_with(const FermionOperator& op, int n_modes, LadderImage image) {
  PauliSum out(n_modes);
  for (const auto& t : op.terms()) {
    PauliSum prod = PauliSum::identity(n_modes, t.coeff);
    for (const auto& o : t.ops) prod = prod * image(o, n_modes);
    out += prod;
  }
  out.simplify();
  return out;
}

PauliSum jw_image(const LadderOp& o, int n_modes) {
  // a_p = Z_0..Z_{p-1} (X_p + i Y_p)/2, creation flips the sign of the Y part.
  std::string x_axes(std::size_t(n_modes), 'I');
  std::string y_axes(std::size_t(n_modes), 'I');
  for (int q = 0; q < o.mode; ++q) {
    x_axes[std::size_t(q)] = 'Z';
    y_axes[std::size_t(q)] = 'Z';
  }
  x_axes[std::size_t(o.mode)] = 'X';
  y_axes[std::size_t(o.mode)] = 'Y';
  PauliSum s(n_modes);
  s.add(x_axes, 0.5);
  s.add(y_axes, o.creation ? cdouble(0.0, -0.5) : cdouble(0.0, 0.5));
  return s;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Update / parity / flip sets from the binary indexing tree, 1-based nodes:
// node t stores the occupation parity of modes (t - lsb(t), t].
struct BkSets {
  std::vector<int> update, parity, remainder;
};

BkSets bk_sets(int mode, int n_modes) {
  auto lsb = [](int t) { return t & -t; };
  BkSets sets;
  for (int t = mode + 1 + lsb(mode + 1); t <= n_modes; t += lsb(t)) {
    sets.update.push_back(t - 1);
  }
  std::vector<int> flip;
  {
    const int node = mode + 1;
    int lo = node - lsb(node);  // children cover (lo, node-1]
    for (int t = node - 1; t > lo; t -= lsb(t)) flip.push_back(t - 1);
  }
  for (int t = mode; t > 0; t -= lsb(t)) sets.parity.push_back(t - 1);
  for (int q : sets.parity) {
    if (std::find(flip.begin(), flip.end(), q) == flip.end()) {
      sets.remainder.push_back(q);
    }
  }
  return sets;
}

PauliSum bk_image(const LadderOp& o, int n_modes) {
  const BkSets sets = bk_sets(o.mode, n_modes);
  std::string x_axes(std::size_t(n_modes), 'I');
  std::string y_axes(std::size_t(n_modes), 'I');
  for (int q : sets.update) {
    x_axes[std::size_t(q)] = 'X';
    y_axes[std::size_t(q)] = 'X';
  }
  x_axes[std::size_t(o.mode)] = 'X';
  y_axes[std::size_t(o.mode)] = 'Y';
  for (int q : sets.parity) x_axes[std::size_t(q)] = 'Z';
  for (int q : sets.remainder) y_axes[std::size_t(q)] = 'Z';
  PauliSum s(n_modes);
  s.add(x_axes, 0.5);
  s.add(y_axes, o.creation ? cdouble(0.0, -0.5) : cdouble(0.0, 0.5));
  return s;
}

}  // namespace

PauliSum jordan_wigner(const FermionOperator& op, int n_modes) {
  check_modes(op, n_modes);
  return encode_with(op, n_modes, jw_image);
}

PauliSum bravyi_kitaev(const FermionOperator& op, int n_modes) {
  if (!power_of_two(n_modes)) {
    throw std::invalid_argument("Bravyi-Kitaev register size must be a power of two");
  }
  check_modes(op, n_modes);
  return encode_with(op, n_modes, bk_image);
}

PauliSum encode(const FermionOperator& op, int n_modes, Encoding e) {
  return e == Encoding::jordan_wigner ? jordan_wigner(op, n_modes)
                                      : bravyi_kitaev(op, n_modes);
}

std::string encode_occupation(const std::vector<int>& occupation, Encoding e) {
  const int n = static_cast<int>(occupation.size());
  for (int b : occupation) {
    if (b != 0 && b != 1) throw std::invalid_argument("occupation bits must be 0/1");
  }
  std::string label(std::size_t(n), '0');
  if (e == Encoding::jordan_wigner) {
    for (int q = 0; q < n; ++q) label[std::size_t(q)] = char('0' + occupation[std::size_t(q)]);
    return label;
  }
  if (!power_of_two(n)) {
    throw std::invalid_argument("Bravyi-Kitaev register size must be a power of two");
  }
  auto lsb = [](int t) { return t & -t; };
  for (int q = 0; q < n; ++q) {
    const int node = q + 1;
    int parity = 0;  // node stores parity of modes (node - lsb, node]
    for (int m = node - lsb(node); m < node; ++m) parity ^= occupation[std::size_t(m)];
    label[std::size_t(q)] = char('0' + parity);
  }
  return label;
}

SpinObservables build_observables(int n_spatial, Encoding e) {
  if (n_spatial < 1) throw std::invalid_argument("need at least one spatial orbital");
  const int n_modes = 2 * n_spatial;
  FermionOperator number, sz, s_plus;
  for (int p = 0; p < n_modes; ++p) {
    number += FermionOperator::term({{p, true}, {p, false}}, 1.0);
  }
  for (int sp = 0; sp < n_spatial; ++sp) {
    sz += FermionOperator::term({{2 * sp, true}, {2 * sp, false}}, 0.5);
    sz += FermionOperator::term({{2 * sp + 1, true}, {2 * sp + 1, false}}, -0.5);
    s_plus += FermionOperator::term({{2 * sp, true}, {2 * sp + 1, false}}, 1.0);
  }
  FermionOperator s2 = s_plus.adjoint() * s_plus + sz * sz + sz;
  s2 = s2.normal_ordered();
  SpinObservables obs{encode(number, n_modes, e), encode(sz, n_modes, e),
                      encode(s2, n_modes, e)};
  obs.number.simplify();
  obs.sz.simplify();
  obs.s_squared.simplify();
  return obs;
}

}  // namespace vqx
