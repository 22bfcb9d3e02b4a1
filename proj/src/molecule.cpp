#include "vqx/molecule.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vqx {
namespace {

constexpr double kPi = std::numbers::pi;

int nuclear_charge(const std::string& element) {
  if (element == "H") return 1;
  if (element == "He") return 2;
  throw std::invalid_argument("unsupported element: " + element);
}

double dist2(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

std::array<double, 3> gaussian_center(double a, const std::array<double, 3>& ca,
                                      double b, const std::array<double, 3>& cb) {
  std::array<double, 3> p{};
  for (int k = 0; k < 3; ++k) p[k] = (a * ca[k] + b * cb[k]) / (a + b);
  return p;
}

// Primitive s-Gaussian integrals, normalization carried by the weights.
double prim_overlap(double a, const std::array<double, 3>& ca,
                    double b, const std::array<double, 3>& cb) {
  double p = a + b;
  return std::pow(kPi / p, 1.5) * std::exp(-a * b / p * dist2(ca, cb));
}

double prim_kinetic(double a, const std::array<double, 3>& ca,
                    double b, const std::array<double, 3>& cb) {
  double p = a + b;
  double mu = a * b / p;
  double r2 = dist2(ca, cb);
  return mu * (3.0 - 2.0 * mu * r2) * std::pow(kPi / p, 1.5) * std::exp(-mu * r2);
}

double prim_nuclear(double a, const std::array<double, 3>& ca,
                    double b, const std::array<double, 3>& cb,
                    const std::array<double, 3>& cc) {
  double p = a + b;
  auto pc = gaussian_center(a, ca, b, cb);
  return -2.0 * kPi / p * std::exp(-a * b / p * dist2(ca, cb)) *
         boys_f0(p * dist2(pc, cc));
}

double prim_eri(double a, const std::array<double, 3>& ca,
                double b, const std::array<double, 3>& cb,
                double c, const std::array<double, 3>& cc,
                double d, const std::array<double, 3>& cd) {
  double p = a + b;
  double q = c + d;
  auto cp = gaussian_center(a, ca, b, cb);
  auto cq = gaussian_center(c, cc, d, cd);
  double pref = 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q));
  return pref * std::exp(-a * b / p * dist2(ca, cb) - c * d / q * dist2(cc, cd)) *
         boys_f0(p * q / (p + q) * dist2(cp, cq));
}

Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  Eigen::VectorXd inv = es.eigenvalues().array().rsqrt();
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

// Deterministic column signs: largest-magnitude entry positive.
void fix_column_signs(Eigen::MatrixXd& c) {
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    Eigen::Index imax = 0;
    c.col(j).cwiseAbs().maxCoeff(&imax);
    if (c(imax, j) < 0.0) c.col(j) = -c.col(j);
  }
}

}  // namespace

int Geometry::electron_count() const {
  int n = -charge;
  for (const auto& a : atoms) n += nuclear_charge(a.element);
  return n;
}

Geometry Geometry::diatomic(const std::string& molecule, double r_angstrom) {
  double r = r_angstrom * kBohrPerAngstrom;
  Geometry g;
  if (molecule == "H2") {
    g.atoms = {{"H", {0.0, 0.0, 0.0}}, {"H", {0.0, 0.0, r}}};
    g.multiplicity = 1;
  } else if (molecule == "HeH") {
    g.atoms = {{"He", {0.0, 0.0, 0.0}}, {"H", {0.0, 0.0, r}}};
    g.multiplicity = 2;
  } else {
    throw std::invalid_argument("unsupported molecule: " + molecule);
  }
  return g;
}

Geometry Geometry::from_json_text(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  if (j.contains("molecule"))
    return diatomic(j.at("molecule").get<std::string>(),
                    j.at("r_angstrom").get<double>());
  Geometry g;
  for (const auto& a : j.at("atoms")) {
    Atom atom;
    atom.element = a.at("element").get<std::string>();
    auto pos = a.at("position_bohr");
    for (int k = 0; k < 3; ++k) atom.position[k] = pos.at(k).get<double>();
    g.atoms.push_back(atom);
  }
  g.charge = j.value("charge", 0);
  g.multiplicity = j.value("multiplicity", 1);
  return g;
}

ContractedGaussian sto3g_orbital(const std::string& element,
                                 const std::array<double, 3>& center) {
  static const std::vector<double> coeffs = {0.15432897, 0.53532814, 0.44463454};
  std::vector<double> exps;
  if (element == "H")
    exps = {3.42525091, 0.62391373, 0.16885540};
  else if (element == "He")
    exps = {6.36242139, 1.15892300, 0.31364979};
  else
    throw std::invalid_argument("no STO-3G data for element: " + element);

  ContractedGaussian g;
  g.center = center;
  g.exponents = exps;
  for (size_t i = 0; i < exps.size(); ++i)
    g.weights.push_back(coeffs[i] * std::pow(2.0 * exps[i] / kPi, 0.75));
  double self = 0.0;
  for (size_t i = 0; i < exps.size(); ++i)
    for (size_t j = 0; j < exps.size(); ++j)
      self += g.weights[i] * g.weights[j] *
              prim_overlap(exps[i], center, exps[j], center);
  for (auto& w : g.weights) w /= std::sqrt(self);
  return g;
}

double boys_f0(double x) {
  if (x < 1e-10) return 1.0 - x / 3.0 + x * x / 10.0;
  return 0.5 * std::sqrt(kPi / x) * std::erf(std::sqrt(x));
}

double AoIntegrals::eri_at(int i, int j, int k, int l) const {
  int n = n_orbitals;
  return eri[size_t(((i * n + j) * n + k) * n + l)];
}

double& AoIntegrals::eri_at(int i, int j, int k, int l) {
  int n = n_orbitals;
  return eri[size_t(((i * n + j) * n + k) * n + l)];
}

AoIntegrals ao_integrals(const Geometry& geometry) {
  std::vector<ContractedGaussian> basis;
  for (const auto& atom : geometry.atoms)
    basis.push_back(sto3g_orbital(atom.element, atom.position));
  int n = int(basis.size());

  AoIntegrals out;
  out.n_orbitals = n;
  out.s = Eigen::MatrixXd::Zero(n, n);
  out.t = Eigen::MatrixXd::Zero(n, n);
  out.v = Eigen::MatrixXd::Zero(n, n);
  out.eri.assign(size_t(n) * n * n * n, 0.0);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& gi = basis[size_t(i)];
      const auto& gj = basis[size_t(j)];
      for (size_t p = 0; p < gi.exponents.size(); ++p)
        for (size_t q = 0; q < gj.exponents.size(); ++q) {
          double w = gi.weights[p] * gj.weights[q];
          double a = gi.exponents[p], b = gj.exponents[q];
          out.s(i, j) += w * prim_overlap(a, gi.center, b, gj.center);
          out.t(i, j) += w * prim_kinetic(a, gi.center, b, gj.center);
          for (const auto& atom : geometry.atoms)
            out.v(i, j) += w * nuclear_charge(atom.element) *
                           prim_nuclear(a, gi.center, b, gj.center, atom.position);
        }
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const auto& gi = basis[size_t(i)];
          const auto& gj = basis[size_t(j)];
          const auto& gk = basis[size_t(k)];
          const auto& gl = basis[size_t(l)];
          double val = 0.0;
          for (size_t p = 0; p < gi.exponents.size(); ++p)
            for (size_t q = 0; q < gj.exponents.size(); ++q)
              for (size_t r = 0; r < gk.exponents.size(); ++r)
                for (size_t u = 0; u < gl.exponents.size(); ++u)
                  val += gi.weights[p] * gj.weights[q] * gk.weights[r] *
                         gl.weights[u] *
                         prim_eri(gi.exponents[p], gi.center,
                                  gj.exponents[q], gj.center,
                                  gk.exponents[r], gk.center,
                                  gl.exponents[u], gl.center);
          out.eri_at(i, j, k, l) = val;
        }

  for (size_t a = 0; a < geometry.atoms.size(); ++a)
    for (size_t b = a + 1; b < geometry.atoms.size(); ++b)
      out.e_nuc += nuclear_charge(geometry.atoms[a].element) *
                   nuclear_charge(geometry.atoms[b].element) /
                   std::sqrt(dist2(geometry.atoms[a].position,
                                   geometry.atoms[b].position));
  return out;
}

ScfResult reference_orbitals(const Geometry& geometry, const AoIntegrals& ao) {
  int n = ao.n_orbitals;
  int n_elec = geometry.electron_count();
  Eigen::MatrixXd hcore = ao.t + ao.v;
  Eigen::MatrixXd x = inverse_sqrt(ao.s);

  ScfResult res;
  if (n_elec % 2 != 0) {
    // Open-shell reference: core-Hamiltonian eigenvectors in the
    // symmetrically orthogonalized basis.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * hcore * x);
    res.coefficients = x * es.eigenvectors();
    res.orbital_energies = es.eigenvalues();
    fix_column_signs(res.coefficients);
    // Energy of the reference determinant with the lowest orbitals filled.
    auto problem = to_spin_orbital(mo_problem(ao, res.coefficients, n_elec));
    double e = problem.e_nuc;
    for (int p = 0; p < n_elec; ++p) {
      e += problem.h(p, p);
      for (int q = 0; q < n_elec; ++q) e += 0.5 * problem.eri_at(p, q, p, q);
    }
    res.total_energy = e;
    res.iterations = 0;
    res.energy_history = {e};
    return res;
  }

  int n_occ = n_elec / 2;
  Eigen::MatrixXd c;
  Eigen::VectorXd eps;
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * hcore * x);
    c = x * es.eigenvectors();
    eps = es.eigenvalues();
  }
  Eigen::MatrixXd d = 2.0 * c.leftCols(n_occ) * c.leftCols(n_occ).transpose();

  double energy = 0.0;
  for (int iter = 1; iter <= 200; ++iter) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int la = 0; la < n; ++la)
          for (int si = 0; si < n; ++si)
            g(mu, nu) += d(la, si) * (ao.eri_at(mu, nu, si, la) -
                                      0.5 * ao.eri_at(mu, la, si, nu));
    Eigen::MatrixXd f = hcore + g;
    energy = 0.5 * (d.array() * (hcore + f).array()).sum() + ao.e_nuc;
    res.energy_history.push_back(energy);
    res.iterations = iter;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * f * x);
    c = x * es.eigenvectors();
    eps = es.eigenvalues();
    Eigen::MatrixXd d_new = 2.0 * c.leftCols(n_occ) * c.leftCols(n_occ).transpose();
    double delta = (d_new - d).cwiseAbs().maxCoeff();
    d = d_new;
    if (delta < 1e-10) break;
  }

  fix_column_signs(c);
  res.coefficients = c;
  res.orbital_energies = eps;
  res.total_energy = energy;
  return res;
}

double MolecularProblem::eri_at(int i, int j, int k, int l) const {
  int n = convention == Convention::spatial_chemist ? n_orbitals : n_spin_orbitals;
  return eri[size_t(((i * n + j) * n + k) * n + l)];
}

double& MolecularProblem::eri_at(int i, int j, int k, int l) {
  int n = convention == Convention::spatial_chemist ? n_orbitals : n_spin_orbitals;
  return eri[size_t(((i * n + j) * n + k) * n + l)];
}

MolecularProblem mo_problem(const AoIntegrals& ao, const Eigen::MatrixXd& c,
                            int n_electrons) {
  int n = ao.n_orbitals;
  MolecularProblem p;
  p.convention = MolecularProblem::Convention::spatial_chemist;
  p.n_orbitals = n;
  p.n_spin_orbitals = 2 * n;
  p.n_electrons = n_electrons;
  p.e_nuc = ao.e_nuc;
  p.h = c.transpose() * (ao.t + ao.v) * c;
  p.eri.assign(size_t(n) * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double val = 0.0;
          for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu)
              for (int la = 0; la < n; ++la)
                for (int si = 0; si < n; ++si)
                  val += c(mu, i) * c(nu, j) * c(la, k) * c(si, l) *
                         ao.eri_at(mu, nu, la, si);
          p.eri_at(i, j, k, l) = val;
        }
  return p;
}

MolecularProblem to_spin_orbital(const MolecularProblem& spatial) {
  if (spatial.convention != MolecularProblem::Convention::spatial_chemist)
    throw std::invalid_argument("to_spin_orbital expects a spatial problem");
  int n = spatial.n_orbitals;
  int m = 2 * n;
  MolecularProblem p;
  p.convention = MolecularProblem::Convention::spin_physicist_antisym;
  p.n_orbitals = n;
  p.n_spin_orbitals = m;
  p.n_electrons = spatial.n_electrons;
  p.e_nuc = spatial.e_nuc;
  p.h = Eigen::MatrixXd::Zero(m, m);
  for (int pq = 0; pq < m; ++pq)
    for (int qq = 0; qq < m; ++qq)
      if (pq % 2 == qq % 2) p.h(pq, qq) = spatial.h(pq / 2, qq / 2);

  p.eri.assign(size_t(m) * m * m * m, 0.0);
  auto chem = [&](int a, int b, int cc, int d) {
    return spatial.eri_at(a, b, cc, d);
  };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int cc = 0; cc < m; ++cc)
        for (int d = 0; d < m; ++d) {
          // <ab|cd> = (ac|bd) with spin conservation on each electron.
          double direct = (a % 2 == cc % 2 && b % 2 == d % 2)
                              ? chem(a / 2, cc / 2, b / 2, d / 2)
                              : 0.0;
          double exchange = (a % 2 == d % 2 && b % 2 == cc % 2)
                                ? chem(a / 2, d / 2, b / 2, cc / 2)
                                : 0.0;
          p.eri_at(a, b, cc, d) = direct - exchange;
        }
  return p;
}

FermionOperator molecular_hamiltonian(const MolecularProblem& so) {
  if (so.convention != MolecularProblem::Convention::spin_physicist_antisym)
    throw std::invalid_argument("molecular_hamiltonian expects spin orbitals");
  int m = so.n_spin_orbitals;
  FermionOperator op = FermionOperator::identity(so.e_nuc);
  for (int pq = 0; pq < m; ++pq)
    for (int q = 0; q < m; ++q)
      if (std::abs(so.h(pq, q)) > 1e-14)
        op.add_term({{pq, true}, {q, false}}, so.h(pq, q));
  for (int pq = 0; pq < m; ++pq)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
          double v = so.eri_at(pq, q, r, s);
          if (std::abs(v) > 1e-14)
            op.add_term({{pq, true}, {q, true}, {s, false}, {r, false}},
                        0.25 * v);
        }
  return op;
}

PauliSum qubit_hamiltonian(const Geometry& geometry, Encoding e) {
  auto ao = ao_integrals(geometry);
  auto scf = reference_orbitals(geometry, ao);
  auto spatial = mo_problem(ao, scf.coefficients, geometry.electron_count());
  auto spin = to_spin_orbital(spatial);
  auto h = molecular_hamiltonian(spin).normal_ordered();
  auto out = encode(h, spin.n_spin_orbitals, e);
  out.simplify();
  return out;
}

namespace {

// Unique chemists' quartets: i>=j, k>=l, (i,j) >= (k,l) lexicographically.
bool canonical_quartet(int i, int j, int k, int l) {
  if (i < j || k < l) return false;
  if (i < k) return false;
  if (i == k && j < l) return false;
  return true;
}

}  // namespace

void write_fcidump(const MolecularProblem& spatial, const std::string& path) {
  if (spatial.convention != MolecularProblem::Convention::spatial_chemist)
    throw std::invalid_argument("write_fcidump expects a spatial problem");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  int n = spatial.n_orbitals;
  out << "&FCI NORB=" << n << ",NELEC=" << spatial.n_electrons
      << ",MS2=" << spatial.n_electrons % 2 << ",\n ORBSYM=";
  for (int i = 0; i < n; ++i) out << "1,";
  out << "\n ISYM=1,\n&END\n";
  char buf[64];
  auto record = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%24.17g", v);
    out << buf << ' ' << i << ' ' << j << ' ' << k << ' ' << l << '\n';
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (canonical_quartet(i, j, k, l) &&
              std::abs(spatial.eri_at(i, j, k, l)) > 1e-14)
            record(spatial.eri_at(i, j, k, l), i + 1, j + 1, k + 1, l + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (std::abs(spatial.h(i, j)) > 1e-14)
        record(spatial.h(i, j), i + 1, j + 1, 0, 0);
  record(spatial.e_nuc, 0, 0, 0, 0);
}

MolecularProblem load_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string header;
  std::string line;
  bool in_header = true;
  std::ostringstream body;
  while (std::getline(in, line)) {
    if (in_header) {
      header += line + " ";
      if (line.find("&END") != std::string::npos ||
          line.find('/') != std::string::npos)
        in_header = false;
    } else {
      body << line << '\n';
    }
  }
  auto field = [&](const std::string& key) {
    auto pos = header.find(key + "=");
    if (pos == std::string::npos)
      throw std::runtime_error("FCIDUMP header missing " + key);
    return std::stoi(header.substr(pos + key.size() + 1));
  };
  int n = field("NORB");
  MolecularProblem p;
  p.convention = MolecularProblem::Convention::spatial_chemist;
  p.n_orbitals = n;
  p.n_spin_orbitals = 2 * n;
  p.n_electrons = field("NELEC");
  p.h = Eigen::MatrixXd::Zero(n, n);
  p.eri.assign(size_t(n) * n * n * n, 0.0);

  std::istringstream records(body.str());
  double v;
  int i, j, k, l;
  while (records >> v >> i >> j >> k >> l) {
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      p.e_nuc = v;
    } else if (k == 0 && l == 0) {
      p.h(i - 1, j - 1) = v;
      p.h(j - 1, i - 1) = v;
    } else {
      int a = i - 1, b = j - 1, c = k - 1, d = l - 1;
      // Eightfold permutation symmetry of real chemists' integrals.
      const int perms[8][4] = {{a, b, c, d}, {b, a, c, d}, {a, b, d, c},
                               {b, a, d, c}, {c, d, a, b}, {d, c, a, b},
                               {c, d, b, a}, {d, c, b, a}};
      for (const auto& q : perms) p.eri_at(q[0], q[1], q[2], q[3]) = v;
    }
  }
  return p;
}

}  // namespace vqx
