// Acceptance gate: exercises the end-to-end guarantees the toolkit is built
// around and prints one [PASS]/[FAIL] line per criterion with the measured
// numbers. Exit status is the number of failed criteria.
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "vqx/ansatz.hpp"
#include "vqx/fermion.hpp"
#include "vqx/molecule.hpp"
#include "vqx/oracle.hpp"
#include "vqx/pauli.hpp"
#include "vqx/statevector.hpp"
#include "vqx/sweep.hpp"

namespace {

namespace fs = std::filesystem;
using vqx::Encoding;
using vqx::PauliSum;
using vqx::PauliTerm;
using vqx::RunConfig;
using vqx::RunRecord;
using vqx::StateVector;
using vqx::SweepResult;

const double kPi = std::acos(-1.0);

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

// All Pauli axes strings over n qubits except the identity.
std::vector<std::string> non_identity_axes(int n) {
  const char alphabet[] = {'I', 'X', 'Y', 'Z'};
  std::vector<std::string> out;
  int total = 1;
  for (int q = 0; q < n; ++q) total *= 4;
  for (int code = 1; code < total; ++code) {
    std::string axes(std::size_t(n), 'I');
    int c = code;
    for (int q = n - 1; q >= 0; --q) {
      axes[std::size_t(q)] = alphabet[c % 4];
      c /= 4;
    }
    out.push_back(std::move(axes));
  }
  return out;
}

// Matrix of the circuit-ladder exponential, one basis-state column at a time.
Eigen::MatrixXcd ladder_matrix(const std::string& axes, double theta) {
  const int n = int(axes.size());
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    StateVector s(n);
    s.amplitudes().assign(std::size_t(dim), {0.0, 0.0});
    s.amplitudes()[std::size_t(col)] = 1.0;
    s.apply_pauli_exponential(PauliTerm(axes, 1.0), theta);
    for (Eigen::Index row = 0; row < dim; ++row)
      out(row, col) = s.amplitudes()[std::size_t(row)];
  }
  return out;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / double(xs.size());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// ---- criteria ----

void criterion_pauli_ladder() {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    for (const std::string& axes : non_identity_axes(n)) {
      PauliSum p(n);
      p.add(axes, 1.0);
      const Eigen::MatrixXcd pm = p.to_matrix();
      const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(dim, dim);
      for (double theta : {0.1, kPi / 3, 2.7}) {
        const Eigen::MatrixXcd want =
            std::cos(theta) * eye -
            std::complex<double>(0.0, 1.0) * std::sin(theta) * pm;
        const double err =
            (ladder_matrix(axes, theta) - want).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
      }
    }
  }
  report(1, "exponential circuit ladder equals cos(t)I - i sin(t)P",
         worst <= 1e-10, fmt("max elementwise error %.3g (tol 1e-10)", worst));
}

void criterion_encoding_isospectral() {
  double worst = 0.0;
  for (double r : {0.5, 0.7, 1.0, 1.5, 2.0}) {
    const vqx::Geometry g = vqx::Geometry::diatomic("H2", r);
    const PauliSum jw = vqx::qubit_hamiltonian(g, Encoding::jordan_wigner);
    const PauliSum bk = vqx::qubit_hamiltonian(g, Encoding::bravyi_kitaev);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ej(jw.to_matrix());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(bk.to_matrix());
    for (int i = 0; i < ej.eigenvalues().size(); ++i)
      worst = std::max(worst,
                       std::abs(ej.eigenvalues()(i) - eb.eigenvalues()(i)));
  }
  report(2, "jordan-wigner and bravyi-kitaev spectra coincide for H2",
         worst <= 1e-10, fmt("max eigenvalue gap %.3g (tol 1e-10)", worst));
}

void criterion_symmetry_commutation() {
  double worst = 0.0;
  for (const char* mol : {"H2", "HeH"}) {
    RunConfig c;
    c.molecule = mol;
    for (double r : c.grid()) {
      const vqx::Geometry g = vqx::Geometry::diatomic(mol, r);
      for (Encoding e : {Encoding::jordan_wigner, Encoding::bravyi_kitaev}) {
        const PauliSum h = vqx::qubit_hamiltonian(g, e);
        const vqx::SpinObservables obs = vqx::build_observables(2, e);
        for (const PauliSum* o : {&obs.number, &obs.sz, &obs.s_squared})
          worst = std::max(worst, vqx::commutator_norm(h, *o));
      }
    }
  }
  report(3, "hamiltonians commute with N, Sz and S^2 on the full grids",
         worst <= 1e-8, fmt("max commutator norm %.3g (tol 1e-8)", worst));
}

void criterion_ground_state_exactness(const SweepResult& case1) {
  int hits = 0, total = 0;
  std::vector<double> accs;
  for (const RunRecord& rec : case1.records) {
    if (rec.state != 0) continue;
    ++total;
    if (std::abs(rec.energy - rec.e_fci) <= 1e-6) ++hits;
    accs.push_back(rec.accuracy);
  }
  const double mean_acc = mean_of(accs);
  const bool pass = total == 10 && hits >= 9 && mean_acc <= -4.0;
  report(4, "plain single-state ground run is exact at r=0.7",
         pass,
         fmt("|E - E_exact| <= 1e-6 in %d/%d seeds, mean accuracy %.2f "
             "(need >= 9/10 and <= -4)",
             hits, total, mean_acc));
}

void criterion_excited_recovery(const SweepResult& case2) {
  bool pass = true;
  std::string detail;
  for (int state : {1, 2, 3}) {
    for (double r : {0.7, 1.0, 1.5}) {
      std::vector<double> accs;
      std::string label;
      for (const RunRecord& rec : case2.records)
        if (rec.state == state && std::abs(rec.r - r) < 1e-9) {
          accs.push_back(rec.accuracy);
          label = rec.state_label;
        }
      const double m = mean_of(accs);
      if (m > -2.0) {
        pass = false;
        detail += fmt(" %s@%g=%.2f!", label.c_str(), r, m);
      }
    }
  }
  if (pass) {
    std::vector<double> all;
    for (const RunRecord& rec : case2.records)
      if (rec.state != 0) all.push_back(rec.accuracy);
    detail = fmt("all nine state/separation means <= -2 (pooled mean %.2f, "
                 "gap-scaled deflation on)",
                 mean_of(all));
  } else {
    detail = "means above -2:" + detail;
  }
  report(5, "constrained runs recover triplet/singlet/doubly sectors", pass,
         detail);
}

void criterion_tabu_direction(const SweepResult& h2_plain,
                              const SweepResult& h2_tabu,
                              const SweepResult& heh_plain,
                              const SweepResult& heh_tabu) {
  const auto pooled_mean = [](const SweepResult& run,
                              std::vector<int> states) {
    std::vector<double> xs;
    for (const RunRecord& rec : run.records)
      for (int s : states)
        if (rec.state == s) xs.push_back(double(rec.updates_to_convergence));
    return mean_of(xs);
  };
  const double h2_base = pooled_mean(h2_plain, {2, 3});
  const double h2_with = pooled_mean(h2_tabu, {2, 3});
  const double heh_base = pooled_mean(heh_plain, {0, 1, 2, 3});
  const double heh_with = pooled_mean(heh_tabu, {0, 1, 2, 3});
  const bool h2_ok = h2_with < 0.95 * h2_base;
  const bool heh_ok = heh_with < 0.95 * heh_base;
  report(6,
         "tabu penalties speed convergence (mean updates-to-convergence, "
         ">=5% margin)",
         h2_ok && heh_ok,
         fmt("H2 singlet/doubly with tabu %.2f vs without %.2f; HeH with "
             "%.2f vs without %.2f (far-start config: noise 1.0, r=0.7/1.0, "
             "10 paired seeds)",
             h2_with, h2_base, heh_with, heh_base));
}

void criterion_ssvqe_orthogonality(const std::vector<const SweepResult*>& runs) {
  double worst = 0.0;
  int cells = 0;
  for (const SweepResult* run : runs) {
    if (run->config.method != "ssvqe") continue;
    for (const RunRecord& rec : run->records) {
      worst = std::max(worst, rec.max_cross_overlap);
      ++cells;
    }
  }
  report(7, "shared-circuit state pairs stay orthogonal at every step",
         cells > 0 && worst <= 1e-8,
         fmt("max recorded |<i|j>| %.3g over %d records (tol 1e-8)", worst,
             cells));
}

void criterion_heh_ssvqe_accuracy(const SweepResult& case11) {
  bool pass = true;
  std::string bad;
  std::map<std::string, std::vector<double>> by_label;
  for (const char* label : {"ground_1", "ground_2", "excited_2"}) {
    for (double r : case11.config.bond_lengths) {
      std::vector<double> accs;
      for (const RunRecord& rec : case11.records)
        if (rec.state_label == label && std::abs(rec.r - r) < 1e-9)
          accs.push_back(rec.accuracy);
      const double m = mean_of(accs);
      by_label[label].push_back(m);
      if (m > -3.0) {
        pass = false;
        bad += fmt(" %s@%g=%.2f", label, r, m);
      }
    }
  }
  std::string detail;
  if (pass) {
    detail = fmt("ground_1/ground_2/excited_2 means %.2f/%.2f/%.2f across the "
                 "5-point grid (all <= -3, gap-scaled deflation on)",
                 mean_of(by_label["ground_1"]), mean_of(by_label["ground_2"]),
                 mean_of(by_label["excited_2"]));
  } else {
    detail = "means above -3:" + bad;
  }
  report(8, "multistate runs hold both doublets to high accuracy", pass,
         detail);
}

void criterion_variational_floor(const std::vector<const SweepResult*>& runs) {
  double worst = 0.0;
  long n = 0;
  for (const SweepResult* run : runs)
    for (const RunRecord& rec : run->records) {
      worst = std::max(worst, rec.e_floor - rec.energy);
      ++n;
    }
  report(9, "no recorded energy undercuts its symmetry-sector floor",
         worst <= 1e-9,
         fmt("max floor violation %.3g Ha over %ld records (tol 1e-9)", worst,
             n));
}

void criterion_determinism(const RunConfig& config) {
  const fs::path dir_a = "acceptance_out/determinism_a";
  const fs::path dir_b = "acceptance_out/determinism_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  vqx::write_tables(vqx::run_sweep(config), dir_a.string());
  vqx::write_tables(vqx::run_sweep(config), dir_b.string());
  const std::string a = slurp(dir_a / "energies.csv");
  const std::string b = slurp(dir_b / "energies.csv");
  report(10, "identical configs reproduce energies.csv byte for byte",
         !a.empty() && a == b,
         fmt("%zu bytes, re-run %s", a.size(),
             a == b ? "identical" : "DIFFERS"));
}

}  // namespace

int main() {
  std::printf("acceptance gate: 10 criteria\n");

  criterion_pauli_ladder();
  criterion_encoding_isospectral();
  criterion_symmetry_commutation();

  // Shared sweep runs for the remaining criteria.
  RunConfig case1;
  case1.apply_case(1);
  case1.bond_lengths = {0.7};
  const SweepResult run_case1 = vqx::run_sweep(case1);
  criterion_ground_state_exactness(run_case1);

  RunConfig case2;
  case2.apply_case(2);
  case2.bond_lengths = {0.7, 1.0, 1.5};
  case2.deflation_shift = true;
  const SweepResult run_case2 = vqx::run_sweep(case2);
  criterion_excited_recovery(run_case2);

  // Far-start configuration so the convergence statistic has resolution.
  RunConfig t2;
  t2.apply_case(2);
  t2.bond_lengths = {0.7};
  t2.deflation_shift = true;
  t2.noise_scale = 1.0;
  t2.value_tolerance = 1e-10;
  RunConfig t3 = t2;
  t3.apply_case(3);
  t3.bond_lengths = {0.7};
  RunConfig t11;
  t11.apply_case(11);
  t11.bond_lengths = {1.0};
  t11.deflation_shift = true;
  t11.noise_scale = 1.0;
  t11.value_tolerance = 1e-10;
  RunConfig t12 = t11;
  t12.apply_case(12);
  t12.bond_lengths = {1.0};
  const SweepResult run_t2 = vqx::run_sweep(t2);
  const SweepResult run_t3 = vqx::run_sweep(t3);
  const SweepResult run_t11 = vqx::run_sweep(t11);
  const SweepResult run_t12 = vqx::run_sweep(t12);
  criterion_tabu_direction(run_t2, run_t3, run_t11, run_t12);

  RunConfig case11;
  case11.apply_case(11);
  case11.bond_lengths = {0.5, 0.875, 1.25, 1.625, 2.0};
  case11.deflation_shift = true;
  const SweepResult run_case11 = vqx::run_sweep(case11);

  RunConfig case4;
  case4.apply_case(4);
  case4.bond_lengths = {0.7, 1.5};
  case4.samples = 5;
  case4.deflation_shift = true;
  const SweepResult run_case4 = vqx::run_sweep(case4);

  const std::vector<const SweepResult*> all_runs = {
      &run_case1, &run_case2, &run_t2,     &run_t3,
      &run_t11,   &run_t12,   &run_case11, &run_case4};

  criterion_ssvqe_orthogonality(all_runs);
  criterion_heh_ssvqe_accuracy(run_case11);
  criterion_variational_floor(all_runs);
  criterion_determinism(case1);

  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures;
}
