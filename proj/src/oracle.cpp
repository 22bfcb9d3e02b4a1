#include "vqx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vqx {
namespace {

double real_expect(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v) {
  return (v.adjoint() * m * v)(0, 0).real();
}

struct ColRange {
  int begin = 0;
  int count = 0;
};

// Within each column range, rotate so `op` is diagonal, then split the
// range at gaps between clustered eigenvalues. Keeps previously sharpened
// operators sharp because rotations never cross range boundaries.
std::vector<ColRange> split_by(Eigen::MatrixXcd& block,
                               const Eigen::MatrixXcd& op,
                               const std::vector<ColRange>& ranges,
                               double cluster_tol) {
  std::vector<ColRange> out;
  for (const auto& r : ranges) {
    if (r.count == 1) {
      out.push_back(r);
      continue;
    }
    Eigen::MatrixXcd sub = block.middleCols(r.begin, r.count);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub.adjoint() * op * sub);
    block.middleCols(r.begin, r.count) = sub * es.eigenvectors();
    Eigen::VectorXd vals = es.eigenvalues();
    int s = 0;
    for (int k = 1; k <= r.count; ++k)
      if (k == r.count || vals(k) - vals(k - 1) > cluster_tol) {
        out.push_back({r.begin + s, k - s});
        s = k;
      }
  }
  return out;
}

}  // namespace

int Spectrum::find_level(double n, double sz, double s2, int rank,
                         double tol) const {
  int seen = 0;
  for (size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    if (std::abs(l.n_particles - n) < tol && std::abs(l.sz - sz) < tol &&
        std::abs(l.s_squared - s2) < tol) {
      if (seen == rank) return int(i);
      ++seen;
    }
  }
  return -1;
}

Spectrum fci_spectrum(const PauliSum& hamiltonian, const SpinObservables& obs,
                      double degeneracy_tol) {
  Eigen::MatrixXcd h = hamiltonian.to_matrix();
  Eigen::MatrixXcd mn = obs.number.to_matrix();
  Eigen::MatrixXcd msz = obs.sz.to_matrix();
  Eigen::MatrixXcd ms2 = obs.s_squared.to_matrix();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXd energies = es.eigenvalues();
  Eigen::MatrixXcd vecs = es.eigenvectors();

  int dim = int(energies.size());
  Spectrum out;
  int start = 0;
  while (start < dim) {
    int stop = start + 1;
    while (stop < dim && energies(stop) - energies(stop - 1) < degeneracy_tol)
      ++stop;
    Eigen::MatrixXcd block = vecs.middleCols(start, stop - start);
    std::vector<ColRange> ranges{{0, stop - start}};
    ranges = split_by(block, mn, ranges, 1e-6);
    ranges = split_by(block, msz, ranges, 1e-6);
    ranges = split_by(block, ms2, ranges, 1e-6);

    std::vector<SpectrumLevel> group;
    for (int k = 0; k < stop - start; ++k) {
      SpectrumLevel l;
      l.state = block.col(k);
      l.energy = energies(start + k);
      l.n_particles = real_expect(mn, l.state);
      l.sz = real_expect(msz, l.state);
      l.s_squared = real_expect(ms2, l.state);
      group.push_back(std::move(l));
    }
    std::stable_sort(group.begin(), group.end(),
                     [](const SpectrumLevel& a, const SpectrumLevel& b) {
                       if (std::abs(a.s_squared - b.s_squared) > 1e-6)
                         return a.s_squared < b.s_squared;
                       return a.sz < b.sz - 1e-6;
                     });
    for (auto& l : group) out.levels.push_back(std::move(l));
    start = stop;
  }
  return out;
}

double accuracy_log10(double e, double e_ref) {
  double diff = std::abs(e - e_ref);
  if (diff < 1e-12) return -12.0;
  return std::max(std::log10(diff), -12.0);
}

}  // namespace vqx
