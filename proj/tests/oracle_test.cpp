#include <cmath>
#include <vector>

#include "doctest.h"
#include "support/dense.hpp"
#include "vqx/molecule.hpp"
#include "vqx/oracle.hpp"

using vqx::Encoding;
using vqx::Geometry;
using vqx::PauliSum;
using vqx::Spectrum;

namespace {

struct Fixture {
  PauliSum h;
  vqx::SpinObservables obs;
  Spectrum spectrum;

  explicit Fixture(double r = 0.7, const char* mol = "H2")
      : h(vqx::qubit_hamiltonian(Geometry::diatomic(mol, r),
                                 Encoding::bravyi_kitaev)),
        obs(vqx::build_observables(2, Encoding::bravyi_kitaev)),
        spectrum(vqx::fci_spectrum(h, obs)) {}
};

double nearest(double x, const std::vector<double>& allowed) {
  double best = allowed.front();
  for (double a : allowed)
    if (std::abs(x - a) < std::abs(x - best)) best = a;
  return std::abs(x - best);
}

}  // namespace

TEST_CASE("spectrum energies equal the dense eigenvalues in order") {
  const Fixture f;
  const auto dense = testsupport::sorted_eigenvalues(f.h.to_matrix());
  REQUIRE(f.spectrum.levels.size() == dense.size());
  for (size_t i = 0; i < dense.size(); ++i) {
    CHECK(f.spectrum.levels[i].energy ==
          doctest::Approx(dense[i]).epsilon(1e-10));
    if (i > 0)
      CHECK(f.spectrum.levels[i].energy >=
            f.spectrum.levels[i - 1].energy - 1e-12);
  }
}

TEST_CASE("every level is an eigenvector with sharp symmetry labels") {
  const Fixture f;
  const Eigen::MatrixXcd hm = f.h.to_matrix();
  for (const auto& level : f.spectrum.levels) {
    const Eigen::VectorXcd& v = level.state;
    REQUIRE(v.size() == 16);
    CHECK(std::abs(v.norm() - 1.0) < 1e-10);
    CHECK((hm * v - level.energy * v).norm() < 1e-8);
    CHECK(nearest(level.n_particles, {0, 1, 2, 3, 4}) < 1e-6);
    CHECK(nearest(level.sz, {-1, -0.5, 0, 0.5, 1}) < 1e-6);
    CHECK(nearest(level.s_squared, {0, 0.75, 2}) < 1e-6);
  }
}

TEST_CASE("labels agree with independently built dense observables") {
  const Fixture f;
  const Eigen::MatrixXcd nm = testsupport::dense_sum(f.obs.number);
  const Eigen::MatrixXcd szm = testsupport::dense_sum(f.obs.sz);
  const Eigen::MatrixXcd s2m = testsupport::dense_sum(f.obs.s_squared);
  for (const auto& level : f.spectrum.levels) {
    const Eigen::VectorXcd& v = level.state;
    CHECK((v.adjoint() * nm * v)(0, 0).real() ==
          doctest::Approx(level.n_particles).epsilon(1e-9));
    CHECK((v.adjoint() * szm * v)(0, 0).real() ==
          doctest::Approx(level.sz).scale(1.0).epsilon(1e-9));
    CHECK((v.adjoint() * s2m * v)(0, 0).real() ==
          doctest::Approx(level.s_squared).scale(1.0).epsilon(1e-9));
  }
}

TEST_CASE("find_level walks sectors by rank in ascending energy") {
  const Fixture f;
  const int ground = f.spectrum.find_level(2, 0, 0, 0);
  const int triplet = f.spectrum.find_level(2, 0, 2, 0);
  const int singlet = f.spectrum.find_level(2, 0, 0, 1);
  const int doubly = f.spectrum.find_level(2, 0, 0, 2);
  REQUIRE(ground >= 0);
  REQUIRE(triplet >= 0);
  REQUIRE(singlet >= 0);
  REQUIRE(doubly >= 0);
  const auto e = [&](int i) { return f.spectrum.levels[i].energy; };
  CHECK(e(ground) < e(triplet));
  CHECK(e(triplet) < e(singlet));
  CHECK(e(singlet) < e(doubly));
  CHECK(f.spectrum.find_level(2, 0, 0, 3) == -1);
  CHECK(f.spectrum.find_level(2, 0, 6, 0) == -1);
}

TEST_CASE("the h2 triplet is threefold degenerate across sz") {
  const Fixture f;
  const int up = f.spectrum.find_level(2, 1, 2, 0);
  const int mid = f.spectrum.find_level(2, 0, 2, 0);
  const int down = f.spectrum.find_level(2, -1, 2, 0);
  REQUIRE(up >= 0);
  REQUIRE(mid >= 0);
  REQUIRE(down >= 0);
  const double e0 = f.spectrum.levels[mid].energy;
  CHECK(std::abs(f.spectrum.levels[up].energy - e0) < 1e-9);
  CHECK(std::abs(f.spectrum.levels[down].energy - e0) < 1e-9);
}

TEST_CASE("heh doublets appear as degenerate sz pairs") {
  const Fixture f(1.0, "HeH");
  const int up = f.spectrum.find_level(3, 0.5, 0.75, 0);
  const int down = f.spectrum.find_level(3, -0.5, 0.75, 0);
  REQUIRE(up >= 0);
  REQUIRE(down >= 0);
  CHECK(std::abs(f.spectrum.levels[up].energy -
                 f.spectrum.levels[down].energy) < 1e-9);
  const int up2 = f.spectrum.find_level(3, 0.5, 0.75, 1);
  REQUIRE(up2 >= 0);
  CHECK(f.spectrum.levels[up2].energy > f.spectrum.levels[up].energy + 0.1);
}

TEST_CASE("accuracy is the log10 error clamped at minus twelve") {
  CHECK(vqx::accuracy_log10(-1.0, -1.001) == doctest::Approx(-3.0));
  CHECK(vqx::accuracy_log10(2.5, 2.5) == doctest::Approx(-12.0));
  CHECK(vqx::accuracy_log10(1.0, 1.0 + 1e-15) == doctest::Approx(-12.0));
  CHECK(vqx::accuracy_log10(0.0, 0.5) == doctest::Approx(std::log10(0.5)));
}
