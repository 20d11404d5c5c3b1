// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qmetric/hubbard.hpp"

using namespace qmetric;

namespace {

HubbardParams params(int sites, int n_up, int n_down, double t, double u, double omega) {
  HubbardParams p;
  p.sites = sites;
  p.n_up = n_up;
  p.n_down = n_down;
  p.t = t;
  p.u = u;
  p.omega = omega;
  return p;
}

// U = 0 oracle: sum of the occupied single-particle levels.
double free_fermion_energy(const HubbardParams& p) {
  const auto levels = eigh_lowest(one_body_matrix(p), p.sites);
  double e = 0.0;
  for (int j = 0; j < p.n_up; ++j) e += levels[static_cast<std::size_t>(j)].value;
  for (int j = 0; j < p.n_down; ++j) e += levels[static_cast<std::size_t>(j)].value;
  return e;
}

}  // namespace

TEST_CASE("enumerate_basis dimensions") {
  CHECK(enumerate_basis(2, 1, 1).dimension() == 4);
  CHECK(enumerate_basis(8, 4, 4).dimension() == 4900);
  CHECK(enumerate_basis(8, 1, 1).dimension() == 64);
  CHECK_THROWS_AS(enumerate_basis(4, 5, 1), ValidationError);
}

TEST_CASE("enumerate_basis is ascending and duplicate-free") {
  const auto b = enumerate_basis(6, 3, 2);
  CHECK(b.up_masks.size() == 20);
  CHECK(b.down_masks.size() == 15);
  CHECK(std::is_sorted(b.up_masks.begin(), b.up_masks.end()));
  CHECK(std::adjacent_find(b.up_masks.begin(), b.up_masks.end()) == b.up_masks.end());
  for (auto m : b.up_masks) CHECK(std::popcount(m) == 3);
}

TEST_CASE("two-site hopping block has eigenvalues -t and +t") {
  const HubbardHamiltonian h(params(2, 1, 0, 1.0, 0.0, 0.0));
  REQUIRE(h.dimension() == 2);
  const auto pairs = eigh_lowest(SymmetricMatrix::dense(h.dense()), 2);
  CHECK(pairs[0].value == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(pairs[1].value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("diagonal limit: ground energy is the sum of the smallest trap values") {
  const auto p = params(5, 1, 1, 0.0, 0.0, 0.9);
  const auto gs = ground_state(p);
  const auto v = onsite_potential(p);
  // Both electrons sit on the central site (v = 0 there for L = 5).
  CHECK(*std::min_element(v.begin(), v.end()) == 0.0);
  CHECK(gs.energy == doctest::Approx(0.0).epsilon(1e-14));

  const auto p2 = params(5, 2, 1, 0.0, 0.0, 0.9);
  auto sorted = onsite_potential(p2);
  std::sort(sorted.begin(), sorted.end());
  CHECK(ground_state(p2).energy == doctest::Approx(sorted[0] + sorted[1] + sorted[0]));
}

TEST_CASE("hamiltonian is exactly symmetric") {
  const HubbardHamiltonian h(params(5, 2, 1, 1.0, 1.3, 0.7));
  const auto m = h.dense();
  CHECK((m - m.transpose()).norm() == 0.0);
}

TEST_CASE("dense apply matches dense matrix") {
  const HubbardHamiltonian h(params(4, 2, 2, 1.0, 2.5, 0.3));
  const auto m = h.dense();
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(h.dimension(), -1.0, 1.0);
  Eigen::VectorXd y(h.dimension());
  h.apply(x, y);
  CHECK((y - m * x).norm() < 1e-13);
}

TEST_CASE("dimer ground energy: U/2 - sqrt((U/2)^2 + 4 t^2)") {
  for (double u : {0.0, 2.0, 6.0}) {
    const auto gs = ground_state(params(2, 1, 1, 1.0, u, 0.0));
    const double expected = 0.5 * u - std::sqrt(0.25 * u * u + 4.0);
    CHECK(std::abs(gs.energy - expected) < 1e-12);
  }
}

TEST_CASE("open chain, two particles, U = 0: doubly occupied lowest level") {
  const auto gs = ground_state(params(8, 1, 1, 1.0, 0.0, 0.0));
  CHECK(std::abs(gs.energy - (-4.0 * std::cos(std::numbers::pi / 9.0))) < 1e-10);
}

TEST_CASE("ground energy increases monotonically with U") {
  double prev = -1e300;
  for (double u : {0.0, 2.0, 4.0, 6.0, 8.0}) {
    const double e = ground_state(params(6, 1, 1, 1.0, u, 0.5)).energy;
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("U = 0 sectors match single-particle level sums") {
  for (int n_up = 0; n_up <= 3; ++n_up) {
    for (int n_down = 0; n_down <= 3; ++n_down) {
      if (n_up + n_down == 0) continue;
      const auto p = params(6, n_up, n_down, 1.0, 0.0, 1.1);
      CHECK(std::abs(ground_state(p).energy - free_fermion_energy(p)) < 1e-10);
    }
  }
}

TEST_CASE("site density: symmetry, normalization, diagonal limit") {
  const auto sym = site_density(ground_state(params(2, 1, 1, 1.0, 3.0, 0.0)));
  CHECK(sym.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sym.values[1] == doctest::Approx(1.0).epsilon(1e-12));

  const auto pinned = site_density(ground_state(params(5, 1, 1, 0.0, 0.0, 0.9)));
  CHECK(pinned.values[2] == doctest::Approx(2.0).epsilon(1e-12));

  for (double u : {0.0, 4.0}) {
    const auto rho = site_density(ground_state(params(6, 2, 1, 1.0, u, 0.8)));
    CHECK(rho.integrated() == doctest::Approx(3.0).epsilon(1e-10));
  }
}

TEST_CASE("trap-centered densities are reflection symmetric") {
  const auto rho = site_density(ground_state(params(8, 2, 2, 1.0, 2.0, 1.0)));
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(rho.values[static_cast<std::size_t>(i)] -
                   rho.values[static_cast<std::size_t>(7 - i)]) < 1e-10);
}

TEST_CASE("lattice overlap: determinism and confinement sensitivity") {
  const auto a = ground_state(params(8, 1, 1, 1.0, 2.0, 4.0));
  const auto b = ground_state(params(8, 1, 1, 1.0, 2.0, 4.0));
  CHECK(lattice_overlap(a, a).modulus == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lattice_overlap(a, b).modulus == doctest::Approx(1.0).epsilon(1e-10));

  const auto c = ground_state(params(8, 1, 1, 1.0, 2.0, 0.1));
  const double m = lattice_overlap(a, c).modulus;
  CHECK(m > 0.0);
  CHECK(m < 1.0);

  const auto other = ground_state(params(8, 2, 2, 1.0, 2.0, 4.0));
  CHECK_THROWS_AS(lattice_overlap(a, other), ValidationError);
}

TEST_CASE("Lanczos path agrees with the dense path") {
  // L=6 half filling: dimension 400.
  const auto p = params(6, 3, 3, 1.0, 4.0, 0.5);
  const auto dense = ground_state(p);
  HubbardSolverSettings force_lanczos;
  force_lanczos.dense_threshold = 1;
  const auto lz = ground_state(p, force_lanczos);
  CHECK(std::abs(dense.energy - lz.energy) < 1e-8);
  CHECK(lattice_overlap(dense, lz).modulus == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("overlap modulus never exceeds one") {
  const auto a = ground_state(params(6, 2, 2, 1.0, 2.0, 4.0));
  for (double w : {0.05, 0.7, 2.0, 4.0}) {
    const auto b = ground_state(params(6, 2, 2, 1.0, 2.0, w));
    CHECK(lattice_overlap(a, b).modulus <= 1.0 + 1e-12);
  }
}
