// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qmetric/helium.hpp"

using namespace qmetric;

namespace {

constexpr double kPi = std::numbers::pi;

HeliumParams he(double z, int k = 32, std::uint64_t seed = 12345) {
  HeliumParams p;
  p.z = z;
  p.basis_size = k;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("uncorrelated identical terms factorize") {
  const double a = 1.3;
  const ECGBasisTerm t{a, a, 0.0};
  const auto e = ecg_matrix_elements(t, t, 2.0);
  // <t_hat|t_hat> = 4 <t|t> = 4 (pi/2a)^3 for the symmetric term.
  const double single = std::pow(kPi / (2.0 * a), 1.5);
  CHECK(e.overlap == doctest::Approx(4.0 * single * single).epsilon(1e-13));

  // Nuclear piece: 4 * (-z) * 2 * norm(r2) * coulomb(r1).
  const double coulomb = 2.0 * kPi / (2.0 * a);
  CHECK(e.nuclear == doctest::Approx(-2.0 * 4.0 * 2.0 * single * coulomb).epsilon(1e-13));

  // Kinetic piece: two electrons, each 3 a^2 pi^{3/2} (2a)^{-5/2} times the
  // spectator norm.
  const double t_single = 3.0 * a * a * std::pow(kPi, 1.5) / std::pow(2.0 * a, 2.5);
  CHECK(e.kinetic == doctest::Approx(4.0 * 2.0 * t_single * single).epsilon(1e-13));
}

TEST_CASE("matrix elements are exchange symmetric") {
  const ECGBasisTerm t1{1.1, 0.4, 0.2};
  const ECGBasisTerm t1s{0.4, 1.1, 0.2};
  const ECGBasisTerm t2{2.3, 0.9, 0.05};
  const ECGBasisTerm t2s{0.9, 2.3, 0.05};
  const auto e = ecg_matrix_elements(t1, t2, 1.7);
  for (const auto& [k, l] : {std::pair{t1s, t2}, {t1, t2s}, {t1s, t2s}}) {
    const auto f = ecg_matrix_elements(k, l, 1.7);
    CHECK(f.overlap == doctest::Approx(e.overlap).epsilon(1e-14));
    CHECK(f.kinetic == doctest::Approx(e.kinetic).epsilon(1e-14));
    CHECK(f.nuclear == doctest::Approx(e.nuclear).epsilon(1e-14));
    CHECK(f.repulsion == doctest::Approx(e.repulsion).epsilon(1e-14));
  }
  const auto g = ecg_matrix_elements(t2, t1, 1.7);
  CHECK(g.overlap == doctest::Approx(e.overlap).epsilon(1e-14));
}

TEST_CASE("repulsion integral against a quadrature oracle") {
  // Uncorrelated unequal exponents: <1/r12> reduces to a two-center
  // Gaussian Coulomb integral, evaluated via the displaced kernel.
  const double a = 0.9, b = 1.7;
  const ECGBasisTerm t{a, b, 0.0};
  const auto e = ecg_matrix_elements(t, t, 2.0);

  // dir = int e^{-2a r1^2} [int e^{-2b r2^2}/r12 d3r2] d3r1; the inner
  // integral is the displaced Gaussian-Coulomb kernel at distance r1.
  const auto grid = gauss_legendre(400, 0.0, 12.0);
  auto folded = [&grid](double outer, double inner) {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = grid.nodes[i];
      acc += grid.weights[i] * 4.0 * kPi * r * r * std::exp(-outer * r * r) *
             gaussian_coulomb_displaced(inner, r);
    }
    return acc;
  };
  const double dir = folded(2.0 * a, 2.0 * b);
  const double exc = folded(a + b, a + b);
  CHECK(e.repulsion == doctest::Approx(2.0 * (dir + exc)).epsilon(1e-10));
}

TEST_CASE("positive definiteness is enforced") {
  CHECK(ECGBasisTerm{1.0, 1.0, 0.5}.positive_definite());
  CHECK_FALSE(ECGBasisTerm{-0.1, 1.0, 0.0}.positive_definite());
  CHECK_FALSE(ECGBasisTerm{0.1, 0.1, -0.2}.positive_definite());
  CHECK_THROWS_AS(ecg_matrix_elements({-1.0, 1.0, 0.0}, {1.0, 1.0, 0.0}, 2.0), ValidationError);
}

TEST_CASE("non-interacting limit reproduces -Z^2") {
  HeliumOptions opt;
  opt.include_repulsion = false;
  opt.correlated = false;
  for (double z : {1.0, 2.0}) {
    const auto state = solve_helium(he(z, 10), opt);
    CHECK(std::abs(state.energy - (-z * z)) < 2e-3);
  }
}

TEST_CASE("variational chain over nested bases") {
  const auto state = solve_helium(he(2.0, 32));
  const double e2 = prefix_energy(state, 2);
  const double e8 = prefix_energy(state, 8);
  const double e32 = prefix_energy(state, 32);
  CHECK(e32 < e8);
  CHECK(e8 < e2);
  CHECK(e32 == doctest::Approx(state.energy).epsilon(1e-12));
}

TEST_CASE("helium ground state is converged at K = 32") {
  const auto s32 = solve_helium(he(2.0, 32));
  CHECK(s32.energy < -2.85);
  const auto s48 = solve_helium(he(2.0, 48));
  CHECK(std::abs(s32.energy - s48.energy) < 2e-3);
}

TEST_CASE("helium overlap: identity, locality, monotone decay") {
  const auto ref = solve_helium(he(2.0));
  CHECK(helium_overlap(ref, ref).modulus == doctest::Approx(1.0).epsilon(1e-9));

  const auto near = solve_helium(he(2.05));
  const double m = helium_overlap(ref, near).modulus;
  CHECK(m > 0.99);
  CHECK(m < 1.0);

  const auto z3 = solve_helium(he(3.0));
  const double m32 = helium_overlap(z3, ref).modulus;
  const double m31 = helium_overlap(z3, solve_helium(he(1.0))).modulus;
  CHECK(m31 < m32);
}

TEST_CASE("converged state is basis independent") {
  const auto a = solve_helium(he(2.0, 32, 12345));
  const auto b = solve_helium(he(2.0, 32, 98765));
  CHECK(helium_overlap(a, b).modulus >= 0.999);
}

TEST_CASE("density: normalization, hydrogenic peak, charge contraction") {
  const auto state = solve_helium(he(2.0));
  const auto grid = gauss_legendre(512, 0.0, helium_density_radius(state));
  const auto rho = helium_density(state, grid);
  CHECK(std::abs(rho.integrated() - 2.0) < 1e-8);

  // Repulsion off: radial probability peaks near r = 1/Z.
  HeliumOptions opt;
  opt.include_repulsion = false;
  opt.correlated = false;
  const auto hydrogenic = solve_helium(he(2.0, 10), opt);
  const auto fine = gauss_legendre(2000, 0.0, 6.0);
  const auto rho_h = helium_density(hydrogenic, fine);
  double best = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double f = 4.0 * kPi * fine.nodes[i] * fine.nodes[i] * rho_h.values[i];
    if (f > best) {
      best = f;
      peak = fine.nodes[i];
    }
  }
  CHECK(std::abs(peak - 0.5) < 0.05 * 0.5);

  // <r> decreases with Z.
  auto mean_radius = [](double z) {
    const auto s = solve_helium(he(z));
    const auto g = gauss_legendre(512, 0.0, helium_density_radius(s));
    const auto r = helium_density(s, g);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      acc += r.domain.weights[i] * r.values[i] * g.nodes[i];
    return acc / 2.0;
  };
  double prev = 1e300;
  for (double z : {1.5, 2.0, 2.5, 3.0}) {
    const double mr = mean_radius(z);
    CHECK(mr < prev);
    prev = mr;
  }
}

TEST_CASE("virial ratio is close to -2") {
  for (double z : {1.5, 3.0}) {
    const auto state = solve_helium(he(z));
    CHECK(std::abs(virial_ratio(state) + 2.0) < 0.02);
  }
}

TEST_CASE("electron relabeling leaves the spectrum unchanged") {
  auto state = solve_helium(he(2.0, 12));
  HeliumState swapped = state;
  for (auto& t : swapped.terms) std::swap(t.a, t.b);
  CHECK(prefix_energy(swapped, 12) == doctest::Approx(state.energy).epsilon(1e-9));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(solve_helium(he(0.5)), ValidationError);   // below Z_min
  CHECK_THROWS_AS(solve_helium(he(2.0, 0)), ValidationError);
  CHECK_NOTHROW(solve_helium(he(0.95, 8)));                  // the sweep floor itself
}
