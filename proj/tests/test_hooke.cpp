// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qmetric/hooke.hpp"

using namespace qmetric;

TEST_CASE("omega = 1/2 is the exactly solvable point with total energy 2") {
  const auto s = solve_hooke({0.5});
  CHECK(std::abs(s.energy_total - 2.0) < 1e-4);
  CHECK(s.cm_exponent == 0.5);
}

TEST_CASE("relative eigenvalue is stationary under grid doubling") {
  const double omega = 0.5;
  const double r_max = 12.0 / std::sqrt(omega);
  const double e1 = solve_relative(omega, r_max, 4000).epsilon;
  const double e2 = solve_relative(omega, r_max, 8000).epsilon;
  CHECK(std::abs(e2 - e1) < 1e-6);
}

TEST_CASE("pure oscillator limit: epsilon = 3 omega / 2 and <r^2> = 3/omega") {
  const double omega = 0.7;
  const auto sol = solve_relative(omega, 12.0 / std::sqrt(omega), 4000, false);
  CHECK(std::abs(sol.epsilon - 1.5 * omega) < 1e-6);

  double r2 = 0.0;
  for (std::size_t j = 0; j < sol.u.size(); ++j) {
    const double r = (static_cast<double>(j) + 1.0) * sol.step;
    r2 += sol.u[j] * sol.u[j] * r * r;
  }
  r2 *= sol.step;
  CHECK(std::abs(r2 - 3.0 / omega) < 1e-4 * (3.0 / omega));
}

TEST_CASE("switching on the repulsion raises the relative eigenvalue") {
  const double omega = 0.8;
  const double r_max = 12.0 / std::sqrt(omega);
  CHECK(solve_relative(omega, r_max, 2000).epsilon >
        solve_relative(omega, r_max, 2000, false).epsilon);
}

TEST_CASE("cm_overlap closed form") {
  CHECK(cm_overlap(0.37, 0.37) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cm_overlap(0.5, 2.0) == doctest::Approx(std::pow(0.8, 1.5)).epsilon(1e-12));
  CHECK(cm_overlap(0.12, 1.9) == doctest::Approx(cm_overlap(1.9, 0.12)).epsilon(1e-15));
  CHECK_THROWS_AS(cm_overlap(0.0, 1.0), ValidationError);
}

TEST_CASE("hooke_overlap: identity, near-identity, monotone decay") {
  const auto ref = solve_hooke({0.5});
  CHECK(hooke_overlap(ref, ref).modulus == doctest::Approx(1.0).epsilon(1e-8));

  const auto near = solve_hooke({0.55});
  const double m = hooke_overlap(ref, near).modulus;
  CHECK(m > 0.99);
  CHECK(m < 1.0);

  double prev = 1.0;
  for (double w : {0.6, 0.8, 1.2, 2.0, 4.0}) {
    const double cur = hooke_overlap(ref, solve_hooke({w})).modulus;
    CHECK(cur < prev);
    CHECK(cur > 0.0);
    prev = cur;
  }
}

TEST_CASE("hooke_density normalizes to 2 and is positive") {
  for (double omega : {0.05, 0.5, 5.0}) {
    const auto s = solve_hooke({omega});
    const auto grid = gauss_legendre(400, 0.0, hooke_density_radius(s));
    const auto rho = hooke_density(s, grid);
    CHECK(std::abs(rho.integrated() - 2.0) < 1e-6);
    for (double v : rho.values) CHECK(v > 0.0);
    CHECK_NOTHROW(rho.validate());
  }
}

TEST_CASE("stronger confinement pulls the radial peak inward") {
  auto peak_radius = [](double omega) {
    const auto s = solve_hooke({omega});
    const auto grid = gauss_legendre(600, 0.0, hooke_density_radius(s));
    const auto rho = hooke_density(s, grid);
    double best = 0.0, arg = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double f = 4.0 * std::numbers::pi * grid.nodes[i] * grid.nodes[i] * rho.values[i];
      if (f > best) {
        best = f;
        arg = grid.nodes[i];
      }
    }
    return arg;
  };
  CHECK(peak_radius(5.0) < peak_radius(0.5));
}

TEST_CASE("density is insensitive to the angular node count") {
  HookeAccuracy coarse;
  coarse.density_angular_nodes = 48;
  HookeAccuracy fine;
  fine.density_angular_nodes = 96;
  const auto s_coarse = solve_hooke({0.5}, coarse);
  const auto s_fine = solve_hooke({0.5}, fine);
  const auto grid = gauss_legendre(200, 0.0, hooke_density_radius(s_coarse));
  const auto r1 = hooke_density(s_coarse, grid);
  const auto r2 = hooke_density(s_fine, grid);
  double max_diff = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    max_diff = std::max(max_diff, std::abs(r1.values[i] - r2.values[i]));
  CHECK(max_diff < 1e-7);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(solve_hooke({0.0}), ValidationError);
  CHECK_THROWS_AS(solve_hooke({-0.5}), ValidationError);
  CHECK_THROWS_AS(solve_relative(0.5, 10.0, 4), ValidationError);
}
