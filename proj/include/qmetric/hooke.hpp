// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qmetric/metric.hpp"
#include "qmetric/numerics.hpp"

namespace qmetric {

/// Two electrons in a 3D harmonic trap with Coulomb repulsion,
/// H = -1/2 (del1^2 + del2^2) + 1/2 w^2 (r1^2 + r2^2) + 1/r12 (atomic
/// units). Separates exactly into a center-of-mass Gaussian exp(-w R^2)
/// of energy 3w/2 and an s-wave relative problem.
struct HookeParams {
  double omega = 0.5;
  void validate() const;
};

struct HookeAccuracy {
  int n_points = 4000;            // interior nodes of the uniform radial grid
  double r_max_factor = 12.0;     // r_max = factor / sqrt(omega)
  int density_radial_nodes = 400; // r2 quadrature of the density integral
  int density_angular_nodes = 64; // angular quadrature of the density integral
};

/// Relative-motion solution of -u'' + (w^2 r^2 / 4 + coulomb/r) u = eps u
/// with u(0) = u(r_max) = 0 on a uniform grid, normalized to
/// integral(u^2 dr) = 1. Ground state, so u is nodeless and positive.
struct RadialSolution {
  double epsilon = 0.0;
  double step = 0.0;
  double r_max = 0.0;
  std::vector<double> u;  // u(j*step), j = 1..n_points

  double value_at(double r) const;  // cubic interpolation, 0 outside
  double linear_at(double r) const;
};

RadialSolution solve_relative(double omega, double r_max, int n_points, bool coulomb_on = true);

struct HookeState {
  HookeParams params;
  HookeAccuracy accuracy;
  double cm_exponent = 0.0;   // Phi_cm proportional to exp(-cm_exponent R^2)
  double epsilon_rel = 0.0;
  double energy_total = 0.0;  // 3 omega / 2 + epsilon_rel
  RadialSolution relative;
};

HookeState solve_hooke(const HookeParams& params, const HookeAccuracy& accuracy = {});

/// Overlap of the two normalized center-of-mass Gaussians:
/// [2 sqrt(w1 w2)/(w1+w2)]^{3/2}.
double cm_overlap(double omega1, double omega2);

/// Full overlap: cm_overlap times integral(u1 u2 dr), the coarser relative
/// solution linearly interpolated onto the finer grid. Phase 0.
OverlapValue hooke_overlap(const HookeState& a, const HookeState& b);

/// Radial density rho(r1) = 2 integral |psi(r1, r2)|^2 d3r2, evaluated by
/// Gauss-Legendre quadrature over r2 and the (transformed) angle. The
/// result integrates to 2 over the output grid; drift beyond 1e-4 is
/// reported as a quadrature failure.
DensityProfile hooke_density(const HookeState& state, const Grid1D& grid);

/// Radius enclosing the density support to well below quadrature noise.
double hooke_density_radius(const HookeState& state);

}  // namespace qmetric
