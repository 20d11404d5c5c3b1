// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qmetric/errors.hpp"
#include "qmetric/numerics.hpp"

namespace qmetric {

// States are stored unit-normalized; the physical N-particle state carries
// squared norm N. The metrics below need only N and the overlap of the
// unit-normalized pair, which is what OverlapValue holds.

/// Complex inner product of two unit-normalized states, in polar form.
/// modulus lies in [0, 1] (clamped), phase in (-pi, pi].
struct OverlapValue {
  double modulus = 0.0;
  double phase = 0.0;
};

/// Build an OverlapValue from a raw inner product, clamping quadrature
/// noise above 1 and rejecting anything beyond the Cauchy-Schwarz slack.
OverlapValue make_overlap(std::complex<double> inner);

enum class DomainKind { Lattice, Radial };

/// Integration domain of a single-particle density: lattice sites with
/// unit weight, or a radial grid whose weights carry the 4*pi*r^2 measure.
struct DensityDomain {
  DomainKind kind = DomainKind::Lattice;
  std::vector<double> positions;
  std::vector<double> weights;

  bool same_as(const DensityDomain& other) const;
};

DensityDomain lattice_domain(int n_sites);
DensityDomain radial_domain(const Grid1D& grid);

/// Nonnegative single-particle density integrating to the particle number.
struct DensityProfile {
  int particle_count = 0;
  DensityDomain domain;
  std::vector<double> values;

  double integrated() const;
  void validate() const;  // values >= 0, integral within 1e-6 of N
};

/// Wave-function distance D_psi = sqrt(2N (1 - |overlap|)): the
/// phase-minimized norm distance between two states of squared norm N.
/// Gauge copies are assigned distance zero.
double d_psi(int particle_count, const OverlapValue& s);

/// Gauge-sensitive variant without the phase minimization:
/// sqrt(2N (1 - modulus cos(phase))). For gauge copies (modulus 1) this is
/// 2 sqrt(N) |sin(phase/2)|, which ranges up to 2 sqrt(N) at phase pi.
double d_psi_tilde(int particle_count, const OverlapValue& s);

/// Density distance: integral of |rho1 - rho2| over the shared domain.
double d_rho(const DensityProfile& rho1, const DensityProfile& rho2);

/// Minimal distance between densities of different particle number:
/// the difference |N - N'| of the sphere radii.
double d_rho_min(int n, int n_prime);

/// Minimal distance between wave functions of different particle number:
/// |sqrt(N) - sqrt(N')|, which vanishes for adjacent large N.
double d_psi_min(int n, int n_prime);

enum class StateKind { WaveFunction, Density };

/// Radius of the metric sphere on which all N-particle states live:
/// N for densities, sqrt(N) for wave functions, both centered on the
/// zero state.
double distance_to_zero_state(int particle_count, StateKind kind);

/// Margins of a computed distance pair against the attainable maxima
/// D_psi <= sqrt(2N), D_rho <= 2N and the triangle bound 2 sqrt(N).
struct BoundReport {
  int particle_count = 0;
  double d_psi = 0.0;
  double d_rho = 0.0;
  double psi_bound = 0.0;           // sqrt(2N)
  double rho_bound = 0.0;           // 2N
  double psi_triangle_bound = 0.0;  // 2 sqrt(N)
  double psi_margin = 0.0;
  double rho_margin = 0.0;
  double psi_triangle_margin = 0.0;
};

/// Checks a distance pair for two equal-N states against both bounds
/// (tolerance 1e-9). Throws BoundViolation naming the violated bound.
BoundReport check_bounds(double dpsi_value, double drho_value, int particle_count);

}  // namespace qmetric
