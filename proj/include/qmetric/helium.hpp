// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "qmetric/metric.hpp"
#include "qmetric/numerics.hpp"

namespace qmetric {

/// Helium-like ion: two electrons bound to a nuclear charge Z,
/// H = -1/2 (del1^2 + del2^2) - Z/r1 - Z/r2 + 1/r12 (Hartree units).
/// Solved variationally in an explicitly-correlated Gaussian basis whose
/// overlaps, Hamiltonian blocks and densities are all closed-form.
struct HeliumParams {
  double z = 2.0;
  int basis_size = 32;
  std::uint64_t seed = 12345;
  double z_min = 0.95;  // below ~0.91 the second electron unbinds

  void validate() const;
};

/// One spatial basis term exp(-a r1^2 - b r2^2 - c r12^2); the singlet
/// combination with r1 <-> r2 exchanged is implied.
struct ECGBasisTerm {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  bool positive_definite() const;
};

struct PairIntegrals {
  double overlap = 0.0;
  double kinetic = 0.0;
  double nuclear = 0.0;    // includes the -Z prefactor
  double repulsion = 0.0;
};

/// Exchange-symmetrized matrix elements between two basis terms.
PairIntegrals ecg_matrix_elements(const ECGBasisTerm& k, const ECGBasisTerm& l, double z);

struct HeliumOptions {
  bool include_repulsion = true;
  bool correlated = true;   // when false the c exponents stay at zero
  int refine_trials = 500;  // stochastic swap budget, accept on strict decrease
};

struct HeliumState {
  HeliumParams params;
  HeliumOptions options;
  std::vector<ECGBasisTerm> terms;
  std::vector<double> term_norms;  // 1/sqrt(<term|term>)
  Eigen::VectorXd coefficients;    // over normalized terms, unit S-norm
  double energy = 0.0;
};

/// Tempered geometric start (a, b in [Z^2 1e-2, Z^2 1e2], c in [1e-2, 10])
/// refined by seeded stochastic swaps, then a generalized symmetric
/// eigenproblem with S-eigenvalues below 1e-10 discarded.
HeliumState solve_helium(const HeliumParams& params, const HeliumOptions& options = {});

/// Ground-state energy using only the first k terms of the state's basis;
/// decreases monotonically in k by the variational principle.
double prefix_energy(const HeliumState& state, int k);

/// Cross-state overlap contracted over both bases; states may differ in Z,
/// basis and seed. Phase 0 with the dominant-coefficient sign convention.
OverlapValue helium_overlap(const HeliumState& s1, const HeliumState& s2);

/// Closed-form radial density rho(r1) = 2 integral |psi|^2 d3r2 evaluated
/// on the output grid; integrates to 2 within 1e-8 on an adequate grid.
DensityProfile helium_density(const HeliumState& state, const Grid1D& grid);

/// <V>/<T>; -2 at a converged Coulomb ground state.
double virial_ratio(const HeliumState& state);

/// Radius enclosing the density support for grid construction.
double helium_density_radius(const HeliumState& state);

}  // namespace qmetric
