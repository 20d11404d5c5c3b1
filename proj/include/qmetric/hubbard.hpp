// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qmetric/metric.hpp"
#include "qmetric/numerics.hpp"

namespace qmetric {

/// One-dimensional Hubbard chain with open boundaries and a parabolic
/// on-site confinement v_i = omega (i - (L+1)/2)^2, i = 1..L. The hopping
/// t = 1 sets the energy unit.
struct HubbardParams {
  int sites = 8;
  int n_up = 1;
  int n_down = 1;
  double t = 1.0;
  double u = 0.0;
  double omega = 0.0;

  int particle_count() const { return n_up + n_down; }
  bool same_sector(const HubbardParams& o) const {
    return sites == o.sites && n_up == o.n_up && n_down == o.n_down;
  }
  void validate() const;
};

/// Occupation-number basis of a fixed (n_up, n_down) sector: every pair of
/// bitmasks with the right particle counts, masks ascending within each
/// spin species, combined index = i_up * (#down masks) + i_down.
struct FockBasis {
  int sites = 0;
  int n_up = 0;
  int n_down = 0;
  std::vector<std::uint32_t> up_masks;
  std::vector<std::uint32_t> down_masks;

  std::size_t dimension() const { return up_masks.size() * down_masks.size(); }
};

FockBasis enumerate_basis(int sites, int n_up, int n_down);

/// Sparse symmetric action of the sector Hamiltonian
///   H = -t sum_{i,sigma} (hop i -> i+1 + h.c.) + U sum_i n_up n_down
///       + sum_i v_i (n_up + n_down),
/// with fermionic signs from the bit-count ordering within each species
/// (adjacent hops on an open chain carry sign +1).
class HubbardHamiltonian {
 public:
  explicit HubbardHamiltonian(const HubbardParams& params);

  const HubbardParams& params() const { return params_; }
  const FockBasis& basis() const { return *basis_; }
  std::shared_ptr<const FockBasis> shared_basis() const { return basis_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(basis_->dimension()); }

  void apply(Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<Eigen::VectorXd> y) const;
  Eigen::MatrixXd dense() const;

 private:
  HubbardParams params_;
  std::shared_ptr<const FockBasis> basis_;
  std::vector<double> diagonal_;
  // CSR without the diagonal.
  std::vector<std::size_t> row_start_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> vals_;
};

/// Parabolic trap values v_i for i = 1..L.
std::vector<double> onsite_potential(const HubbardParams& params);

/// One-body L x L matrix (hopping plus trap); its occupied level sums give
/// the U = 0 ground-state energy.
SymmetricMatrix one_body_matrix(const HubbardParams& params);

struct LatticeGroundState {
  HubbardParams params;
  double energy = 0.0;
  Eigen::VectorXd coefficients;  // unit norm over the sector basis
  bool degenerate = false;
  std::shared_ptr<const FockBasis> basis;
};

struct HubbardSolverSettings {
  Eigen::Index dense_threshold = 2048;
  int lanczos_max_iter = 500;
  std::uint64_t lanczos_seed = 12345;
};

/// Lowest eigenpair of the sector Hamiltonian: dense below the threshold,
/// Lanczos above. degenerate is set when the gap to the next state is
/// below 1e-10 * max(1, |E0|).
LatticeGroundState ground_state(const HubbardParams& params,
                                const HubbardSolverSettings& settings = {});

/// Site-resolved density <n_i>; sums to the particle number.
DensityProfile site_density(const LatticeGroundState& gs);

/// Inner product of two ground states of the same sector. Coefficients are
/// real, so the phase is 0 or pi.
OverlapValue lattice_overlap(const LatticeGroundState& a, const LatticeGroundState& b);

}  // namespace qmetric
