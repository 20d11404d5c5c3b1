// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qmetric/hubbard.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace qmetric {

namespace {

// All L-bit masks with n bits set, ascending. Gosper's hack.
std::vector<std::uint32_t> combinations(int sites, int n) {
  std::vector<std::uint32_t> masks;
  if (n == 0) {
    masks.push_back(0);
    return masks;
  }
  std::uint32_t v = (1u << n) - 1u;
  const std::uint32_t limit = 1u << sites;
  while (v < limit) {
    masks.push_back(v);
    const std::uint32_t t = v | (v - 1u);
    v = (t + 1u) | (((~t & (t + 1u)) - 1u) >> (std::countr_zero(v) + 1));
    if (v == 0) break;
  }
  return masks;
}

// Sign of moving a fermion between sites i < j within one species:
// (-1)^(occupied sites strictly between). Adjacent hops always give +1.
double hop_sign(std::uint32_t mask, int i, int j) {
  if (i > j) std::swap(i, j);
  const std::uint32_t between = mask & (((1u << j) - 1u) & ~((1u << (i + 1)) - 1u));
  return (std::popcount(between) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

void HubbardParams::validate() const {
  if (sites < 2) throw ValidationError("HubbardParams: need at least 2 sites");
  if (sites > 28) throw ValidationError("HubbardParams: site masks limited to 28 bits");
  if (n_up < 0 || n_down < 0) throw ValidationError("HubbardParams: negative occupancy");
  if (n_up > sites || n_down > sites)
    throw ValidationError("HubbardParams: occupancy exceeds site count");
  if (t < 0.0) throw ValidationError("HubbardParams: need hopping t >= 0");
  if (omega < 0.0) throw ValidationError("HubbardParams: need omega >= 0");
}

FockBasis enumerate_basis(int sites, int n_up, int n_down) {
  HubbardParams check;
  check.sites = sites;
  check.n_up = n_up;
  check.n_down = n_down;
  check.validate();
  FockBasis b;
  b.sites = sites;
  b.n_up = n_up;
  b.n_down = n_down;
  b.up_masks = combinations(sites, n_up);
  b.down_masks = combinations(sites, n_down);
  return b;
}

std::vector<double> onsite_potential(const HubbardParams& params) {
  std::vector<double> v(static_cast<std::size_t>(params.sites));
  const double center = 0.5 * (params.sites + 1);
  for (int i = 1; i <= params.sites; ++i) {
    const double d = i - center;
    v[static_cast<std::size_t>(i - 1)] = params.omega * d * d;
  }
  return v;
}

SymmetricMatrix one_body_matrix(const HubbardParams& params) {
  params.validate();
  const auto v = onsite_potential(params);
  Eigen::VectorXd diag(params.sites);
  Eigen::VectorXd off(params.sites - 1);
  for (int i = 0; i < params.sites; ++i) diag[i] = v[static_cast<std::size_t>(i)];
  off.setConstant(-params.t);
  return SymmetricMatrix::tridiagonal(diag, off);
}

HubbardHamiltonian::HubbardHamiltonian(const HubbardParams& params) : params_(params) {
  params_.validate();
  basis_ = std::make_shared<const FockBasis>(
      enumerate_basis(params.sites, params.n_up, params.n_down));

  const auto& up = basis_->up_masks;
  const auto& down = basis_->down_masks;
  const std::size_t nu = up.size();
  const std::size_t nd = down.size();
  const std::size_t dim = nu * nd;

  std::unordered_map<std::uint32_t, std::uint32_t> up_index, down_index;
  up_index.reserve(nu);
  down_index.reserve(nd);
  for (std::size_t i = 0; i < nu; ++i) up_index[up[i]] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < nd; ++i) down_index[down[i]] = static_cast<std::uint32_t>(i);

  const auto v = onsite_potential(params_);
  diagonal_.resize(dim);
  row_start_.assign(dim + 1, 0);

  // Hop targets within one species, precomputed per mask.
  struct Hop {
    std::uint32_t target_index;
    double sign;
  };
  auto species_hops = [&](const std::vector<std::uint32_t>& masks,
                          const std::unordered_map<std::uint32_t, std::uint32_t>& index) {
    std::vector<std::vector<Hop>> hops(masks.size());
    for (std::size_t m = 0; m < masks.size(); ++m) {
      const std::uint32_t mask = masks[m];
      for (int i = 0; i + 1 < params_.sites; ++i) {
        const std::uint32_t bi = 1u << i;
        const std::uint32_t bj = 1u << (i + 1);
        const bool oi = mask & bi;
        const bool oj = mask & bj;
        if (oi == oj) continue;
        const std::uint32_t moved = mask ^ bi ^ bj;
        hops[m].push_back({index.at(moved), hop_sign(mask, i, i + 1)});
      }
    }
    return hops;
  };
  const auto up_hops = species_hops(up, up_index);
  const auto down_hops = species_hops(down, down_index);

  // Count then fill CSR (off-diagonal part only).
  for (std::size_t iu = 0; iu < nu; ++iu)
    for (std::size_t id = 0; id < nd; ++id)
      row_start_[iu * nd + id + 1] = up_hops[iu].size() + down_hops[id].size();
  for (std::size_t r = 0; r < dim; ++r) row_start_[r + 1] += row_start_[r];
  cols_.resize(row_start_[dim]);
  vals_.resize(row_start_[dim]);

  for (std::size_t iu = 0; iu < nu; ++iu) {
    for (std::size_t id = 0; id < nd; ++id) {
      const std::size_t row = iu * nd + id;
      const std::uint32_t both = up[iu] & down[id];
      double diag = params_.u * std::popcount(both);
      for (int i = 0; i < params_.sites; ++i) {
        const std::uint32_t bi = 1u << i;
        if (up[iu] & bi) diag += v[static_cast<std::size_t>(i)];
        if (down[id] & bi) diag += v[static_cast<std::size_t>(i)];
      }
      diagonal_[row] = diag;

      std::size_t p = row_start_[row];
      for (const auto& h : up_hops[iu]) {
        cols_[p] = static_cast<std::uint32_t>(h.target_index * nd + id);
        vals_[p] = -params_.t * h.sign;
        ++p;
      }
      for (const auto& h : down_hops[id]) {
        cols_[p] = static_cast<std::uint32_t>(iu * nd + h.target_index);
        vals_[p] = -params_.t * h.sign;
        ++p;
      }
    }
  }
}

void HubbardHamiltonian::apply(Eigen::Ref<const Eigen::VectorXd> x,
                               Eigen::Ref<Eigen::VectorXd> y) const {
  const std::size_t dim = basis_->dimension();
  for (std::size_t r = 0; r < dim; ++r) {
    double acc = diagonal_[r] * x[static_cast<Eigen::Index>(r)];
    for (std::size_t p = row_start_[r]; p < row_start_[r + 1]; ++p)
      acc += vals_[p] * x[static_cast<Eigen::Index>(cols_[p])];
    y[static_cast<Eigen::Index>(r)] = acc;
  }
}

Eigen::MatrixXd HubbardHamiltonian::dense() const {
  const auto dim = static_cast<Eigen::Index>(basis_->dimension());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    h(r, r) = diagonal_[static_cast<std::size_t>(r)];
    for (std::size_t p = row_start_[static_cast<std::size_t>(r)];
         p < row_start_[static_cast<std::size_t>(r) + 1]; ++p)
      h(r, static_cast<Eigen::Index>(cols_[p])) = vals_[p];
  }
  return h;
}

LatticeGroundState ground_state(const HubbardParams& params,
                                const HubbardSolverSettings& settings) {
  const HubbardHamiltonian h(params);
  const Eigen::Index dim = h.dimension();
  const int k = dim >= 2 ? 2 : 1;

  std::vector<EigenPair> pairs;
  if (dim <= settings.dense_threshold) {
    pairs = eigh_lowest(SymmetricMatrix::dense(h.dense()), k);
  } else {
    pairs = lanczos_lowest(
        [&h](Eigen::Ref<const Eigen::VectorXd> x, Eigen::Ref<Eigen::VectorXd> y) {
          h.apply(x, y);
        },
        dim, k, settings.lanczos_seed, settings.lanczos_max_iter);
  }

  LatticeGroundState gs;
  gs.params = params;
  gs.energy = pairs[0].value;
  gs.coefficients = std::move(pairs[0].vector);
  gs.basis = h.shared_basis();
  if (k == 2) {
    const double gap = pairs[1].value - pairs[0].value;
    gs.degenerate = gap < 1e-10 * std::max(1.0, std::abs(pairs[0].value));
  }
  return gs;
}

DensityProfile site_density(const LatticeGroundState& gs) {
  const auto& basis = *gs.basis;
  const std::size_t nd = basis.down_masks.size();
  DensityProfile rho;
  rho.particle_count = gs.params.particle_count();
  rho.domain = lattice_domain(gs.params.sites);
  rho.values.assign(static_cast<std::size_t>(gs.params.sites), 0.0);

  for (Eigen::Index k = 0; k < gs.coefficients.size(); ++k) {
    const double w = gs.coefficients[k] * gs.coefficients[k];
    const std::size_t iu = static_cast<std::size_t>(k) / nd;
    const std::size_t id = static_cast<std::size_t>(k) % nd;
    const std::uint32_t up = basis.up_masks[iu];
    const std::uint32_t down = basis.down_masks[id];
    for (int i = 0; i < gs.params.sites; ++i) {
      const std::uint32_t bi = 1u << i;
      double occ = 0.0;
      if (up & bi) occ += 1.0;
      if (down & bi) occ += 1.0;
      if (occ != 0.0) rho.values[static_cast<std::size_t>(i)] += w * occ;
    }
  }
  return rho;
}

OverlapValue lattice_overlap(const LatticeGroundState& a, const LatticeGroundState& b) {
  if (!a.params.same_sector(b.params))
    throw ValidationError("lattice_overlap: states live in different (L, n_up, n_down) sectors");
  const double dot = a.coefficients.dot(b.coefficients);
  return make_overlap(std::complex<double>(dot, 0.0));
}

}  // namespace qmetric
