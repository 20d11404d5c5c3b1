// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qmetric/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qmetric {

namespace {

constexpr double kOverlapSlack = 1e-10;  // Cauchy-Schwarz slack for quadrature noise

double clamp_modulus(double m) {
  if (m < 0.0 || m > 1.0 + kOverlapSlack)
    throw ValidationError("overlap modulus " + std::to_string(m) + " outside [0, 1+1e-10]");
  return std::min(m, 1.0);
}

void require_particles(int n, const char* where) {
  if (n < 1) throw ValidationError(std::string(where) + ": need particle count >= 1");
}

}  // namespace

OverlapValue make_overlap(std::complex<double> inner) {
  OverlapValue s;
  s.modulus = clamp_modulus(std::abs(inner));
  s.phase = std::arg(inner);  // in [-pi, pi]
  if (s.phase == -std::numbers::pi) s.phase = std::numbers::pi;
  return s;
}

bool DensityDomain::same_as(const DensityDomain& other) const {
  return kind == other.kind && positions == other.positions && weights == other.weights;
}

DensityDomain lattice_domain(int n_sites) {
  if (n_sites < 1) throw ValidationError("lattice_domain: need at least one site");
  DensityDomain d;
  d.kind = DomainKind::Lattice;
  d.positions.resize(static_cast<std::size_t>(n_sites));
  d.weights.assign(static_cast<std::size_t>(n_sites), 1.0);
  for (int i = 0; i < n_sites; ++i) d.positions[static_cast<std::size_t>(i)] = i + 1;
  return d;
}

DensityDomain radial_domain(const Grid1D& grid) {
  DensityDomain d;
  d.kind = DomainKind::Radial;
  d.positions = grid.nodes;
  d.weights.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    d.weights[i] = grid.weights[i] * 4.0 * std::numbers::pi * grid.nodes[i] * grid.nodes[i];
  return d;
}

double DensityProfile::integrated() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += domain.weights[i] * values[i];
  return acc;
}

void DensityProfile::validate() const {
  require_particles(particle_count, "DensityProfile");
  if (values.size() != domain.positions.size())
    throw ValidationError("DensityProfile: value count does not match domain");
  for (double v : values)
    if (v < 0.0) throw ValidationError("DensityProfile: negative density value");
  const double total = integrated();
  if (std::abs(total - particle_count) > 1e-6)
    throw ValidationError("DensityProfile: integral " + std::to_string(total) +
                          " deviates from particle count " + std::to_string(particle_count));
}

double d_psi(int particle_count, const OverlapValue& s) {
  require_particles(particle_count, "d_psi");
  const double m = clamp_modulus(s.modulus);
  return std::sqrt(2.0 * particle_count * (1.0 - m));
}

double d_psi_tilde(int particle_count, const OverlapValue& s) {
  require_particles(particle_count, "d_psi_tilde");
  const double m = clamp_modulus(s.modulus);
  // 1 - m cos(phi) written as (1 - m) + 2 m sin^2(phi/2) so the gauge-copy
  // case m = 1 reduces exactly to 2 sqrt(N) |sin(phi/2)|.
  const double sh = std::sin(0.5 * s.phase);
  const double one_minus = (1.0 - m) + 2.0 * m * sh * sh;
  return std::sqrt(2.0 * particle_count * one_minus);
}

double d_rho(const DensityProfile& rho1, const DensityProfile& rho2) {
  if (!rho1.domain.same_as(rho2.domain))
    throw ValidationError("d_rho: density domains do not match");
  double acc = 0.0;
  for (std::size_t i = 0; i < rho1.values.size(); ++i)
    acc += rho1.domain.weights[i] * std::abs(rho1.values[i] - rho2.values[i]);
  return acc;
}

double d_rho_min(int n, int n_prime) {
  if (n < 0 || n_prime < 0) throw ValidationError("d_rho_min: particle counts must be >= 0");
  return std::abs(n - n_prime);
}

double d_psi_min(int n, int n_prime) {
  if (n < 0 || n_prime < 0) throw ValidationError("d_psi_min: particle counts must be >= 0");
  return std::abs(std::sqrt(static_cast<double>(n)) - std::sqrt(static_cast<double>(n_prime)));
}

double distance_to_zero_state(int particle_count, StateKind kind) {
  require_particles(particle_count, "distance_to_zero_state");
  return kind == StateKind::Density ? static_cast<double>(particle_count)
                                    : std::sqrt(static_cast<double>(particle_count));
}

BoundReport check_bounds(double dpsi_value, double drho_value, int particle_count) {
  require_particles(particle_count, "check_bounds");
  constexpr double tol = 1e-9;
  BoundReport r;
  r.particle_count = particle_count;
  r.d_psi = dpsi_value;
  r.d_rho = drho_value;
  r.psi_bound = std::sqrt(2.0 * particle_count);
  r.rho_bound = 2.0 * particle_count;
  r.psi_triangle_bound = 2.0 * std::sqrt(static_cast<double>(particle_count));
  r.psi_margin = r.psi_bound - dpsi_value;
  r.rho_margin = r.rho_bound - drho_value;
  r.psi_triangle_margin = r.psi_triangle_bound - dpsi_value;

  if (dpsi_value < -tol || drho_value < -tol)
    throw BoundViolation("check_bounds: negative distance");
  if (r.psi_margin < -tol) {
    std::ostringstream msg;
    msg << "D_psi = " << dpsi_value << " exceeds the attainable maximum sqrt(2N) = "
        << r.psi_bound << " for N = " << particle_count;
    throw BoundViolation(msg.str());
  }
  if (r.rho_margin < -tol) {
    std::ostringstream msg;
    msg << "D_rho = " << drho_value << " exceeds the maximum 2N = " << r.rho_bound
        << " for N = " << particle_count;
    throw BoundViolation(msg.str());
  }
  return r;
}

}  // namespace qmetric
