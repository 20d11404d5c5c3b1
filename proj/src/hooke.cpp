// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qmetric/hooke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qmetric {

void HookeParams::validate() const {
  if (!(omega > 0.0)) throw ValidationError("HookeParams: need omega > 0");
}

namespace {

// Padded lookup u(j*h) with u(0) = 0 and u = 0 beyond r_max.
double padded(const RadialSolution& s, long j) {
  if (j <= 0) return 0.0;
  const long n = static_cast<long>(s.u.size());
  if (j > n) return 0.0;
  return s.u[static_cast<std::size_t>(j - 1)];
}

}  // namespace

double RadialSolution::value_at(double r) const {
  if (r <= 0.0 || r >= r_max) return 0.0;
  const double x = r / step;
  long j = static_cast<long>(std::floor(x));
  const double f = x - static_cast<double>(j);
  // 4-point Lagrange on nodes j-1 .. j+2.
  const double um1 = padded(*this, j - 1);
  const double u0 = padded(*this, j);
  const double u1 = padded(*this, j + 1);
  const double u2 = padded(*this, j + 2);
  const double c_m1 = -f * (f - 1.0) * (f - 2.0) / 6.0;
  const double c_0 = (f * f - 1.0) * (f - 2.0) / 2.0;
  const double c_1 = -f * (f + 1.0) * (f - 2.0) / 2.0;
  const double c_2 = f * (f * f - 1.0) / 6.0;
  return c_m1 * um1 + c_0 * u0 + c_1 * u1 + c_2 * u2;
}

double RadialSolution::linear_at(double r) const {
  if (r <= 0.0 || r >= r_max) return 0.0;
  const double x = r / step;
  const long j = static_cast<long>(std::floor(x));
  const double f = x - static_cast<double>(j);
  return (1.0 - f) * padded(*this, j) + f * padded(*this, j + 1);
}

RadialSolution solve_relative(double omega, double r_max, int n_points, bool coulomb_on) {
  if (!(omega > 0.0)) throw ValidationError("solve_relative: need omega > 0");
  if (!(r_max > 0.0)) throw ValidationError("solve_relative: need r_max > 0");
  if (n_points < 16) throw ValidationError("solve_relative: grid too coarse");

  const double h = r_max / (n_points + 1);
  Eigen::VectorXd diag(n_points), off(n_points - 1);
  const double inv_h2 = 1.0 / (h * h);
  for (int j = 1; j <= n_points; ++j) {
    const double r = j * h;
    double v = 0.25 * omega * omega * r * r;
    if (coulomb_on) v += 1.0 / r;
    diag[j - 1] = 2.0 * inv_h2 + v;
  }
  off.setConstant(-inv_h2);

  auto pairs = eigh_lowest(SymmetricMatrix::tridiagonal(diag, off), 1);

  RadialSolution sol;
  sol.epsilon = pairs[0].value;
  sol.step = h;
  sol.r_max = r_max;
  sol.u.resize(static_cast<std::size_t>(n_points));
  // Euclidean-normalized eigenvector -> integral(u^2 dr) = 1.
  const double scale = 1.0 / std::sqrt(h);
  for (int j = 0; j < n_points; ++j) sol.u[static_cast<std::size_t>(j)] = pairs[0].vector[j] * scale;

  double umax = 0.0;
  for (double v : sol.u) umax = std::max(umax, std::abs(v));
  // Count crossings between significant lobes only; the far tail sits at
  // the eigensolver noise floor (residual scales with 1/h^2).
  int sign_changes = 0;
  double prev = 0.0;
  for (double v : sol.u) {
    if (std::abs(v) < 1e-5 * umax) continue;
    if (prev != 0.0 && v * prev < 0.0) ++sign_changes;
    prev = v;
  }
  if (sign_changes != 0)
    throw SolverError("solve_relative: lowest state has " + std::to_string(sign_changes) +
                      " interior nodes, expected 0");
  return sol;
}

HookeState solve_hooke(const HookeParams& params, const HookeAccuracy& accuracy) {
  params.validate();
  HookeState s;
  s.params = params;
  s.accuracy = accuracy;
  s.cm_exponent = params.omega;
  const double r_max = accuracy.r_max_factor / std::sqrt(params.omega);
  s.relative = solve_relative(params.omega, r_max, accuracy.n_points);
  s.epsilon_rel = s.relative.epsilon;
  s.energy_total = 1.5 * params.omega + s.epsilon_rel;
  return s;
}

double cm_overlap(double omega1, double omega2) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0)) throw ValidationError("cm_overlap: need omega > 0");
  return std::pow(2.0 * std::sqrt(omega1 * omega2) / (omega1 + omega2), 1.5);
}

OverlapValue hooke_overlap(const HookeState& a, const HookeState& b) {
  const RadialSolution& fine = (a.relative.step <= b.relative.step) ? a.relative : b.relative;
  const RadialSolution& coarse = (a.relative.step <= b.relative.step) ? b.relative : a.relative;
  if (fine.u.empty() || coarse.u.empty())
    throw ValidationError("hooke_overlap: empty relative solution");

  double acc = 0.0;
  for (std::size_t j = 0; j < fine.u.size(); ++j) {
    const double r = (static_cast<double>(j) + 1.0) * fine.step;
    acc += fine.u[j] * coarse.linear_at(r);
  }
  acc *= fine.step;
  const double total = cm_overlap(a.params.omega, b.params.omega) * acc;
  return make_overlap(std::complex<double>(total, 0.0));
}

double hooke_density_radius(const HookeState& state) {
  // Density support: half the relative extent plus the CM Gaussian tail.
  return 0.75 * state.relative.r_max + 8.0 / std::sqrt(state.cm_exponent);
}

DensityProfile hooke_density(const HookeState& state, const Grid1D& grid) {
  const double omega = state.params.omega;
  const double r_max = state.relative.r_max;
  const int nt = state.accuracy.density_radial_nodes;
  const int np = state.accuracy.density_angular_nodes;

  const Grid1D t_rule = gauss_legendre(nt, 0.0, r_max);
  const Grid1D p_ref = gauss_legendre(np, 0.0, 1.0);
  const double cm_norm = std::pow(2.0 * omega / std::numbers::pi, 1.5);

  DensityProfile rho;
  rho.particle_count = 2;
  rho.domain = radial_domain(grid);
  rho.values.resize(grid.size());

  // rho(s) = (1/s) int_0^rmax t dt int_{|s-t|}^{min(s+t, rmax)} dp
  //          u(p)^2 / p * |Phi_cm(q/2)|^2,  q^2 = 2(s^2+t^2) - p^2.
  // The p-integral is the cos(theta) integral of the r2 quadrature after
  // substituting the relative distance for the angle.
  for (std::size_t is = 0; is < grid.size(); ++is) {
    const double s = grid.nodes[is];
    const double s2 = s * s;
    double acc_t = 0.0;
    for (int it = 0; it < nt; ++it) {
      const double t = t_rule.nodes[static_cast<std::size_t>(it)];
      const double p_lo = std::abs(s - t);
      const double p_hi = std::min(s + t, r_max);
      if (p_hi <= p_lo) continue;
      const double span = p_hi - p_lo;
      const double base = 2.0 * (s2 + t * t);
      double acc_p = 0.0;
      for (int ip = 0; ip < np; ++ip) {
        const double p = p_lo + span * p_ref.nodes[static_cast<std::size_t>(ip)];
        const double up = state.relative.value_at(p);
        const double q2 = base - p * p;
        const double cm2 = cm_norm * std::exp(-0.5 * omega * q2);
        acc_p += p_ref.weights[static_cast<std::size_t>(ip)] * (up * up / p) * cm2;
      }
      acc_t += t_rule.weights[static_cast<std::size_t>(it)] * t * acc_p * span;
    }
    rho.values[is] = std::max(0.0, acc_t / s);
  }

  const double total = rho.integrated();
  if (std::abs(total - 2.0) > 1e-4) {
    std::ostringstream msg;
    msg << "hooke_density: quadrature failure, density integrates to " << total
        << " instead of 2 (omega = " << omega << ")";
    throw SolverError(msg.str());
  }
  return rho;
}

}  // namespace qmetric
