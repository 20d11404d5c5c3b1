// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qmetric/errors.hpp"

namespace qmetric {

/// One-dimensional quadrature rule on a closed interval [a, b].
///
/// Nodes are strictly increasing and interior to [a, b]; weights are
/// positive. `integrate` applies the rule to sampled values.
struct Grid1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;

  std::size_t size() const { return nodes.size(); }

  double integrate(const std::vector<double>& values) const;

  template <class F>
  double integrate_fn(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// n-point Gauss-Legendre rule on [a, b], exact for polynomials of
/// degree <= 2n-1. Nodes by Newton iteration on P_n.
Grid1D gauss_legendre(int n, double a, double b);

/// Real symmetric matrix, dense or tridiagonal storage.
class SymmetricMatrix {
 public:
  static SymmetricMatrix dense(Eigen::MatrixXd m);
  static SymmetricMatrix tridiagonal(Eigen::VectorXd diag, Eigen::VectorXd off);

  Eigen::Index order() const { return diag_.size() > 0 ? diag_.size() : dense_.rows(); }
  bool is_tridiagonal() const { return diag_.size() > 0; }

  const Eigen::MatrixXd& dense_storage() const { return dense_; }
  const Eigen::VectorXd& diagonal() const { return diag_; }
  const Eigen::VectorXd& off_diagonal() const { return off_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  double frobenius_norm() const;

 private:
  SymmetricMatrix() = default;
  Eigen::MatrixXd dense_;
  Eigen::VectorXd diag_;
  Eigen::VectorXd off_;
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
};

/// The k algebraically smallest eigenpairs, values ascending. Eigenvector
/// sign is fixed by making the largest-magnitude component positive, so
/// repeated solves give identical overlaps. Every returned pair satisfies
/// ||A v - lambda v|| <= 1e-9 * max(1, ||A||_F).
std::vector<EigenPair> eigh_lowest(const SymmetricMatrix& m, int k);

using MatrixAction =
    std::function<void(Eigen::Ref<const Eigen::VectorXd>, Eigen::Ref<Eigen::VectorXd>)>;

/// Lanczos with full reorthogonalization for the k smallest eigenpairs of a
/// symmetric operator given only by its action. On exact breakdown the
/// recursion restarts with a fresh vector orthogonal to the converged
/// invariant subspace, so degenerate levels are recovered.
std::vector<EigenPair> lanczos_lowest(const MatrixAction& apply, Eigen::Index dim, int k,
                                      std::uint64_t seed, int max_iter = 500);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares through (x, y) pairs. Rejects fewer than two
/// points or degenerate x-variance. Exactly collinear data gives R^2 = 1.
LinearFit linear_fit(const std::vector<std::pair<double, double>>& points);

/// Integral of exp(-alpha r^2)/r over R^3: 2*pi/alpha.
double gaussian_coulomb(double alpha);

/// Integral of exp(-alpha r^2)/|r - d| over R^3 for a displacement of
/// length d: (pi/alpha)^{3/2} erf(sqrt(alpha) d)/d, with a series branch
/// near d = 0. Relative precision 1e-12.
double gaussian_coulomb_displaced(double alpha, double d);

}  // namespace qmetric
