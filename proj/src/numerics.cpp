// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qmetric/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qmetric {

double Grid1D::integrate(const std::vector<double>& values) const {
  if (values.size() != nodes.size())
    throw ValidationError("Grid1D::integrate: value count does not match node count");
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * values[i];
  return acc;
}

Grid1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ValidationError("gauss_legendre: need n >= 1");
  if (!(a < b)) throw ValidationError("gauss_legendre: need a < b");

  Grid1D g;
  g.a = a;
  g.b = b;
  g.nodes.resize(static_cast<std::size_t>(n));
  g.weights.resize(static_cast<std::size_t>(n));

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    g.nodes[static_cast<std::size_t>(i)] = mid - half * z;
    g.nodes[static_cast<std::size_t>(n - 1 - i)] = mid + half * z;
    const double w = 2.0 * half / ((1.0 - z * z) * pp * pp);
    g.weights[static_cast<std::size_t>(i)] = w;
    g.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) g.nodes[static_cast<std::size_t>(n / 2)] = mid;  // symmetry-forced midpoint
  return g;
}

SymmetricMatrix SymmetricMatrix::dense(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw ValidationError("SymmetricMatrix::dense: matrix not square");
  if (m != m.transpose().eval())
    throw ValidationError("SymmetricMatrix::dense: entries not exactly symmetric");
  if (!m.allFinite()) throw ValidationError("SymmetricMatrix::dense: non-finite entries");
  SymmetricMatrix s;
  s.dense_ = std::move(m);
  return s;
}

SymmetricMatrix SymmetricMatrix::tridiagonal(Eigen::VectorXd diag, Eigen::VectorXd off) {
  if (off.size() != std::max<Eigen::Index>(diag.size() - 1, 0))
    throw ValidationError("SymmetricMatrix::tridiagonal: off-diagonal length must be n-1");
  if (!diag.allFinite() || !off.allFinite())
    throw ValidationError("SymmetricMatrix::tridiagonal: non-finite entries");
  SymmetricMatrix s;
  s.diag_ = std::move(diag);
  s.off_ = std::move(off);
  return s;
}

Eigen::VectorXd SymmetricMatrix::apply(const Eigen::VectorXd& x) const {
  if (!is_tridiagonal()) return dense_ * x;
  const Eigen::Index n = diag_.size();
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double v = diag_[i] * x[i];
    if (i > 0) v += off_[i - 1] * x[i - 1];
    if (i + 1 < n) v += off_[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

double SymmetricMatrix::frobenius_norm() const {
  if (!is_tridiagonal()) return dense_.norm();
  return std::sqrt(diag_.squaredNorm() + 2.0 * off_.squaredNorm());
}

namespace {

void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index imax = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best) {
      best = m;
      imax = i;
    }
  }
  if (v[imax] < 0.0) v = -v;
}

// Number of eigenvalues of the tridiagonal (d, e) strictly below x,
// via the Sturm/LDL^T pivot count.
int sturm_count(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double x, double pivmin) {
  int count = 0;
  double q = d[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (Eigen::Index i = 1; i < d.size(); ++i) {
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// j-th smallest eigenvalue (1-indexed) by bisection.
double bisect_eigenvalue(const Eigen::VectorXd& d, const Eigen::VectorXd& e, int j, double lo,
                         double hi, double pivmin) {
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(d, e, mid, pivmin) >= j)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Solve (T - sigma I) x = b with partial pivoting (three-band LU).
Eigen::VectorXd tridiag_shifted_solve(const Eigen::VectorXd& d, const Eigen::VectorXd& e,
                                      double sigma, Eigen::VectorXd b) {
  const Eigen::Index n = d.size();
  Eigen::VectorXd m0(n), m1(n), m2(n);  // diagonal, first and second superdiagonal of U
  for (Eigen::Index i = 0; i < n; ++i) {
    m0[i] = d[i] - sigma;
    m1[i] = (i + 1 < n) ? e[i] : 0.0;
    m2[i] = 0.0;
  }
  Eigen::VectorXd sub(n);  // current subdiagonal entry below row i
  for (Eigen::Index i = 0; i + 1 < n; ++i) sub[i] = e[i];

  const double tiny = 1e-300;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(sub[i]) > std::abs(m0[i])) {
      std::swap(m0[i], sub[i]);
      std::swap(m1[i], m0[i + 1]);
      std::swap(m2[i], m1[i + 1]);
      std::swap(b[i], b[i + 1]);
    }
    if (std::abs(m0[i]) < tiny) m0[i] = tiny;
    const double f = sub[i] / m0[i];
    m0[i + 1] -= f * m1[i];
    m1[i + 1] -= f * m2[i];
    b[i + 1] -= f * b[i];
  }
  if (std::abs(m0[n - 1]) < tiny) m0[n - 1] = tiny;

  Eigen::VectorXd x(n);
  x[n - 1] = b[n - 1] / m0[n - 1];
  if (n > 1) x[n - 2] = (b[n - 2] - m1[n - 2] * x[n - 1]) / m0[n - 2];
  for (Eigen::Index i = n - 3; i >= 0; --i)
    x[i] = (b[i] - m1[i] * x[i + 1] - m2[i] * x[i + 2]) / m0[i];
  return x;
}

std::vector<EigenPair> tridiag_lowest(const Eigen::VectorXd& d, const Eigen::VectorXd& e, int k) {
  const Eigen::Index n = d.size();
  // Gershgorin bounds.
  double lo = d[0], hi = d[0];
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < n) r += std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double pivmin = 1e-30 * scale;

  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(k));
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int j = 1; j <= k; ++j) {
    const double lambda = bisect_eigenvalue(d, e, j, lo - 1e-12 * scale, hi + 1e-12 * scale, pivmin);
    // Inverse iteration at a slightly perturbed shift.
    const double sigma = lambda + 1e-13 * scale;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    bool ok = false;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
      if (attempt > 0)
        for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
      for (int iter = 0; iter < 8; ++iter) {
        v = tridiag_shifted_solve(d, e, sigma, v);
        // Project out previously found vectors of nearby eigenvalues.
        for (const auto& p : out)
          if (std::abs(p.value - lambda) < 1e-7 * scale) v -= p.vector.dot(v) * p.vector;
        const double nv = v.norm();
        if (nv == 0.0) break;
        v /= nv;
        // Residual of the current iterate.
        Eigen::VectorXd r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          double t = (d[i] - lambda) * v[i];
          if (i > 0) t += e[i - 1] * v[i - 1];
          if (i + 1 < n) t += e[i] * v[i + 1];
          r[i] = t;
        }
        if (r.norm() <= 1e-10 * scale) {
          ok = true;
          break;
        }
      }
    }
    if (!ok)
      throw SolverError("tridiagonal inverse iteration failed to converge at eigenvalue index " +
                        std::to_string(j));
    fix_sign(v);
    out.push_back({lambda, std::move(v)});
  }
  return out;
}

}  // namespace

std::vector<EigenPair> eigh_lowest(const SymmetricMatrix& m, int k) {
  const Eigen::Index n = m.order();
  if (k < 1) throw ValidationError("eigh_lowest: need k >= 1");
  if (k > n) throw ValidationError("eigh_lowest: k exceeds matrix order");

  std::vector<EigenPair> out;
  if (m.is_tridiagonal() && n > 2) {
    out = tridiag_lowest(m.diagonal(), m.off_diagonal(), k);
  } else {
    Eigen::MatrixXd a;
    if (m.is_tridiagonal()) {
      a = Eigen::MatrixXd::Zero(n, n);
      a.diagonal() = m.diagonal();
      for (Eigen::Index i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = m.off_diagonal()[i];
    } else {
      a = m.dense_storage();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw SolverError("eigh_lowest: dense eigensolver failed");
    out.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      Eigen::VectorXd v = es.eigenvectors().col(j);
      fix_sign(v);
      out.push_back({es.eigenvalues()[j], std::move(v)});
    }
  }

  const double tol = 1e-9 * std::max(1.0, m.frobenius_norm());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double resid = (m.apply(out[j].vector) - out[j].value * out[j].vector).norm();
    if (!(resid <= tol)) {
      std::ostringstream msg;
      msg << "eigh_lowest: residual " << resid << " exceeds tolerance " << tol
          << " for eigenpair " << j;
      throw SolverError(msg.str());
    }
  }
  return out;
}

std::vector<EigenPair> lanczos_lowest(const MatrixAction& apply, Eigen::Index dim, int k,
                                      std::uint64_t seed, int max_iter) {
  if (dim < 1) throw ValidationError("lanczos_lowest: need dim >= 1");
  if (k < 1 || k > dim) throw ValidationError("lanczos_lowest: need 1 <= k <= dim");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_vector = [&] {
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = normal(rng);
    return v;
  };

  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;  // beta[j] couples v_j and v_{j+1}
  const Eigen::Index m_max = std::min<Eigen::Index>(dim, max_iter);
  basis.reserve(static_cast<std::size_t>(m_max));

  auto orthogonalize = [&](Eigen::VectorXd& w) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : basis) w -= v.dot(w) * v;
  };

  {
    Eigen::VectorXd v0 = random_vector();
    v0.normalize();
    basis.push_back(std::move(v0));
  }

  Eigen::VectorXd w(dim);
  double scale = 1.0;
  bool exhausted = false;

  auto t_lowest = [&](int kk) {
    const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd e(m > 1 ? m - 1 : 0);
    for (Eigen::Index i = 0; i + 1 < m; ++i) e[i] = beta[static_cast<std::size_t>(i)];
    return tridiag_lowest(d, e, std::min<int>(kk, static_cast<int>(m)));
  };

  std::vector<EigenPair> ritz;
  for (Eigen::Index j = 0; j < m_max; ++j) {
    apply(basis[static_cast<std::size_t>(j)], w);
    const double a = basis[static_cast<std::size_t>(j)].dot(w);
    alpha.push_back(a);
    w -= a * basis[static_cast<std::size_t>(j)];
    if (j > 0 && beta.back() != 0.0) w -= beta.back() * basis[static_cast<std::size_t>(j - 1)];
    orthogonalize(w);
    scale = std::max({scale, std::abs(a)});

    double b = w.norm();
    if (b <= 1e-12 * scale) {
      // Invariant subspace found; restart in its orthogonal complement.
      if (basis.size() == static_cast<std::size_t>(dim)) {
        exhausted = true;
        break;
      }
      Eigen::VectorXd f;
      double nf = 0.0;
      for (int attempt = 0; attempt < 5; ++attempt) {
        f = random_vector();
        orthogonalize(f);
        nf = f.norm();
        if (nf > 1e-6) break;
      }
      if (nf <= 1e-6) {
        exhausted = true;
        break;
      }
      beta.push_back(0.0);
      basis.push_back(f / nf);
      continue;
    }
    scale = std::max(scale, b);
    if (basis.size() == static_cast<std::size_t>(dim)) {
      exhausted = true;
      break;
    }
    beta.push_back(b);
    basis.push_back(w / b);

    // Periodic convergence test on the Ritz residual bound.
    const std::size_t m = alpha.size();
    if (m >= static_cast<std::size_t>(k) && (m % 10 == 0 || j + 1 == m_max)) {
      try {
        auto pairs = t_lowest(k);
        bool converged = pairs.size() == static_cast<std::size_t>(k);
        for (const auto& p : pairs) {
          const double bound = b * std::abs(p.vector[static_cast<Eigen::Index>(m) - 1]);
          if (bound > 1e-11 * std::max(1.0, scale)) converged = false;
        }
        if (converged) {
          ritz = std::move(pairs);
          break;
        }
      } catch (const SolverError&) {
        // Ritz extraction can stall before T settles; keep iterating.
      }
    }
  }

  if (ritz.empty()) {
    if (alpha.size() < static_cast<std::size_t>(k))
      throw SolverError("lanczos_lowest: Krylov space smaller than requested k");
    ritz = t_lowest(k);
    if (!exhausted && ritz.empty())
      throw SolverError("lanczos_lowest: no Ritz pairs after " + std::to_string(alpha.size()) +
                        " iterations");
  }

  std::vector<EigenPair> out;
  out.reserve(ritz.size());
  for (auto& p : ritz) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index i = 0; i < p.vector.size(); ++i)
      y += p.vector[i] * basis[static_cast<std::size_t>(i)];
    y.normalize();
    fix_sign(y);
    out.push_back({p.value, std::move(y)});
  }

  // Verify against the true action.
  const double tol = 1e-9 * std::max(1.0, scale);
  for (std::size_t j = 0; j < out.size(); ++j) {
    apply(out[j].vector, w);
    const double resid = (w - out[j].value * out[j].vector).norm();
    if (!(resid <= tol)) {
      std::ostringstream msg;
      msg << "lanczos_lowest: residual " << resid << " exceeds " << tol << " after "
          << alpha.size() << " iterations (pair " << j << ", dim " << dim << ")";
      throw SolverError(msg.str());
    }
  }
  return out;
}

LinearFit linear_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw ValidationError("linear_fit: need at least 2 points");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  double xscale = 0.0;
  for (const auto& [x, y] : points) xscale = std::max(xscale, std::abs(x));
  if (sxx <= 1e-24 * std::max(1.0, xscale * xscale))
    throw ValidationError("linear_fit: degenerate x-variance");

  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy <= 0.0) {
    fit.r_squared = 1.0;  // horizontal collinear data
  } else {
    double ss_res = 0.0;
    for (const auto& [x, y] : points) {
      const double r = y - (fit.slope * x + fit.intercept);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

double gaussian_coulomb(double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("gaussian_coulomb: need alpha > 0");
  return 2.0 * std::numbers::pi / alpha;
}

double gaussian_coulomb_displaced(double alpha, double d) {
  if (!(alpha > 0.0)) throw ValidationError("gaussian_coulomb_displaced: need alpha > 0");
  if (d < 0.0) throw ValidationError("gaussian_coulomb_displaced: need d >= 0");
  const double pref = std::pow(std::numbers::pi / alpha, 1.5);
  const double x = std::sqrt(alpha) * d;
  if (x < 1e-4) {
    // erf(x)/x = 2/sqrt(pi) (1 - x^2/3 + x^4/10 - ...)
    const double x2 = x * x;
    return pref * std::sqrt(alpha) * (2.0 / std::sqrt(std::numbers::pi)) *
           (1.0 - x2 / 3.0 + x2 * x2 / 10.0);
  }
  return pref * std::erf(x) / d;
}

}  // namespace qmetric
