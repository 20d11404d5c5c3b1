// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qmetric/helium.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace qmetric {

void HeliumParams::validate() const {
  if (!(z > 0.0)) throw ValidationError("HeliumParams: need Z > 0");
  if (z < z_min)
    throw ValidationError("HeliumParams: Z = " + std::to_string(z) +
                          " below the bound-state floor Z_min = " + std::to_string(z_min));
  if (basis_size < 1) throw ValidationError("HeliumParams: need basis_size >= 1");
}

bool ECGBasisTerm::positive_definite() const {
  return a + c > 0.0 && b + c > 0.0 && (a + c) * (b + c) > c * c;
}

namespace {

constexpr double kPi = std::numbers::pi;

// Integrals over one unsymmetrized product with combined exponents
// alpha r1^2 + beta r2^2 + gamma r12^2. The quadratic-form matrices of the
// two factors enter only the kinetic trace.
struct RawElements {
  double s, t, v1, v2, v12;
};

RawElements raw_elements(double ak, double bk, double ck, double al, double bl, double cl) {
  const double alpha = ak + al;
  const double beta = bk + bl;
  const double gamma = ck + cl;
  const double det = alpha * beta + gamma * (alpha + beta);

  RawElements e;
  e.s = kPi * kPi * kPi / (det * std::sqrt(det));

  // Kinetic: 3 S Tr(A_k A_l M^{-1}) with A = [[a+c, -c], [-c, b+c]].
  const double k11 = ak + ck, k12 = -ck, k22 = bk + ck;
  const double l11 = al + cl, l12 = -cl, l22 = bl + cl;
  const double p11 = k11 * l11 + k12 * l12;
  const double p12 = k11 * l12 + k12 * l22;
  const double p21 = k12 * l11 + k22 * l12;
  const double p22 = k12 * l12 + k22 * l22;
  const double m11 = alpha + gamma, m12 = -gamma, m22 = beta + gamma;
  const double trace = (p11 * m22 - p12 * m12 - p21 * m12 + p22 * m11) / det;
  e.t = 3.0 * e.s * trace;

  // Coulomb pieces through the concentric Gaussian-Coulomb kernel.
  const double bg = beta + gamma;
  const double ag = alpha + gamma;
  const double ab = alpha + beta;
  e.v1 = std::pow(kPi / bg, 1.5) * gaussian_coulomb(det / bg);
  e.v2 = std::pow(kPi / ag, 1.5) * gaussian_coulomb(det / ag);
  e.v12 = std::pow(kPi / ab, 1.5) * gaussian_coulomb(det / ab);
  return e;
}

}  // namespace

PairIntegrals ecg_matrix_elements(const ECGBasisTerm& k, const ECGBasisTerm& l, double z) {
  if (!k.positive_definite() || !l.positive_definite())
    throw ValidationError("ecg_matrix_elements: basis term not positive definite");
  // <k_hat|O|l_hat> = 2 (direct + exchange) for exchange-invariant O.
  const RawElements dir = raw_elements(k.a, k.b, k.c, l.a, l.b, l.c);
  const RawElements exc = raw_elements(k.a, k.b, k.c, l.b, l.a, l.c);
  PairIntegrals out;
  out.overlap = 2.0 * (dir.s + exc.s);
  out.kinetic = 2.0 * (dir.t + exc.t);
  out.nuclear = -z * 2.0 * (dir.v1 + dir.v2 + exc.v1 + exc.v2);
  out.repulsion = 2.0 * (dir.v12 + exc.v12);
  return out;
}

namespace {

struct Matrices {
  Eigen::MatrixXd s, h, t, v;
  std::vector<double> norms;
};

Matrices build_matrices(const std::vector<ECGBasisTerm>& terms, double z,
                        const HeliumOptions& opt) {
  const int n = static_cast<int>(terms.size());
  Matrices m;
  m.s.resize(n, n);
  m.h.resize(n, n);
  m.t.resize(n, n);
  m.v.resize(n, n);
  m.norms.resize(static_cast<std::size_t>(n));

  for (int k = 0; k < n; ++k) {
    const auto self = ecg_matrix_elements(terms[static_cast<std::size_t>(k)],
                                          terms[static_cast<std::size_t>(k)], z);
    m.norms[static_cast<std::size_t>(k)] = 1.0 / std::sqrt(self.overlap);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      const auto e = ecg_matrix_elements(terms[static_cast<std::size_t>(k)],
                                         terms[static_cast<std::size_t>(l)], z);
      const double nn = m.norms[static_cast<std::size_t>(k)] * m.norms[static_cast<std::size_t>(l)];
      const double pot = e.nuclear + (opt.include_repulsion ? e.repulsion : 0.0);
      m.s(k, l) = m.s(l, k) = e.overlap * nn;
      m.t(k, l) = m.t(l, k) = e.kinetic * nn;
      m.v(k, l) = m.v(l, k) = pot * nn;
      m.h(k, l) = m.h(l, k) = (e.kinetic + pot) * nn;
    }
  }
  return m;
}

struct GevpResult {
  double energy;
  Eigen::VectorXd coefficients;
};

// Hc = ESc by canonical orthogonalization; S-eigenvectors with eigenvalue
// below 1e-10 are discarded to guard against near-linear dependence.
GevpResult solve_gevp(const Eigen::MatrixXd& h, const Eigen::MatrixXd& s);

std::vector<double> geometric_ladder(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  if (n == 1) {
    xs[0] = std::sqrt(lo * hi);
    return xs;
  }
  const double ratio = std::log(hi / lo) / (n - 1);
  for (int k = 0; k < n; ++k) xs[static_cast<std::size_t>(k)] = lo * std::exp(ratio * k);
  return xs;
}

// Orbital weights of the hydrogen-like ground state in a fine tempered
// one-particle Gaussian ladder; guides which exponent pairs matter.
Eigen::VectorXd one_particle_weights(const std::vector<double>& ladder, double z) {
  const int m = static_cast<int>(ladder.size());
  Eigen::MatrixXd s(m, m), h(m, m);
  std::vector<double> norms(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    norms[static_cast<std::size_t>(i)] = std::pow(2.0 * ladder[static_cast<std::size_t>(i)] / kPi, 0.75);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double ai = ladder[static_cast<std::size_t>(i)];
      const double aj = ladder[static_cast<std::size_t>(j)];
      const double nn = norms[static_cast<std::size_t>(i)] * norms[static_cast<std::size_t>(j)];
      const double aa = ai + aj;
      s(i, j) = std::pow(kPi / aa, 1.5) * nn;
      const double kin = 3.0 * ai * aj * std::pow(kPi, 1.5) / std::pow(aa, 2.5);
      const double nuc = -z * gaussian_coulomb(aa);
      h(i, j) = (kin + nuc) * nn;
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(h, s);
  return ges.eigenvectors().col(0);
}



// Tempered geometric start. Correlated bases pair a one-particle ladder
// band-diagonally and walk c up its own ladder; uncorrelated bases greedily
// pick orbital-product pairs by actual energy decrease, candidates
// preselected from the hydrogenic one-particle weights.
std::vector<ECGBasisTerm> initial_basis(double z, int n, const HeliumOptions& options) {
  const double z2 = z * z;
  std::vector<ECGBasisTerm> terms;
  terms.reserve(static_cast<std::size_t>(n));

  if (options.correlated) {
    int rungs = 1;
    while (rungs * (rungs + 1) / 2 < n) ++rungs;
    const auto ladder = geometric_ladder(z2 * 1e-2, z2 * 1e2, rungs);
    const auto c_ladder = geometric_ladder(1e-2, 10.0, n);
    for (int d = 0; d < rungs && static_cast<int>(terms.size()) < n; ++d) {
      for (int i = 0; i + d < rungs && static_cast<int>(terms.size()) < n; ++i) {
        ECGBasisTerm t;
        t.a = ladder[static_cast<std::size_t>(i)];
        t.b = ladder[static_cast<std::size_t>(i + d)];
        t.c = c_ladder[terms.size()];
        terms.push_back(t);
      }
    }
    return terms;
  }

  const int fine = std::max(n, 16);
  const auto ladder = geometric_ladder(z2 * 1e-2, z2 * 1e2, fine);
  const Eigen::VectorXd d = one_particle_weights(ladder, z);
  struct Cell {
    double weight;
    int i, j;
  };
  std::vector<Cell> cells;
  for (int i = 0; i < fine; ++i)
    for (int j = i; j < fine; ++j)
      cells.push_back({std::abs(d[i] * d[j]) * (i == j ? 1.0 : 2.0), i, j});
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) { return a.weight > b.weight; });
  if (cells.size() > 48) cells.resize(48);

  auto cell_term = [&](const Cell& c) {
    return ECGBasisTerm{ladder[static_cast<std::size_t>(c.i)],
                        ladder[static_cast<std::size_t>(c.j)], 0.0};
  };
  std::vector<bool> used(cells.size(), false);
  for (int round = 0; round < n; ++round) {
    double best_e = std::numeric_limits<double>::infinity();
    std::size_t best_idx = cells.size();
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
      if (used[idx]) continue;
      terms.push_back(cell_term(cells[idx]));
      try {
        const auto m = build_matrices(terms, z, options);
        const double e = solve_gevp(m.h, m.s).energy;
        if (e < best_e) {
          best_e = e;
          best_idx = idx;
        }
      } catch (const SolverError&) {
        // Linearly dependent with the current set; skip.
      }
      terms.pop_back();
    }
    if (best_idx == cells.size()) break;
    used[best_idx] = true;
    terms.push_back(cell_term(cells[best_idx]));
  }
  return terms;
}

GevpResult solve_gevp(const Eigen::MatrixXd& h, const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> se(s);
  if (se.info() != Eigen::Success) throw SolverError("solve_gevp: overlap diagonalization failed");
  const auto& vals = se.eigenvalues();
  std::vector<int> keep;
  for (int i = 0; i < vals.size(); ++i)
    if (vals[i] >= 1e-10) keep.push_back(i);
  if (keep.empty()) throw SolverError("solve_gevp: basis collapse, all overlap eigenvalues tiny");

  Eigen::MatrixXd x(s.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    x.col(static_cast<Eigen::Index>(j)) =
        se.eigenvectors().col(keep[j]) / std::sqrt(vals[keep[j]]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> he(x.transpose() * h * x);
  if (he.info() != Eigen::Success) throw SolverError("solve_gevp: projected solve failed");

  GevpResult r;
  r.energy = he.eigenvalues()[0];
  r.coefficients = x * he.eigenvectors().col(0);
  // Dominant coefficient positive, for reproducible overlap signs.
  Eigen::Index imax = 0;
  r.coefficients.cwiseAbs().maxCoeff(&imax);
  if (r.coefficients[imax] < 0.0) r.coefficients = -r.coefficients;
  return r;
}

}  // namespace

HeliumState solve_helium(const HeliumParams& params, const HeliumOptions& options) {
  params.validate();
  const int n = params.basis_size;
  const double z2 = params.z * params.z;

  std::vector<ECGBasisTerm> terms = initial_basis(params.z, n, options);

  auto evaluate = [&](const std::vector<ECGBasisTerm>& ts) {
    const auto m = build_matrices(ts, params.z, options);
    return solve_gevp(m.h, m.s);
  };

  GevpResult best = evaluate(terms);

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> ab_exp(-2.0, 2.0);
  std::uniform_real_distribution<double> c_exp(-2.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, 0.12);
  auto clamped = [](double x, double lo, double hi) { return std::clamp(x, lo, hi); };
  for (int trial = 0; trial < options.refine_trials; ++trial) {
    const int j = pick(rng);
    ECGBasisTerm candidate;
    if (coin(rng) < 0.5) {
      // Global resample within the tempered ranges.
      candidate.a = z2 * std::pow(10.0, ab_exp(rng));
      candidate.b = z2 * std::pow(10.0, ab_exp(rng));
      candidate.c = options.correlated ? std::pow(10.0, c_exp(rng)) : 0.0;
    } else {
      // Local polish of the current term.
      const ECGBasisTerm& cur = terms[static_cast<std::size_t>(j)];
      candidate.a = clamped(cur.a * std::pow(10.0, jitter(rng)), z2 * 1e-2, z2 * 1e2);
      candidate.b = clamped(cur.b * std::pow(10.0, jitter(rng)), z2 * 1e-2, z2 * 1e2);
      candidate.c =
          options.correlated ? clamped(cur.c * std::pow(10.0, jitter(rng)), 1e-2, 10.0) : 0.0;
    }

    const ECGBasisTerm saved = terms[static_cast<std::size_t>(j)];
    terms[static_cast<std::size_t>(j)] = candidate;
    bool accepted = false;
    try {
      GevpResult trial_result = evaluate(terms);
      if (trial_result.energy < best.energy) {
        best = std::move(trial_result);
        accepted = true;
      }
    } catch (const SolverError&) {
      // Collapsed trial basis; reject.
    }
    if (!accepted) terms[static_cast<std::size_t>(j)] = saved;
  }

  const auto m = build_matrices(terms, params.z, options);
  HeliumState state;
  state.params = params;
  state.options = options;
  state.terms = std::move(terms);
  state.term_norms = m.norms;
  state.coefficients = best.coefficients;
  state.energy = best.energy;
  return state;
}

double prefix_energy(const HeliumState& state, int k) {
  if (k < 1 || k > static_cast<int>(state.terms.size()))
    throw ValidationError("prefix_energy: k outside [1, basis size]");
  std::vector<ECGBasisTerm> prefix(state.terms.begin(), state.terms.begin() + k);
  const auto m = build_matrices(prefix, state.params.z, state.options);
  return solve_gevp(m.h, m.s).energy;
}

OverlapValue helium_overlap(const HeliumState& s1, const HeliumState& s2) {
  double acc = 0.0;
  const int n1 = static_cast<int>(s1.terms.size());
  const int n2 = static_cast<int>(s2.terms.size());
  for (int k = 0; k < n1; ++k) {
    for (int l = 0; l < n2; ++l) {
      // Overlap is Z-independent; pass either charge.
      const auto e = ecg_matrix_elements(s1.terms[static_cast<std::size_t>(k)],
                                         s2.terms[static_cast<std::size_t>(l)], s1.params.z);
      acc += s1.coefficients[k] * s2.coefficients[l] * s1.term_norms[static_cast<std::size_t>(k)] *
             s2.term_norms[static_cast<std::size_t>(l)] * e.overlap;
    }
  }
  return make_overlap(std::complex<double>(acc, 0.0));
}

namespace {

struct RadialGaussian {
  double weight;    // prefactor including 2 c_k c_l n_k n_l
  double exponent;  // decay of exp(-exponent s^2)
};

// rho(s) as a finite sum of radial Gaussians: each product of (possibly
// exchanged) terms integrates over r2 in closed form.
std::vector<RadialGaussian> density_expansion(const HeliumState& state) {
  const int n = static_cast<int>(state.terms.size());
  std::vector<RadialGaussian> gs;
  gs.reserve(static_cast<std::size_t>(4 * n * n));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const auto& tk = state.terms[static_cast<std::size_t>(k)];
      const auto& tl = state.terms[static_cast<std::size_t>(l)];
      const double cc = 2.0 * state.coefficients[k] * state.coefficients[l] *
                        state.term_norms[static_cast<std::size_t>(k)] *
                        state.term_norms[static_cast<std::size_t>(l)];
      const double gamma = tk.c + tl.c;
      const std::array<std::pair<double, double>, 4> combos = {{
          {tk.a + tl.a, tk.b + tl.b},
          {tk.a + tl.b, tk.b + tl.a},
          {tk.b + tl.a, tk.a + tl.b},
          {tk.b + tl.b, tk.a + tl.a},
      }};
      for (const auto& [alpha, beta] : combos) {
        const double det = alpha * beta + gamma * (alpha + beta);
        const double bg = beta + gamma;
        gs.push_back({cc * std::pow(kPi / bg, 1.5), det / bg});
      }
    }
  }
  return gs;
}

}  // namespace

double helium_density_radius(const HeliumState& state) {
  double p_min = std::numeric_limits<double>::infinity();
  for (const auto& g : density_expansion(state)) p_min = std::min(p_min, g.exponent);
  return 14.0 / std::sqrt(p_min);
}

DensityProfile helium_density(const HeliumState& state, const Grid1D& grid) {
  const auto expansion = density_expansion(state);
  DensityProfile rho;
  rho.particle_count = 2;
  rho.domain = radial_domain(grid);
  rho.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s2 = grid.nodes[i] * grid.nodes[i];
    double acc = 0.0;
    for (const auto& g : expansion) acc += g.weight * std::exp(-g.exponent * s2);
    rho.values[i] = std::max(0.0, acc);
  }

  const double total = rho.integrated();
  if (std::abs(total - 2.0) > 1e-4)
    throw SolverError("helium_density: density integrates to " + std::to_string(total) +
                      " instead of 2; grid too small");
  return rho;
}

double virial_ratio(const HeliumState& state) {
  const auto m = build_matrices(state.terms, state.params.z, state.options);
  const double t = state.coefficients.dot(m.t * state.coefficients);
  const double v = state.coefficients.dot(m.v * state.coefficients);
  return v / t;
}

}  // namespace qmetric
