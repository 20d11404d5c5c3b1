// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qmetric/helium.hpp"
#include "qmetric/hooke.hpp"
#include "qmetric/hubbard.hpp"
#include "qmetric/metric.hpp"

namespace qmetric {

enum class ModelKind { Hubbard, Hooke, Helium };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

using ModelParams = std::variant<HubbardParams, HookeParams, HeliumParams>;

int particle_count(const ModelParams& p);
std::string param_label(const ModelParams& p);

/// Solver and quadrature knobs shared by a sweep.
struct AccuracySettings {
  HubbardSolverSettings hubbard;
  HookeAccuracy hooke;
  int density_grid_nodes = 512;  // radial output grid for continuum models
};

/// One experiment: a reference state and an ordered family of varied
/// parameter points of the same particle number and sector.
struct SweepSpec {
  ModelKind model = ModelKind::Hooke;
  std::string label;
  ModelParams reference = HookeParams{};
  std::vector<ModelParams> varied;
  bool normalize = true;
  AccuracySettings accuracy;
};

/// One (parameter, D_psi, D_rho) result row, in raw and normalized axes.
struct DistanceRecord {
  std::string param_label;
  double d_psi = 0.0;
  double d_rho = 0.0;
  double d_psi_norm = 0.0;  // d_psi / sqrt(2N)
  double d_rho_norm = 0.0;  // d_rho / (2N)
  double overlap_modulus = 0.0;
  double energy_ref = 0.0;
  double energy_var = 0.0;
  std::string flags;  // ';'-separated warnings, e.g. degeneracy
};

/// Solves the reference once, then every varied point; distances via the
/// shared metrics, every record checked against the D_psi and D_rho
/// bounds. Records keep the order of the varied list.
std::vector<DistanceRecord> run_sweep(const SweepSpec& spec);

/// The curve statistics behind the paper's qualitative claims.
struct AnalysisReport {
  double initial_slope = 0.0;     // fit over the first 5 records, normalized axes
  double linear_r2 = 0.0;         // fit over records with d_psi <= 0.8 sqrt(2N)
  bool monotonic = false;         // d_rho non-decreasing along d_psi (1e-9 slack)
  double tail_slope_ratio = 0.0;  // last-decile chord slope / full chord slope
  double max_d_psi = 0.0;
  double max_d_rho = 0.0;
};

/// Requires >= 6 records sorted by d_psi ascending.
AnalysisReport analyze(const std::vector<DistanceRecord>& records, int particle_count);

/// Maximum |d_rho_norm(a) - d_rho_norm(b)| after linearly interpolating
/// curve b onto curve a's d_psi_norm abscissae over the common range.
/// Both sweeps must describe N = 2 systems.
double superposition_check(const std::vector<DistanceRecord>& records_a,
                           const std::vector<DistanceRecord>& records_b);

/// The full Fig.-2 panel set: helium Z=3 down and Z=2 up/down, Hooke
/// omega=0.5 up/down, and six confined-Hubbard sweeps (N in {2,4,8},
/// U in {2,6}) with omega swept down from 4.
std::vector<SweepSpec> preset_paper_sweeps();

}  // namespace qmetric
