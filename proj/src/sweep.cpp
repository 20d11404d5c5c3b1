// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qmetric/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qmetric {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Hubbard: return "hubbard";
    case ModelKind::Hooke: return "hooke";
    case ModelKind::Helium: return "helium";
  }
  return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "hubbard") return ModelKind::Hubbard;
  if (name == "hooke") return ModelKind::Hooke;
  if (name == "helium") return ModelKind::Helium;
  throw ValidationError("unknown model '" + name + "' (expected hubbard, hooke or helium)");
}

int particle_count(const ModelParams& p) {
  if (const auto* h = std::get_if<HubbardParams>(&p)) return h->particle_count();
  return 2;  // both continuum models are two-electron systems
}

namespace {

std::string num_label(const char* name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s=%.10g", name, v);
  return buf;
}

}  // namespace

std::string param_label(const ModelParams& p) {
  if (const auto* h = std::get_if<HubbardParams>(&p)) return num_label("omega", h->omega);
  if (const auto* h = std::get_if<HookeParams>(&p)) return num_label("omega", h->omega);
  return num_label("Z", std::get<HeliumParams>(p).z);
}

namespace {

DistanceRecord make_record(const ModelParams& varied, int n, const OverlapValue& overlap,
                           const DensityProfile& rho_ref, const DensityProfile& rho_var,
                           double energy_ref, double energy_var, std::string flags) {
  DistanceRecord rec;
  rec.param_label = param_label(varied);
  rec.d_psi = d_psi(n, overlap);
  rec.d_rho = d_rho(rho_ref, rho_var);
  rec.d_psi_norm = rec.d_psi / std::sqrt(2.0 * n);
  rec.d_rho_norm = rec.d_rho / (2.0 * n);
  rec.overlap_modulus = overlap.modulus;
  rec.energy_ref = energy_ref;
  rec.energy_var = energy_var;
  rec.flags = std::move(flags);
  check_bounds(rec.d_psi, rec.d_rho, n);
  return rec;
}

std::vector<DistanceRecord> run_hubbard(const SweepSpec& spec) {
  const auto* ref_params = std::get_if<HubbardParams>(&spec.reference);
  if (!ref_params) throw ValidationError("run_sweep: hubbard sweep needs hubbard reference");
  ref_params->validate();

  const auto ref = ground_state(*ref_params, spec.accuracy.hubbard);
  const auto rho_ref = site_density(ref);
  const int n = ref_params->particle_count();

  std::vector<DistanceRecord> records;
  records.reserve(spec.varied.size());
  for (const auto& point : spec.varied) {
    const auto* params = std::get_if<HubbardParams>(&point);
    if (!params) throw ValidationError("run_sweep: varied point is not a hubbard point");
    if (!params->same_sector(*ref_params))
      throw ValidationError("run_sweep: varied point " + param_label(point) +
                            " has a different (L, n_up, n_down) sector than the reference");
    const auto var = ground_state(*params, spec.accuracy.hubbard);
    std::string flags;
    if (ref.degenerate) flags = "degenerate-ref";
    if (var.degenerate) flags += flags.empty() ? "degenerate-var" : ";degenerate-var";
    records.push_back(make_record(point, n, lattice_overlap(ref, var), rho_ref,
                                  site_density(var), ref.energy, var.energy,
                                  std::move(flags)));
  }
  return records;
}

std::vector<DistanceRecord> run_hooke(const SweepSpec& spec) {
  const auto* ref_params = std::get_if<HookeParams>(&spec.reference);
  if (!ref_params) throw ValidationError("run_sweep: hooke sweep needs hooke reference");

  const auto ref = solve_hooke(*ref_params, spec.accuracy.hooke);
  std::vector<HookeState> states;
  states.reserve(spec.varied.size());
  double radius = hooke_density_radius(ref);
  for (const auto& point : spec.varied) {
    const auto* params = std::get_if<HookeParams>(&point);
    if (!params) throw ValidationError("run_sweep: varied point is not a hooke point");
    states.push_back(solve_hooke(*params, spec.accuracy.hooke));
    radius = std::max(radius, hooke_density_radius(states.back()));
  }

  const Grid1D grid = gauss_legendre(spec.accuracy.density_grid_nodes, 0.0, radius);
  const auto rho_ref = hooke_density(ref, grid);

  std::vector<DistanceRecord> records;
  records.reserve(spec.varied.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    records.push_back(make_record(spec.varied[i], 2, hooke_overlap(ref, states[i]), rho_ref,
                                  hooke_density(states[i], grid), ref.energy_total,
                                  states[i].energy_total, ""));
  }
  return records;
}

std::vector<DistanceRecord> run_helium(const SweepSpec& spec) {
  const auto* ref_params = std::get_if<HeliumParams>(&spec.reference);
  if (!ref_params) throw ValidationError("run_sweep: helium sweep needs helium reference");

  const auto ref = solve_helium(*ref_params);
  std::vector<HeliumState> states;
  states.reserve(spec.varied.size());
  double radius = helium_density_radius(ref);
  for (const auto& point : spec.varied) {
    const auto* params = std::get_if<HeliumParams>(&point);
    if (!params) throw ValidationError("run_sweep: varied point is not a helium point");
    states.push_back(solve_helium(*params));
    radius = std::max(radius, helium_density_radius(states.back()));
  }

  const Grid1D grid = gauss_legendre(spec.accuracy.density_grid_nodes, 0.0, radius);
  const auto rho_ref = helium_density(ref, grid);

  std::vector<DistanceRecord> records;
  records.reserve(spec.varied.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    records.push_back(make_record(spec.varied[i], 2, helium_overlap(ref, states[i]), rho_ref,
                                  helium_density(states[i], grid), ref.energy,
                                  states[i].energy, ""));
  }
  return records;
}

}  // namespace

std::vector<DistanceRecord> run_sweep(const SweepSpec& spec) {
  if (spec.varied.empty()) throw ValidationError("run_sweep: empty varied list");
  switch (spec.model) {
    case ModelKind::Hubbard: return run_hubbard(spec);
    case ModelKind::Hooke: return run_hooke(spec);
    case ModelKind::Helium: return run_helium(spec);
  }
  throw ValidationError("run_sweep: unknown model");
}

AnalysisReport analyze(const std::vector<DistanceRecord>& records, int n) {
  if (records.size() < 6) throw ValidationError("analyze: need at least 6 records");
  for (std::size_t i = 0; i + 1 < records.size(); ++i)
    if (records[i + 1].d_psi < records[i].d_psi - 1e-12)
      throw ValidationError("analyze: records must be sorted by d_psi");

  AnalysisReport report;
  const double psi_max_bound = std::sqrt(2.0 * n);

  std::vector<std::pair<double, double>> head;
  for (std::size_t i = 0; i < 5; ++i)
    head.emplace_back(records[i].d_psi_norm, records[i].d_rho_norm);
  report.initial_slope = linear_fit(head).slope;

  std::vector<std::pair<double, double>> body;
  for (const auto& r : records)
    if (r.d_psi <= 0.8 * psi_max_bound) body.emplace_back(r.d_psi_norm, r.d_rho_norm);
  if (body.size() < 2)
    throw ValidationError("analyze: fewer than 2 records below 0.8 sqrt(2N)");
  report.linear_r2 = linear_fit(body).r_squared;

  report.monotonic = true;
  for (std::size_t i = 0; i + 1 < records.size(); ++i)
    if (records[i + 1].d_rho < records[i].d_rho - 1e-9) report.monotonic = false;

  const std::size_t count = std::max<std::size_t>(2, records.size() / 10);
  const std::size_t i0 = records.size() - count;
  const auto chord = [](const DistanceRecord& a, const DistanceRecord& b) {
    const double dx = b.d_psi_norm - a.d_psi_norm;
    if (std::abs(dx) < 1e-12) return 0.0;
    return (b.d_rho_norm - a.d_rho_norm) / dx;
  };
  const double tail = chord(records[i0], records.back());
  const double overall = chord(records.front(), records.back());
  report.tail_slope_ratio = (overall != 0.0) ? tail / overall : 0.0;

  for (const auto& r : records) {
    report.max_d_psi = std::max(report.max_d_psi, r.d_psi);
    report.max_d_rho = std::max(report.max_d_rho, r.d_rho);
  }
  return report;
}

double superposition_check(const std::vector<DistanceRecord>& records_a,
                           const std::vector<DistanceRecord>& records_b) {
  if (records_a.empty() || records_b.empty())
    throw ValidationError("superposition_check: empty record set");
  // Both sweeps must be N = 2: the raw/normalized ratio is sqrt(2N) = 2.
  for (const auto* recs : {&records_a, &records_b})
    for (const auto& r : *recs)
      if (r.d_psi > 1e-9 && std::abs(r.d_psi / r.d_psi_norm - 2.0) > 1e-6)
        throw ValidationError("superposition_check: record set is not an N=2 sweep");

  auto sorted = [](std::vector<DistanceRecord> v) {
    std::sort(v.begin(), v.end(),
              [](const auto& x, const auto& y) { return x.d_psi_norm < y.d_psi_norm; });
    return v;
  };
  const auto a = sorted(records_a);
  const auto b = sorted(records_b);

  const double lo = std::max(a.front().d_psi_norm, b.front().d_psi_norm);
  const double hi = std::min(a.back().d_psi_norm, b.back().d_psi_norm);
  if (!(hi > lo)) throw ValidationError("superposition_check: empty common d_psi range");

  auto interp_b = [&b](double x) {
    std::size_t j = 1;
    while (j + 1 < b.size() && b[j].d_psi_norm < x) ++j;
    const double x0 = b[j - 1].d_psi_norm, x1 = b[j].d_psi_norm;
    const double y0 = b[j - 1].d_rho_norm, y1 = b[j].d_rho_norm;
    if (x1 - x0 < 1e-15) return 0.5 * (y0 + y1);
    const double f = (x - x0) / (x1 - x0);
    return y0 + f * (y1 - y0);
  };

  double max_dev = 0.0;
  for (const auto& r : a) {
    if (r.d_psi_norm < lo || r.d_psi_norm > hi) continue;
    max_dev = std::max(max_dev, std::abs(r.d_rho_norm - interp_b(r.d_psi_norm)));
  }
  return max_dev;
}

std::vector<SweepSpec> preset_paper_sweeps() {
  std::vector<SweepSpec> sweeps;

  auto helium_point = [](double z) {
    HeliumParams p;
    p.z = z;
    return p;
  };
  {
    SweepSpec s;
    s.model = ModelKind::Helium;
    s.label = "helium-Z3-down";
    s.reference = helium_point(3.0);
    for (int k = 1; k <= 41; ++k) s.varied.push_back(helium_point((300 - 5 * k) / 100.0));
    sweeps.push_back(std::move(s));
  }
  {
    SweepSpec s;
    s.model = ModelKind::Helium;
    s.label = "helium-Z2-up";
    s.reference = helium_point(2.0);
    for (int k = 1; k <= 32; ++k) s.varied.push_back(helium_point((200 + 25 * k) / 100.0));
    sweeps.push_back(std::move(s));
  }
  {
    SweepSpec s;
    s.model = ModelKind::Helium;
    s.label = "helium-Z2-down";
    s.reference = helium_point(2.0);
    for (int k = 1; k <= 21; ++k) s.varied.push_back(helium_point((200 - 5 * k) / 100.0));
    sweeps.push_back(std::move(s));
  }

  auto hooke_point = [](double w) {
    HookeParams p;
    p.omega = w;
    return p;
  };
  {
    SweepSpec s;
    s.model = ModelKind::Hooke;
    s.label = "hooke-up";
    s.reference = hooke_point(0.5);
    for (int k = 1; k <= 24; ++k) s.varied.push_back(hooke_point(0.5 * std::pow(40.0, k / 24.0)));
    sweeps.push_back(std::move(s));
  }
  {
    SweepSpec s;
    s.model = ModelKind::Hooke;
    s.label = "hooke-down";
    s.reference = hooke_point(0.5);
    for (int k = 1; k <= 24; ++k) s.varied.push_back(hooke_point(0.5 * std::pow(0.02, k / 24.0)));
    sweeps.push_back(std::move(s));
  }

  for (const int n : {2, 4, 8}) {
    for (const double u : {2.0, 6.0}) {
      SweepSpec s;
      s.model = ModelKind::Hubbard;
      s.label = "hubbard-N" + std::to_string(n) + "-U" + std::to_string(static_cast<int>(u));
      HubbardParams ref;
      ref.sites = 8;
      ref.n_up = n / 2;
      ref.n_down = n / 2;
      ref.t = 1.0;
      ref.u = u;
      ref.omega = 4.0;
      s.reference = ref;
      for (int k = 1; k <= 20; ++k) {
        HubbardParams p = ref;
        p.omega = 4.0 * std::pow(0.05 / 4.0, k / 20.0);
        s.varied.push_back(p);
      }
      sweeps.push_back(std::move(s));
    }
  }
  return sweeps;
}

}  // namespace qmetric
