// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "qmetric/io.hpp"
#include "qmetric/sweep.hpp"

using json = nlohmann::json;
using namespace qmetric;

namespace {

ModelParams params_from_json(ModelKind kind, const json& j) {
  auto reject_unknown = [&j](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (std::find_if(allowed.begin(), allowed.end(),
                       [&key](const char* a) { return key == a; }) == allowed.end())
        throw ValidationError("unknown parameter key '" + key + "'");
    }
  };
  switch (kind) {
    case ModelKind::Hubbard: {
      reject_unknown({"L", "n_up", "n_down", "t", "U", "omega"});
      HubbardParams p;
      p.sites = j.value("L", p.sites);
      p.n_up = j.value("n_up", p.n_up);
      p.n_down = j.value("n_down", p.n_down);
      p.t = j.value("t", p.t);
      p.u = j.value("U", p.u);
      p.omega = j.value("omega", p.omega);
      p.validate();
      return p;
    }
    case ModelKind::Hooke: {
      reject_unknown({"omega"});
      HookeParams p;
      p.omega = j.value("omega", p.omega);
      p.validate();
      return p;
    }
    case ModelKind::Helium: {
      reject_unknown({"Z", "K", "seed"});
      HeliumParams p;
      p.z = j.value("Z", p.z);
      p.basis_size = j.value("K", p.basis_size);
      p.seed = j.value("seed", p.seed);
      p.validate();
      return p;
    }
  }
  throw ValidationError("unknown model kind");
}

SweepSpec spec_from_json(const json& j) {
  SweepSpec spec;
  if (!j.contains("model")) throw ValidationError("sweep spec: missing 'model'");
  spec.model = model_kind_from_string(j.at("model").get<std::string>());
  spec.label = j.value("label", to_string(spec.model));
  spec.normalize = j.value("normalize", true);

  if (j.contains("accuracy")) {
    const json& a = j.at("accuracy");
    for (const auto& [key, value] : a.items()) {
      (void)value;
      static const char* allowed[] = {"dense_threshold", "lanczos_max_iter", "lanczos_seed",
                                      "hooke_n_points", "hooke_r_max_factor",
                                      "hooke_density_radial_nodes",
                                      "hooke_density_angular_nodes", "density_grid_nodes"};
      if (std::find_if(std::begin(allowed), std::end(allowed),
                       [&key](const char* s) { return key == s; }) == std::end(allowed))
        throw ValidationError("unknown accuracy key '" + key + "'");
    }
    spec.accuracy.hubbard.dense_threshold =
        a.value("dense_threshold", spec.accuracy.hubbard.dense_threshold);
    spec.accuracy.hubbard.lanczos_max_iter =
        a.value("lanczos_max_iter", spec.accuracy.hubbard.lanczos_max_iter);
    spec.accuracy.hubbard.lanczos_seed = a.value("lanczos_seed", spec.accuracy.hubbard.lanczos_seed);
    spec.accuracy.hooke.n_points = a.value("hooke_n_points", spec.accuracy.hooke.n_points);
    spec.accuracy.hooke.r_max_factor =
        a.value("hooke_r_max_factor", spec.accuracy.hooke.r_max_factor);
    spec.accuracy.hooke.density_radial_nodes =
        a.value("hooke_density_radial_nodes", spec.accuracy.hooke.density_radial_nodes);
    spec.accuracy.hooke.density_angular_nodes =
        a.value("hooke_density_angular_nodes", spec.accuracy.hooke.density_angular_nodes);
    spec.accuracy.density_grid_nodes =
        a.value("density_grid_nodes", spec.accuracy.density_grid_nodes);
  }

  if (!j.contains("reference")) throw ValidationError("sweep spec: missing 'reference'");
  spec.reference = params_from_json(spec.model, j.at("reference"));
  if (!j.contains("varied") || !j.at("varied").is_array() || j.at("varied").empty())
    throw ValidationError("sweep spec: 'varied' must be a non-empty array");
  for (const json& point : j.at("varied"))
    spec.varied.push_back(params_from_json(spec.model, point));
  return spec;
}

SweepSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open spec file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("spec file '" + path + "' is not valid JSON: " + e.what());
  }
  return spec_from_json(j);
}

std::vector<DistanceRecord> sorted_by_d_psi(std::vector<DistanceRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const auto& a, const auto& b) { return a.d_psi < b.d_psi; });
  return records;
}

void print_analysis(const std::string& label, const AnalysisReport& rep, std::ostream& out) {
  out << label << ": initial_slope=" << rep.initial_slope << " linear_r2=" << rep.linear_r2
      << " monotonic=" << (rep.monotonic ? "yes" : "no")
      << " tail_slope_ratio=" << rep.tail_slope_ratio << " max_d_psi=" << rep.max_d_psi
      << " max_d_rho=" << rep.max_d_rho << "\n";
}

int infer_particle_count(const std::vector<DistanceRecord>& records) {
  for (const auto& r : records) {
    if (r.d_psi > 1e-12 && r.d_psi_norm > 0.0) {
      const double root = r.d_psi / r.d_psi_norm;  // sqrt(2N)
      return static_cast<int>(std::lround(0.5 * root * root));
    }
  }
  throw ValidationError("cannot infer the particle number from an all-zero sweep; pass --n");
}

PlotSeries series_from_records(const std::string& label,
                               const std::vector<DistanceRecord>& records, bool normalized) {
  PlotSeries s;
  s.label = label;
  for (const auto& r : sorted_by_d_psi(records))
    s.points.emplace_back(normalized ? r.d_psi_norm : r.d_psi,
                          normalized ? r.d_rho_norm : r.d_rho);
  return s;
}

int run_single_sweep(const std::string& spec_path, const std::string& csv_path,
                     const std::string& svg_path) {
  const SweepSpec spec = load_spec(spec_path);
  const auto records = run_sweep(spec);
  if (!csv_path.empty()) {
    emit_csv(records, csv_path);
    std::cout << "wrote " << csv_path << "\n";
  }
  if (!svg_path.empty()) {
    PlotPanel panel;
    panel.title = spec.label;
    if (spec.normalize) {
      panel.x_label = "D_psi / sqrt(2N)";
      panel.y_label = "D_rho / 2N";
    }
    panel.series.push_back(series_from_records(spec.label, records, spec.normalize));
    emit_svg({panel}, svg_path);
    std::cout << "wrote " << svg_path << "\n";
  }
  if (records.size() >= 6) {
    const auto rep = analyze(sorted_by_d_psi(records), particle_count(spec.reference));
    print_analysis(spec.label, rep, std::cout);
  }
  return 0;
}

int run_reproduce_fig2(const std::string& outdir) {
  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  const auto sweeps = preset_paper_sweeps();

  std::vector<std::vector<DistanceRecord>> all_records;
  std::ofstream analysis(fs::path(outdir) / "analysis.txt");
  if (!analysis) throw ValidationError("cannot write into '" + outdir + "'");

  PlotPanel panel_a{"(a) helium isoelectronic series", "D_psi / sqrt(2N)", "D_rho / 2N", {}};
  PlotPanel panel_b{"(b) Hooke's atom", "D_psi / sqrt(2N)", "D_rho / 2N", {}};
  PlotPanel panel_c{"(c) confined Hubbard chain", "D_psi / sqrt(2N)", "D_rho / 2N", {}};

  for (const auto& spec : sweeps) {
    std::cout << "running " << spec.label << " (" << spec.varied.size() << " points)...\n";
    auto records = run_sweep(spec);
    const fs::path csv_path = fs::path(outdir) / (spec.label + ".csv");
    emit_csv(records, csv_path.string());

    const auto rep = analyze(sorted_by_d_psi(records), particle_count(spec.reference));
    print_analysis(spec.label, rep, analysis);
    print_analysis(spec.label, rep, std::cout);

    auto series = series_from_records(spec.label, records, true);
    switch (spec.model) {
      case ModelKind::Helium: panel_a.series.push_back(std::move(series)); break;
      case ModelKind::Hooke: panel_b.series.push_back(std::move(series)); break;
      case ModelKind::Hubbard: panel_c.series.push_back(std::move(series)); break;
    }
    all_records.push_back(std::move(records));
  }

  emit_svg({panel_a, panel_b, panel_c}, (fs::path(outdir) / "fig2.svg").string());

  // N = 2 universality: helium Z=2-down against the Hooke down sweep.
  const std::vector<DistanceRecord>* helium_down = nullptr;
  const std::vector<DistanceRecord>* hooke_down = nullptr;
  for (std::size_t i = 0; i < sweeps.size(); ++i) {
    if (sweeps[i].label == "helium-Z2-down") helium_down = &all_records[i];
    if (sweeps[i].label == "hooke-down") hooke_down = &all_records[i];
  }
  std::ofstream super(fs::path(outdir) / "superposition.txt");
  const double deviation = superposition_check(*helium_down, *hooke_down);
  super << "sweeps: helium-Z2-down vs hooke-down\n"
        << "max_normalized_deviation: " << deviation << "\n"
        << "soft_threshold: 0.1\n"
        << "within_threshold: " << (deviation < 0.1 ? "yes" : "no") << "\n";
  std::cout << "superposition max deviation " << deviation << " (soft threshold 0.1)\n"
            << "artifacts in " << outdir << "\n";
  return 0;
}

int run_analyze(const std::string& csv_path, int n_override) {
  auto records = sorted_by_d_psi(parse_csv(csv_path));
  const int n = n_override > 0 ? n_override : infer_particle_count(records);
  const auto rep = analyze(records, n);
  std::cout << "records: " << records.size() << "  N: " << n << "\n";
  print_analysis(csv_path, rep, std::cout);
  return 0;
}

int run_distance(const std::string& model_name, const std::string& ref_json,
                 const std::string& var_json) {
  SweepSpec spec;
  spec.model = model_kind_from_string(model_name);
  spec.label = "distance";
  try {
    spec.reference = params_from_json(spec.model, json::parse(ref_json));
    spec.varied.push_back(params_from_json(spec.model, json::parse(var_json)));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad parameter JSON: ") + e.what());
  }
  const auto records = run_sweep(spec);
  const auto& r = records.front();
  const int n = particle_count(spec.reference);
  const auto bounds = check_bounds(r.d_psi, r.d_rho, n);
  std::printf("N          : %d\n", n);
  std::printf("overlap    : %.12g\n", r.overlap_modulus);
  std::printf("D_psi      : %.12g   (max sqrt(2N) = %.12g, margin %.3g)\n", r.d_psi,
              bounds.psi_bound, bounds.psi_margin);
  std::printf("D_rho      : %.12g   (max 2N = %.12g, margin %.3g)\n", r.d_rho, bounds.rho_bound,
              bounds.rho_margin);
  std::printf("normalized : D_psi %.12g, D_rho %.12g\n", r.d_psi_norm, r.d_rho_norm);
  std::printf("energies   : reference %.12g, varied %.12g\n", r.energy_ref, r.energy_var);
  if (!r.flags.empty()) std::printf("flags      : %s\n", r.flags.c_str());
  return 0;
}

int run_plot(const std::vector<std::string>& csv_paths, const std::string& svg_path, bool raw) {
  PlotPanel panel;
  panel.title = "density distance vs wave-function distance";
  if (!raw) {
    panel.x_label = "D_psi / sqrt(2N)";
    panel.y_label = "D_rho / 2N";
  }
  for (const auto& path : csv_paths)
    panel.series.push_back(
        series_from_records(std::filesystem::path(path).stem().string(), parse_csv(path), !raw));
  emit_svg({panel}, svg_path);
  std::cout << "wrote " << svg_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric-space distances between quantum ground states and their densities"};
  app.require_subcommand(1);

  auto* sweep_cmd = app.add_subcommand("sweep", "run one sweep from a JSON spec file");
  std::string spec_path, csv_out, svg_out;
  sweep_cmd->add_option("--spec", spec_path, "JSON sweep spec")->required();
  sweep_cmd->add_option("--csv", csv_out, "CSV output path");
  sweep_cmd->add_option("--svg", svg_out, "SVG output path");

  auto* fig2_cmd = app.add_subcommand("reproduce-fig2", "run the full preset panel set");
  std::string outdir = "fig2_out";
  fig2_cmd->add_option("--outdir", outdir, "output directory (default fig2_out)");

  auto* analyze_cmd = app.add_subcommand("analyze", "curve statistics for a sweep CSV");
  std::string analyze_csv;
  int n_override = 0;
  analyze_cmd->add_option("--csv", analyze_csv, "sweep CSV")->required();
  analyze_cmd->add_option("--n", n_override, "particle number (inferred when omitted)");

  auto* dist_cmd = app.add_subcommand("distance", "distances between two parameter points");
  std::string model_name, ref_json, var_json;
  dist_cmd->add_option("--model", model_name, "hubbard | hooke | helium")->required();
  dist_cmd->add_option("--ref", ref_json, "reference params as JSON")->required();
  dist_cmd->add_option("--var", var_json, "varied params as JSON")->required();

  auto* plot_cmd = app.add_subcommand("plot", "render sweep CSVs as an SVG");
  std::vector<std::string> plot_csvs;
  std::string plot_svg;
  bool plot_raw = false;
  plot_cmd->add_option("--csv", plot_csvs, "sweep CSV (repeatable)")->required();
  plot_cmd->add_option("--svg", plot_svg, "SVG output path")->required();
  plot_cmd->add_flag("--raw", plot_raw, "plot raw distances instead of normalized");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed()) return run_single_sweep(spec_path, csv_out, svg_out);
    if (fig2_cmd->parsed()) return run_reproduce_fig2(outdir);
    if (analyze_cmd->parsed()) return run_analyze(analyze_csv, n_override);
    if (dist_cmd->parsed()) return run_distance(model_name, ref_json, var_json);
    if (plot_cmd->parsed()) return run_plot(plot_csvs, plot_svg, plot_raw);
  } catch (const BoundViolation& e) {
    std::cerr << "bound violation: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
