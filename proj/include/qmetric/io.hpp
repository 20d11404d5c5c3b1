// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmetric/sweep.hpp"

namespace qmetric {

/// CSV with header
///   param,d_psi,d_rho,d_psi_norm,d_rho_norm,overlap,energy_ref,energy_var,flags
/// UTF-8, \n line endings, floats at 17 significant digits.
void emit_csv(const std::vector<DistanceRecord>& records, const std::string& path);
std::string render_csv(const std::vector<DistanceRecord>& records);
std::vector<DistanceRecord> parse_csv(const std::string& path);
std::vector<DistanceRecord> parse_csv_text(const std::string& text);

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct PlotPanel {
  std::string title;
  std::string x_label = "D_psi";
  std::string y_label = "D_rho";
  std::vector<PlotSeries> series;
};

/// Self-contained SVG: panels stacked vertically, one polyline plus
/// markers per series, legend from series labels.
void emit_svg(const std::vector<PlotPanel>& panels, const std::string& path);
std::string render_svg(const std::vector<PlotPanel>& panels);

}  // namespace qmetric
