// Copyright 2026 The qmetric Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qmetric/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qmetric {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

constexpr const char* kCsvHeader =
    "param,d_psi,d_rho,d_psi_norm,d_rho_norm,overlap,energy_ref,energy_var,flags";

double parse_double(const std::string& s, const char* field) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(std::string("CSV: bad numeric field ") + field + ": '" + s + "'");
  }
}

}  // namespace

std::string render_csv(const std::vector<DistanceRecord>& records) {
  if (records.empty()) throw ValidationError("emit_csv: no records");
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += r.param_label;
    out += ',';
    out += fmt17(r.d_psi);
    out += ',';
    out += fmt17(r.d_rho);
    out += ',';
    out += fmt17(r.d_psi_norm);
    out += ',';
    out += fmt17(r.d_rho_norm);
    out += ',';
    out += fmt17(r.overlap_modulus);
    out += ',';
    out += fmt17(r.energy_ref);
    out += ',';
    out += fmt17(r.energy_var);
    out += ',';
    out += r.flags;
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<DistanceRecord>& records, const std::string& path) {
  write_file(path, render_csv(records));
}

std::vector<DistanceRecord> parse_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ValidationError("CSV: unexpected header '" + line + "'");

  std::vector<DistanceRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto parts = split(line, ',');
    if (parts.size() != 9)
      throw ValidationError("CSV: expected 9 fields, got " + std::to_string(parts.size()));
    DistanceRecord r;
    r.param_label = parts[0];
    r.d_psi = parse_double(parts[1], "d_psi");
    r.d_rho = parse_double(parts[2], "d_rho");
    r.d_psi_norm = parse_double(parts[3], "d_psi_norm");
    r.d_rho_norm = parse_double(parts[4], "d_rho_norm");
    r.overlap_modulus = parse_double(parts[5], "overlap");
    r.energy_ref = parse_double(parts[6], "energy_ref");
    r.energy_var = parse_double(parts[7], "energy_var");
    r.flags = parts[8];
    records.push_back(std::move(r));
  }
  if (records.empty()) throw ValidationError("CSV: no data rows");
  return records;
}

std::vector<DistanceRecord> parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv_text(ss.str());
}

namespace {

constexpr int kPanelWidth = 640;
constexpr int kPanelHeight = 420;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 44.0;
constexpr double kMarginBottom = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<PlotPanel>& panels) {
  if (panels.empty()) throw ValidationError("emit_svg: no panels");
  const int total_height = kPanelHeight * static_cast<int>(panels.size());
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPanelWidth << "\" height=\""
      << total_height << "\" viewBox=\"0 0 " << kPanelWidth << " " << total_height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const auto& panel = panels[pi];
    const double oy = kPanelHeight * static_cast<double>(pi);
    double x_max = 0.0, y_max = 0.0;
    for (const auto& s : panel.series)
      for (const auto& [x, y] : s.points) {
        x_max = std::max(x_max, x);
        y_max = std::max(y_max, y);
      }
    if (x_max <= 0.0) x_max = 1.0;
    if (y_max <= 0.0) y_max = 1.0;
    x_max *= 1.05;
    y_max *= 1.05;

    const double plot_w = kPanelWidth - kMarginLeft - kMarginRight;
    const double plot_h = kPanelHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + x / x_max * plot_w; };
    auto py = [&](double y) { return oy + kMarginTop + (1.0 - y / y_max) * plot_h; };

    svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<text x=\"" << fmt_coord(kMarginLeft) << "\" y=\"" << fmt_coord(oy + 22.0)
        << "\" font-size=\"14\" font-weight=\"bold\">" << xml_escape(panel.title) << "</text>\n";
    // Axes.
    svg << "<line x1=\"" << fmt_coord(px(0)) << "\" y1=\"" << fmt_coord(py(0)) << "\" x2=\""
        << fmt_coord(px(x_max)) << "\" y2=\"" << fmt_coord(py(0))
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << fmt_coord(px(0)) << "\" y1=\"" << fmt_coord(py(0)) << "\" x2=\""
        << fmt_coord(px(0)) << "\" y2=\"" << fmt_coord(py(y_max))
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int tick = 0; tick <= 5; ++tick) {
      const double tx = x_max * tick / 5.0;
      const double ty = y_max * tick / 5.0;
      svg << "<line x1=\"" << fmt_coord(px(tx)) << "\" y1=\"" << fmt_coord(py(0)) << "\" x2=\""
          << fmt_coord(px(tx)) << "\" y2=\"" << fmt_coord(py(0) + 4.0)
          << "\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << fmt_coord(px(tx)) << "\" y=\"" << fmt_coord(py(0) + 18.0)
          << "\" text-anchor=\"middle\">" << fmt_tick(tx) << "</text>\n";
      svg << "<line x1=\"" << fmt_coord(px(0) - 4.0) << "\" y1=\"" << fmt_coord(py(ty))
          << "\" x2=\"" << fmt_coord(px(0)) << "\" y2=\"" << fmt_coord(py(ty))
          << "\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << fmt_coord(px(0) - 8.0) << "\" y=\"" << fmt_coord(py(ty) + 4.0)
          << "\" text-anchor=\"end\">" << fmt_tick(ty) << "</text>\n";
    }
    svg << "<text x=\"" << fmt_coord(kMarginLeft + plot_w / 2.0) << "\" y=\""
        << fmt_coord(oy + kPanelHeight - 14.0) << "\" text-anchor=\"middle\">"
        << xml_escape(panel.x_label) << "</text>\n";
    svg << "<text x=\"" << fmt_coord(18.0) << "\" y=\""
        << fmt_coord(oy + kMarginTop + plot_h / 2.0) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << fmt_coord(oy + kMarginTop + plot_h / 2.0) << ")\">" << xml_escape(panel.y_label)
        << "</text>\n";

    for (std::size_t si = 0; si < panel.series.size(); ++si) {
      const auto& series = panel.series[si];
      const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : series.points) svg << fmt_coord(px(x)) << "," << fmt_coord(py(y)) << " ";
      svg << "\"/>\n";
      for (const auto& [x, y] : series.points)
        svg << "<circle cx=\"" << fmt_coord(px(x)) << "\" cy=\"" << fmt_coord(py(y))
            << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
      // Legend entry.
      const double ly = oy + kMarginTop + 14.0 * static_cast<double>(si) + 8.0;
      svg << "<line x1=\"" << fmt_coord(kMarginLeft + 10.0) << "\" y1=\"" << fmt_coord(ly)
          << "\" x2=\"" << fmt_coord(kMarginLeft + 34.0) << "\" y2=\"" << fmt_coord(ly)
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
      svg << "<text x=\"" << fmt_coord(kMarginLeft + 40.0) << "\" y=\"" << fmt_coord(ly + 4.0)
          << "\">" << xml_escape(series.label) << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_svg(const std::vector<PlotPanel>& panels, const std::string& path) {
  write_file(path, render_svg(panels));
}

}  // namespace qmetric
