// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include "coopgeo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coopgeo/error.hpp"

namespace coopgeo::io {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  return in;
}

fs::path sidecar(const fs::path& path, const std::string& suffix) {
  fs::path p = path;
  p += suffix;
  return p;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double to_double(const std::string& s, const fs::path& path) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() && s.find_first_not_of(" \r", pos) != std::string::npos) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad number '" + s + "' in " + path.string());
  }
}

json window_json(const Window& w) {
  json j;
  if (w.is_disc()) {
    j["shape"] = "disc";
    j["center"] = {w.center().x, w.center().y};
    j["radius"] = w.radius();
  } else {
    j["shape"] = "rectangle";
    j["xmin"] = w.xmin();
    j["xmax"] = w.xmax();
    j["ymin"] = w.ymin();
    j["ymax"] = w.ymax();
  }
  return j;
}

Window window_from_json(const json& j) {
  if (j.at("shape") == "disc") {
    return Window::disc({j.at("center")[0].get<double>(), j.at("center")[1].get<double>()},
                        j.at("radius").get<double>());
  }
  return Window::rectangle(j.at("xmin").get<double>(), j.at("xmax").get<double>(),
                           j.at("ymin").get<double>(), j.at("ymax").get<double>());
}

}  // namespace

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void write_configuration(const fs::path& path, const Configuration& config) {
  auto out = open_out(path);
  out << "x_km,y_km\n";
  for (const Point2& p : config.atoms) out << fmt(p.x) << ',' << fmt(p.y) << '\n';
  open_out(sidecar(path, ".window.json")) << window_json(config.window).dump(2) << '\n';
}

Configuration read_configuration(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x_km,y_km", 0) != 0) {
    throw ValidationError("missing x_km,y_km header in " + path.string());
  }
  Configuration c;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 2) throw ValidationError("expected two columns in " + path.string());
    c.atoms.push_back({to_double(cells[0], path), to_double(cells[1], path)});
  }
  const fs::path side = sidecar(path, ".window.json");
  if (fs::exists(side)) {
    try {
      c.window = window_from_json(json::parse(open_in(side)));
    } catch (const json::exception& e) {
      throw ValidationError("bad window sidecar " + side.string() + ": " + e.what());
    }
  } else {
    throw ValidationError("missing window sidecar " + side.string());
  }
  for (const Point2& p : c.atoms) {
    if (!c.window.contains(p)) throw ValidationError("atom outside window in " + path.string());
  }
  return c;
}

void write_partition(const fs::path& path, const Partition& part, const InteriorMask& mask) {
  auto out = open_out(path);
  out << "atom_index,role,partner_index,interior\n";
  for (std::size_t i = 0; i < part.partner.size(); ++i) {
    const bool paired = part.is_paired(i);
    out << i << ',' << (paired ? "paired" : "single") << ','
        << (paired ? std::to_string(part.partner[i]) : std::string("-1")) << ','
        << (i < mask.interior.size() && mask.interior[i] ? 1 : 0) << '\n';
  }
}

void write_marked(const fs::path& path, const MarkedConfiguration& m) {
  auto out = open_out(path);
  out << "x_km,y_km,role,parent_index\n";
  for (const Point2& p : m.singles.atoms) out << fmt(p.x) << ',' << fmt(p.y) << ",single,-1\n";
  for (std::size_t j = 0; j < m.parents.size(); ++j) {
    const Point2& p = m.parents.atoms[j];
    out << fmt(p.x) << ',' << fmt(p.y) << ",parent," << j << '\n';
  }
  for (std::size_t j = 0; j < m.daughters.size(); ++j) {
    const Point2& p = m.daughters[j];
    out << fmt(p.x) << ',' << fmt(p.y) << ",daughter," << j << '\n';
  }
}

void write_curve(const fs::path& path, const std::vector<double>& grid,
                 const std::vector<double>& values, const std::vector<double>& std_error) {
  if (values.size() != grid.size() || (!std_error.empty() && std_error.size() != grid.size())) {
    throw ValidationError("write_curve: column lengths differ");
  }
  auto out = open_out(path);
  out << "r_km,value,stderr\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << fmt(grid[k]) << ',' << fmt(values[k]) << ','
        << fmt(std_error.empty() ? 0.0 : std_error[k]) << '\n';
  }
}

void write_scalar(const fs::path& path, const Estimate& e) {
  const json j = {{"estimate", e.estimate},
                  {"stderr", e.std_error},
                  {"n_reps", e.n_reps},
                  {"seed", e.seed}};
  open_out(path) << j.dump(2) << '\n';
}

void write_interference(const fs::path& path, const std::vector<InterferenceRow>& rows) {
  auto out = open_out(path);
  out << "R_km,mean_I1,mean_I2,stderr_I1,stderr_I2\n";
  for (const auto& r : rows) {
    out << fmt(r.radius) << ',' << fmt(r.mean_i1) << ',' << fmt(r.mean_i2) << ','
        << fmt(r.se_i1) << ',' << fmt(r.se_i2) << '\n';
  }
}

void write_coverage(const fs::path& path, const CoverageCurve& c) {
  if (c.values.size() != c.thresholds.size()) {
    throw ValidationError("write_coverage: column lengths differ");
  }
  auto out = open_out(path);
  out << "T_linear,T_dB,coverage,stderr\n";
  for (std::size_t k = 0; k < c.thresholds.size(); ++k) {
    const double t = c.thresholds[k];
    out << fmt(t) << ',' << fmt(linear_to_db(t)) << ',' << fmt(c.values[k]) << ','
        << fmt(k < c.std_error.size() ? c.std_error[k] : 0.0) << '\n';
  }
  const CoverageMeta& m = c.meta;
  json j = {{"model", m.model},   {"association", m.association},
            {"scheme", m.scheme}, {"method", m.method},
            {"lambda", m.lambda}, {"beta", m.beta},
            {"p", m.p},           {"sigma2", m.sigma2},
            {"r0", m.r0},         {"seed", m.seed},
            {"n_reps", m.reps},   {"window_radius", m.window_radius}};
  if (!c.branch_fraction.empty()) j["branch_fraction"] = c.branch_fraction;
  open_out(sidecar(path, ".meta.json")) << j.dump(2) << '\n';
}

CoverageCurve read_coverage(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("T_linear,T_dB,coverage,stderr", 0) != 0) {
    throw ValidationError("missing coverage header in " + path.string());
  }
  CoverageCurve c;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 4) throw ValidationError("expected four columns in " + path.string());
    c.thresholds.push_back(to_double(cells[0], path));
    c.values.push_back(to_double(cells[2], path));
    c.std_error.push_back(to_double(cells[3], path));
  }
  const fs::path side = sidecar(path, ".meta.json");
  if (fs::exists(side)) {
    const json j = json::parse(open_in(side));
    CoverageMeta& m = c.meta;
    m.model = j.value("model", "");
    m.association = j.value("association", "");
    m.scheme = j.value("scheme", "");
    m.method = j.value("method", "");
    m.lambda = j.value("lambda", 0.0);
    m.beta = j.value("beta", 0.0);
    m.p = j.value("p", 0.0);
    m.sigma2 = j.value("sigma2", 0.0);
    m.r0 = j.value("r0", 0.0);
    m.seed = j.value("seed", std::uint64_t{0});
    m.reps = j.value("n_reps", std::size_t{0});
    m.window_radius = j.value("window_radius", 0.0);
    if (j.contains("branch_fraction")) {
      c.branch_fraction = j["branch_fraction"].get<std::vector<double>>();
    }
  }
  return c;
}

void write_table(const fs::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw ValidationError("write_table: ragged row");
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << fmt(row[k]);
    out << '\n';
  }
}

}  // namespace coopgeo::io
