// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "coopgeo/coverage.hpp"
#include "coopgeo/mnnr.hpp"
#include "coopgeo/pointproc.hpp"
#include "coopgeo/stats.hpp"
#include "coopgeo/superposition.hpp"

namespace coopgeo::io {

//! Shortest round-trip-safe text for a double ("%.10g").
std::string fmt(double x);

//! Writes x_km,y_km plus <path>.window.json describing the window.
void write_configuration(const std::filesystem::path& path, const Configuration& config);
Configuration read_configuration(const std::filesystem::path& path);

void write_partition(const std::filesystem::path& path, const Partition& part,
                     const InteriorMask& mask);

void write_marked(const std::filesystem::path& path, const MarkedConfiguration& m);

//! r_km,value,stderr
void write_curve(const std::filesystem::path& path, const std::vector<double>& grid,
                 const std::vector<double>& values,
                 const std::vector<double>& std_error);

void write_scalar(const std::filesystem::path& path, const Estimate& e);

struct InterferenceRow {
  double radius = 0;
  double mean_i1 = 0, mean_i2 = 0;
  double se_i1 = 0, se_i2 = 0;
};
void write_interference(const std::filesystem::path& path,
                        const std::vector<InterferenceRow>& rows);

//! T_linear,T_dB,coverage,stderr plus <path>.meta.json.
void write_coverage(const std::filesystem::path& path, const CoverageCurve& c);
CoverageCurve read_coverage(const std::filesystem::path& path);

//! Plain CSV with a header row; values formatted with fmt().
void write_table(const std::filesystem::path& path,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

}  // namespace coopgeo::io
