// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace coopgeo::cli {

//! Per-run output bookkeeping.
struct RunContext {
  std::string command;
  std::filesystem::path dir;
  std::vector<std::string> outputs;
  unsigned workers = 1;

  //! Path for a data file; records it for the manifest.
  std::filesystem::path data(const std::string& name);
};

using Handler = std::function<nlohmann::ordered_json(RunContext&)>;

struct Command {
  CLI::App* app = nullptr;
  Handler run;
};

//! Registers every subcommand on app. The returned map is keyed by name.
std::map<std::string, Command> register_commands(CLI::App& app);

//! Runs the selected subcommand and writes manifest.json. Returns the exit code.
int execute(CLI::App& app, std::map<std::string, Command>& commands);

}  // namespace coopgeo::cli
