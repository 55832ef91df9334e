// Copyright 2026 The coopgeo Authors
// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"coopgeo: mutually-nearest-neighbor base-station cooperation toolkit.\n"
               "Lengths in km, intensities in km^-2, powers in W, thresholds in dB."};
  app.set_version_flag("--version", std::string(COOPGEO_VERSION));
  app.set_config("--config", "", "INI or TOML file with option defaults; flags take precedence");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);
  auto commands = coopgeo::cli::register_commands(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return coopgeo::cli::execute(app, commands);
}
