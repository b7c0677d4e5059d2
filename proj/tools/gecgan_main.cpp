// tools/gecgan_main.cpp
//
// Copyright 2026  The gecgan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.  Configuration is a flat key=value file with
// dotted keys; --set overrides individual keys, flags win over the file.
//
//   gecgan synth-clean --run-dir run --set synth.n=500 --set seed=13
//   gecgan corrupt --run-dir run
//   gecgan learn-bpe --run-dir run
//   gecgan pretrain-generator --run-dir run --config experiment.cfg
//   ...

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gecgan/cli/pipeline.hpp"
#include "gecgan/util/config.hpp"
#include "gecgan/util/error.hpp"

int main(int argc, char **argv) {
  CLI::App app{"adversarial grammatical error correction toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> commands = {
      "synth-clean",    "corrupt",
      "learn-bpe",      "pretrain-generator",
      "make-negatives", "pretrain-discriminator",
      "adversarial-train", "decode",
      "evaluate",       "sweep"};

  struct Common {
    std::string config_path;
    std::string run_dir;
    std::vector<std::string> overrides;
  };
  std::vector<Common> parsed(commands.size());
  for (size_t i = 0; i < commands.size(); ++i) {
    auto *sub = app.add_subcommand(commands[i]);
    sub->add_option("--config", parsed[i].config_path, "key=value configuration file");
    sub->add_option("--run-dir", parsed[i].run_dir, "run directory (overrides run_dir)");
    sub->add_option("--set", parsed[i].overrides, "override: key=value (repeatable)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (size_t i = 0; i < commands.size(); ++i) {
      if (!app.get_subcommand(commands[i])->parsed()) continue;
      gecgan::Config cfg;
      if (!parsed[i].config_path.empty()) cfg = gecgan::Config::from_file(parsed[i].config_path);
      for (const auto &kv : parsed[i].overrides) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos) {
          throw gecgan::ValidationError("--set expects key=value, got: " + kv);
        }
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (!parsed[i].run_dir.empty()) cfg.set("run_dir", parsed[i].run_dir);
      gecgan::cli::run_command(commands[i], cfg);
      return 0;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
