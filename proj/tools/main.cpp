// Copyright 2026 The qktext authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "qktext/harness.hpp"

namespace {

struct CommonArgs {
  std::string config;
  long shots = 0;
  std::uint64_t seed = 0;
  std::string map;
  int qubits = 0;
  int dim = 0;
};

// Every subcommand reads a config file; command-line flags override
// single keys without editing the file.
void attach_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config, "run configuration file")
      ->required();
  cmd->add_option("--shots", args->shots, "kernel shots per pair (0 = exact)");
  cmd->add_option("--seed", args->seed, "run seed (replaces the seed list)");
  cmd->add_option("--map", args->map, "feature map: amplitude, zz, or linear");
  cmd->add_option("--qubits", args->qubits, "qubit count (0 = derive from dim)");
  cmd->add_option("--dim", args->dim, "embedding dimension");
}

qktext::RunConfig resolve(const CLI::App* cmd, const CommonArgs& args) {
  qktext::RunConfig cfg = qktext::load_config(args.config);
  if (cmd->count("--shots") > 0) cfg.shots = args.shots;
  if (cmd->count("--seed") > 0) cfg.seeds = {args.seed};
  if (cmd->count("--map") > 0) {
    if (args.map == "amplitude") {
      cfg.map = qktext::MapChoice::kAmplitude;
    } else if (args.map == "zz") {
      cfg.map = qktext::MapChoice::kZz;
    } else if (args.map == "linear" || args.map == "csvm") {
      cfg.map = qktext::MapChoice::kLinear;
    } else {
      throw qktext::UsageError("--map must be amplitude, zz, or linear, got '" +
                               args.map + "'");
    }
  }
  if (cmd->count("--qubits") > 0) cfg.qubits = args.qubits;
  if (cmd->count("--dim") > 0) cfg.dim = args.dim;
  qktext::validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-kernel text classification toolkit"};
  app.require_subcommand(1);

  CommonArgs embed_args, kernel_args, train_args, exp_args;
  CLI::App* embed =
      app.add_subcommand("embed", "sample a split and write feature vectors");
  attach_common(embed, &embed_args);
  CLI::App* kernel =
      app.add_subcommand("kernel", "compute Gram matrices from feature vectors");
  attach_common(kernel, &kernel_args);
  CLI::App* train = app.add_subcommand(
      "train-eval", "train an SVM on stored Gram matrices and score the split");
  attach_common(train, &train_args);
  CLI::App* experiment = app.add_subcommand(
      "experiment", "run the full multi-seed, multi-map accuracy table");
  attach_common(experiment, &exp_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    std::string artifact;
    if (embed->parsed()) {
      const qktext::RunConfig cfg = resolve(embed, embed_args);
      artifact = qktext::cmd_embed(cfg, cfg.seeds.front());
    } else if (kernel->parsed()) {
      const qktext::RunConfig cfg = resolve(kernel, kernel_args);
      artifact = qktext::cmd_kernel(cfg, cfg.seeds.front());
    } else if (train->parsed()) {
      const qktext::RunConfig cfg = resolve(train, train_args);
      artifact = qktext::cmd_train_eval(cfg, cfg.seeds.front());
    } else {
      const qktext::RunConfig cfg = resolve(experiment, exp_args);
      qktext::run_experiment(cfg);
      artifact = cfg.out_dir + "/experiment.json";
    }
    std::printf("%s\n", artifact.c_str());
    return 0;
  } catch (const qktext::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const qktext::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const qktext::NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const qktext::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
