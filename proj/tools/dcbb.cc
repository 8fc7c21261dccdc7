// Copyright 2026 The dcbb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: verify, sweep, payments, adversary, opt.
//
//   dcbb verify --config exp.cfg --out result.txt
//   dcbb adversary hamming --param m=6 --param f=3 --ladder "1, 2"
//   dcbb opt --instance inst.txt --input 0110
//
// Exit codes: 0 success, 1 invariant failure, 2 usage or config error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dcbb/document.h"
#include "dcbb/errors.h"
#include "dcbb/harness.h"
#include "dcbb/serialize.h"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> bound;
};

struct InstanceFlags {
  std::string instance_path;
  std::string generator;
  std::vector<std::string> params;
  std::optional<std::size_t> n;
  std::string ladder;
  std::string transformation;
};

void AddCommon(CLI::App* app, CommonFlags& flags) {
  app->add_option("-c,--config", flags.config_path, "Experiment config file");
  app->add_option("-o,--out", flags.out_path, "Output path (default: stdout)");
  app->add_option("--seed", flags.seed, "Seed override");
  app->add_option("--workers", flags.workers, "Worker threads for enumeration");
  app->add_option("--bound", flags.bound, "Largest input space enumerated exhaustively");
}

void AddInstance(CLI::App* app, InstanceFlags& flags) {
  app->add_option("--instance", flags.instance_path, "Instance file");
  app->add_option("--generator", flags.generator, "Generator name");
  app->add_option("-p,--param", flags.params, "Generator parameter key=value");
  app->add_option("-n,--agents", flags.n, "Agent count");
  app->add_option("--ladder", flags.ladder, "Value ladder, e.g. \"1, 10\"");
  app->add_option("-t,--transformation", flags.transformation,
                  "const, two, two-plus, multi, none");
}

// Builds the effective config: file first, then flags on top, re-parsed so
// flag values get the same validation as file values.
dcbb::ExperimentConfig BuildConfig(const CommonFlags& common, const InstanceFlags& inst) {
  dcbb::Document doc;
  if (!common.config_path.empty()) {
    doc = dcbb::ReadDocumentFile(common.config_path);
    doc.RequireHeader("experiment");
  }
  dcbb::Section& root = doc.root();
  auto set = [&](const std::string& key, const std::string& value) {
    dcbb::Section replaced(root.name(), root.line());
    for (const auto& e : root.entries()) {
      if (e.key != key) replaced.Add(e.key, e.value, e.line);
    }
    replaced.Add(key, value);
    root = replaced;
  };
  if (!inst.instance_path.empty()) set("instance", inst.instance_path);
  if (!inst.generator.empty()) set("generator", inst.generator);
  for (const auto& p : inst.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw dcbb::ParseError("expected key=value, got '" + p + "'", 0, "param");
    }
    set("param." + p.substr(0, eq), p.substr(eq + 1));
  }
  if (inst.n) set("n", std::to_string(*inst.n));
  if (!inst.ladder.empty()) set("ladder", inst.ladder);
  if (!inst.transformation.empty()) set("transformation", inst.transformation);
  if (common.seed) set("seed", std::to_string(*common.seed));
  if (common.workers) set("workers", std::to_string(*common.workers));
  if (common.bound) set("bound", std::to_string(*common.bound));
  if (!common.out_path.empty()) set("output", common.out_path);
  return dcbb::ParseConfigSection(root);
}

int Emit(const dcbb::CommandResult& result, const dcbb::ExperimentConfig& config) {
  if (config.output) {
    dcbb::WriteDocumentFile(*config.output, result.document);
  } else {
    std::cout << result.document.Serialize();
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotonicity-preserving black-box transformations: verification and experiments"};
  app.require_subcommand(1);

  CommonFlags common;
  InstanceFlags inst;
  std::string input;

  CLI::App* verify = app.add_subcommand("verify", "Verify a transformed algorithm");
  AddCommon(verify, common);
  AddInstance(verify, inst);

  CLI::App* sweep = app.add_subcommand("sweep", "Run a grid over n and h/l ratios");
  AddCommon(sweep, common);
  AddInstance(sweep, inst);

  CLI::App* payments = app.add_subcommand("payments", "Critical-value payments at an input");
  AddCommon(payments, common);
  AddInstance(payments, inst);
  payments->add_option("-i,--input", input, "Valuation vector as level digits")->required();

  CLI::App* adversary = app.add_subcommand("adversary", "Write a generated instance");
  AddCommon(adversary, common);
  AddInstance(adversary, inst);
  adversary->add_option("name", inst.generator, "Generator name");

  CLI::App* opt = app.add_subcommand("opt", "Optimal welfare at an input");
  AddCommon(opt, common);
  AddInstance(opt, inst);
  opt->add_option("-i,--input", input, "Valuation vector as level digits")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const dcbb::ExperimentConfig config = BuildConfig(common, inst);
    if (verify->parsed()) return Emit(dcbb::RunVerify(config), config);
    if (sweep->parsed()) return Emit(dcbb::RunSweep(config), config);
    if (payments->parsed()) return Emit(dcbb::RunPayments(config, input), config);
    if (adversary->parsed()) return Emit(dcbb::RunAdversary(config), config);
    if (opt->parsed()) return Emit(dcbb::RunOpt(config, input), config);
  } catch (const dcbb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
