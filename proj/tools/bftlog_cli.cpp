//  Copyright 2026 The bftlog Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.


// bftlog: run scenarios, regenerate golden vectors, run the lattice oracle
// and validate store files. Exit codes: 0 pass, 1 assertion failure,
// 2 configuration or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "bftlog/fixtures.hpp"
#include "bftlog/lattice_oracle.hpp"
#include "bftlog/simulation.hpp"
#include "bftlog/store_file.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            const std::string& out) {
  bftlog::Scenario scenario = bftlog::load_scenario(scenario_path);
  const std::uint64_t s = seed.value_or(scenario.seed);
  bftlog::SimReport report = bftlog::run(scenario, s);
  if (!write_text(out, report.to_json())) {
    std::cerr << "cannot write " << out << "\n";
    return kConfig;
  }
  for (const auto& a : report.assertions) {
    if (!a.passed) std::cerr << "assertion failed: " << a.name << ": " << a.detail << "\n";
  }
  std::cout << scenario.name << " seed=" << s << " converged=" << (report.converged ? "true" : "false")
            << " passed=" << (report.passed() ? "true" : "false") << "\n";
  return report.passed() ? kPass : kFail;
}

int cmd_vectors(const std::string& out) {
  if (!write_text(out, bftlog::golden_vectors(bftlog::Fixture::get().messages()))) {
    std::cerr << "cannot write " << out << "\n";
    return kConfig;
  }
  return kPass;
}

int cmd_oracle(std::size_t max_msgs, std::size_t max_authors, std::size_t cases,
               bftlog::LogOrderRule rule) {
  if (max_msgs > 10 || max_authors > 3) {
    std::cerr << "oracle bounds are at most 10 messages and 3 authors\n";
    return kConfig;
  }
  bftlog::OracleOptions options;
  options.max_msgs = max_msgs;
  options.max_authors = max_authors;
  options.frontier_cases = cases;
  options.rule = rule;
  auto report = bftlog::run_oracle(options);
  std::cout << report.summary();
  return report.passed() ? kPass : kFail;
}

int cmd_validate(const std::string& path, bool strict) {
  auto records = bftlog::read_store_file(path);
  auto result = bftlog::replay(records, strict);
  if (result.first_failure) {
    const auto& f = *result.first_failure;
    std::cout << "record " << f.record << " " << f.id.hex() << ": " << bftlog::to_string(f.reason) << "\n";
    return kFail;
  }
  std::cout << "ok " << result.accepted << " messages, " << result.duplicates << " duplicates\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bftlog: two-phase Byzantine-tolerant log CRDT toolkit"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario and write its JSON report");
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::string run_out;
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--seed", seed, "Schedule seed (defaults to the scenario's, else 1)");
  run->add_option("--out", run_out, "Report path")->required();

  auto* vectors = app.add_subcommand("vectors", "Write the golden msg_id/signature vectors");
  std::string vectors_out;
  vectors->add_option("--out", vectors_out, "Output path")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive lattice and graph oracle");
  std::size_t max_msgs = 6;
  std::size_t max_authors = 1;
  std::size_t cases = 10000;
  bftlog::LogOrderRule rule = bftlog::LogOrderRule::kStandard;
  const std::map<std::string, bftlog::LogOrderRule> rules{
      {"standard", bftlog::LogOrderRule::kStandard},
      {"unconditional-phase", bftlog::LogOrderRule::kUnconditionalPhase},
      {"flipped-phase", bftlog::LogOrderRule::kFlippedPhase}};
  oracle->add_option("--max-msgs", max_msgs, "Messages per enumerated store")->capture_default_str();
  oracle->add_option("--max-authors", max_authors, "Authors in random stores")->capture_default_str();
  oracle->add_option("--frontier-cases", cases, "Random frontier cases")->capture_default_str();
  oracle->add_option("--order-rule", rule, "Growing/shrinking comparison (mutants for testing)")
      ->transform(CLI::CheckedTransformer(rules, CLI::ignore_case));

  auto* validate = app.add_subcommand("validate", "Replay a store file and report the first violation");
  std::string store_path;
  bool strict = false;
  validate->add_option("--store", store_path, "Store file")->required();
  validate->add_flag("--strict", strict, "Also require monotonic dependencies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    if (*run) return cmd_run(scenario_path, seed, run_out);
    if (*vectors) return cmd_vectors(vectors_out);
    if (*oracle) return cmd_oracle(max_msgs, max_authors, cases, rule);
    if (*validate) return cmd_validate(store_path, strict);
  } catch (const bftlog::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const bftlog::StoreFileError& e) {
    std::cerr << "store error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
