// Copyright 2026 The darkspan Authors
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

// darkspan <subcommand> --config PATH [--out DIR] [--manifest PATH] [--seed N]

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "darkspan/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Topic prevalence and lifecycle analysis over web snapshot archives", "darkspan"};
  app.require_subcommand(1, 1);

  darkspan::pipeline::Options opt;
  std::string config_path, out_dir = opt.out_dir.string(), manifest;
  std::uint64_t seed = 0;

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "configuration file (key = value)")->required();
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--manifest", manifest, "snapshot manifest (JSON lines), overrides the config");
    sub->add_option("--seed", seed, "random seed, overrides the config");
  };
  add("ingest", "extract main text from archived pages");
  add("normalize", "tokenize, lemmatize and filter non-English documents");
  add("corpus", "group snapshots into websites, drop short histories, deduplicate");
  add("embed", "embed documents");
  add("reduce", "reduce embeddings with UMAP");
  add("cluster", "cluster reduced embeddings with HDBSCAN");
  add("topics", "c-TF-IDF keywords, labels and merges");
  add("timeline", "per-quarter prevalence, concentration and categories");
  add("lifecycle", "per-topic lifecycle metrics and classes");
  add("simulate", "write a synthetic corpus with planted topics");
  add("all", "run every analysis stage in order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  opt.subcommand = sub->get_name();
  opt.config_path = config_path;
  opt.out_dir = out_dir;
  if (sub->count("--manifest")) opt.manifest = manifest;
  if (sub->count("--seed")) opt.seed = seed;
  return darkspan::pipeline::run(opt, std::cerr);
}
