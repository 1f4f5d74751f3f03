// Copyright 2026 The Frameforecast Authors.
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

#ifndef FRAMEFORECAST_RUN_CONFIG_H_
#define FRAMEFORECAST_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "frameforecast/corpus.h"
#include "frameforecast/dae.h"

namespace frameforecast {

// Everything a pipeline run depends on. Every randomized step draws from
// one of the four seeds.
struct RunConfig {
  std::string subcommand;
  std::vector<std::string> corpus_paths;  // raw text files or directories
  std::vector<std::string> parsed_paths;  // parsed-corpus JSONL files
  std::string lexicon_path;
  std::string output_dir;

  std::vector<std::size_t> block_sizes{5};
  std::size_t window = 1;
  std::vector<std::string> models{"replay", "prior"};
  bool normalize = true;
  SplitRatios ratios;

  uint64_t split_seed = 0;
  uint64_t model_seed = 0;
  uint64_t sample_seed = 0;
  uint64_t cloud_seed = 0;

  std::size_t downsample_budget = 0;  // 0 keeps every training instance
  std::size_t min_bytes = 0;
  bool reject_html = false;

  TrainConfig dae;  // dae.seed is overwritten by model_seed
  std::size_t ir_max_entries = 0;

  std::size_t max_skip = 10;
  std::size_t ablate_frames = 50;
  std::size_t ablate_rows = 5;

  std::string block_id;  // "doc:index" for the cloud subcommand
  std::size_t cloud_top_k = 30;
  std::size_t cloud_max_lus = 3;
  int canvas_w = 800;
  int canvas_h = 600;
};

std::string RunConfigToJson(const RunConfig &config);
// Missing keys keep their defaults; unknown keys are a ParseError.
RunConfig RunConfigFromJson(std::string_view json_text);

// Hash of every field that can change a number in a report: all fields but
// subcommand and output_dir, plus the fixed conventions (natural log IDF,
// L2 vectors).
std::string Fingerprint(const RunConfig &config);

}  // namespace frameforecast

#endif  // FRAMEFORECAST_RUN_CONFIG_H_
