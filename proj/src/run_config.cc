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

#include "frameforecast/run_config.h"

#include "frameforecast/errors.h"
#include "frameforecast/rng.h"
#include "json.hpp"

namespace frameforecast {
namespace {

using nlohmann::json;

constexpr std::string_view kConventions = "idf=ln(n/df);df0=0;vectors=l2;v1";

json ToJson(const RunConfig &c) {
  return {{"subcommand", c.subcommand},
          {"corpus_paths", c.corpus_paths},
          {"parsed_paths", c.parsed_paths},
          {"lexicon_path", c.lexicon_path},
          {"output_dir", c.output_dir},
          {"block_sizes", c.block_sizes},
          {"window", c.window},
          {"models", c.models},
          {"normalize", c.normalize},
          {"ratios", {c.ratios.train, c.ratios.valid, c.ratios.test}},
          {"seeds",
           {{"split", c.split_seed},
            {"model", c.model_seed},
            {"sample", c.sample_seed},
            {"cloud", c.cloud_seed}}},
          {"downsample_budget", c.downsample_budget},
          {"min_bytes", c.min_bytes},
          {"reject_html", c.reject_html},
          {"dae",
           {{"learning_rate", c.dae.learning_rate},
            {"batch_size", c.dae.batch_size},
            {"input_dropout", c.dae.input_dropout},
            {"patience_epochs", c.dae.patience_epochs},
            {"max_epochs", c.dae.max_epochs},
            {"hidden_width", c.dae.hidden_width},
            {"layers_per_side", c.dae.layers_per_side}}},
          {"ir_max_entries", c.ir_max_entries},
          {"max_skip", c.max_skip},
          {"ablate_frames", c.ablate_frames},
          {"ablate_rows", c.ablate_rows},
          {"block_id", c.block_id},
          {"cloud_top_k", c.cloud_top_k},
          {"cloud_max_lus", c.cloud_max_lus},
          {"canvas_w", c.canvas_w},
          {"canvas_h", c.canvas_h}};
}

template <typename T>
void Read(const json &j, const char *key, T &out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void CheckKeys(const json &j, const json &reference, const std::string &where) {
  for (const auto &[key, value] : j.items()) {
    if (!reference.contains(key)) {
      throw ParseError(where + ": unknown key \"" + key + "\"");
    }
  }
}

}  // namespace

std::string RunConfigToJson(const RunConfig &config) {
  return ToJson(config).dump(1) + "\n";
}

RunConfig RunConfigFromJson(std::string_view json_text) {
  RunConfig c;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ParseError("run config must be a JSON object");
    const json reference = ToJson(c);
    CheckKeys(j, reference, "run config");
    Read(j, "subcommand", c.subcommand);
    Read(j, "corpus_paths", c.corpus_paths);
    Read(j, "parsed_paths", c.parsed_paths);
    Read(j, "lexicon_path", c.lexicon_path);
    Read(j, "output_dir", c.output_dir);
    Read(j, "block_sizes", c.block_sizes);
    Read(j, "window", c.window);
    Read(j, "models", c.models);
    Read(j, "normalize", c.normalize);
    if (j.contains("ratios")) {
      const auto r = j.at("ratios").get<std::vector<double>>();
      if (r.size() != 3) throw ParseError("run config: ratios needs 3 values");
      c.ratios = {r[0], r[1], r[2]};
    }
    if (j.contains("seeds")) {
      const json &s = j.at("seeds");
      CheckKeys(s, reference.at("seeds"), "run config seeds");
      Read(s, "split", c.split_seed);
      Read(s, "model", c.model_seed);
      Read(s, "sample", c.sample_seed);
      Read(s, "cloud", c.cloud_seed);
    }
    Read(j, "downsample_budget", c.downsample_budget);
    Read(j, "min_bytes", c.min_bytes);
    Read(j, "reject_html", c.reject_html);
    if (j.contains("dae")) {
      const json &d = j.at("dae");
      CheckKeys(d, reference.at("dae"), "run config dae");
      Read(d, "learning_rate", c.dae.learning_rate);
      Read(d, "batch_size", c.dae.batch_size);
      Read(d, "input_dropout", c.dae.input_dropout);
      Read(d, "patience_epochs", c.dae.patience_epochs);
      Read(d, "max_epochs", c.dae.max_epochs);
      Read(d, "hidden_width", c.dae.hidden_width);
      Read(d, "layers_per_side", c.dae.layers_per_side);
    }
    Read(j, "ir_max_entries", c.ir_max_entries);
    Read(j, "max_skip", c.max_skip);
    Read(j, "ablate_frames", c.ablate_frames);
    Read(j, "ablate_rows", c.ablate_rows);
    Read(j, "block_id", c.block_id);
    Read(j, "cloud_top_k", c.cloud_top_k);
    Read(j, "cloud_max_lus", c.cloud_max_lus);
    Read(j, "canvas_w", c.canvas_w);
    Read(j, "canvas_h", c.canvas_h);
  } catch (const json::exception &e) {
    throw ParseError(std::string("run config: ") + e.what());
  }
  return c;
}

std::string Fingerprint(const RunConfig &config) {
  json j = ToJson(config);
  j.erase("subcommand");
  j.erase("output_dir");
  std::string canonical(kConventions);
  canonical += '\n';
  canonical += j.dump();
  return HexDigest(Fnv1a64(canonical));
}

}  // namespace frameforecast
