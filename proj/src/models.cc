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

#include "frameforecast/models.h"

#include <algorithm>
#include <filesystem>
#include <limits>

#include "frameforecast/errors.h"
#include "frameforecast/rng.h"
#include "json.hpp"

namespace frameforecast {

using nlohmann::json;

FrameVector PredictReplay(const Instance &instance) {
  if (instance.context.empty()) {
    throw ValidationError("replay needs a non-empty context");
  }
  return instance.context.back();
}

FrameVector ReplayForecaster::Predict(
    const std::vector<FrameVector> &context) const {
  if (context.empty()) throw ValidationError("replay needs a non-empty context");
  return context.back();
}

PriorModel FitPrior(const std::vector<Instance> &train) {
  if (train.empty()) throw ValidationError("cannot fit prior on an empty set");
  const std::size_t f = train.front().target.size();
  std::vector<double> sum(f, 0.0);
  for (const Instance &inst : train) {
    if (inst.target.size() != f) {
      throw ValidationError("prior: inconsistent target widths");
    }
    for (std::size_t t = 0; t < f; ++t) sum[t] += inst.target.weights[t];
  }
  for (double &s : sum) s /= static_cast<double>(train.size());
  NormalizeInPlace(sum);
  return PriorModel{FrameVector{std::move(sum), true}};
}

FrameVector PredictPrior(const PriorModel &model) { return model.mean_vector; }

IrIndex BuildIrIndex(const std::vector<Instance> &train,
                     std::size_t max_entries, uint64_t seed) {
  if (train.empty()) throw ValidationError("cannot build an empty IR index");
  std::vector<std::size_t> chosen(train.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
  if (max_entries > 0 && max_entries < train.size()) {
    Rng rng(seed);
    chosen = rng.SampleWithoutReplacement(train.size(), max_entries);
  }
  std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
    const Instance &x = train[a];
    const Instance &y = train[b];
    if (x.doc_id != y.doc_id) return x.doc_id < y.doc_id;
    if (x.anchor_index != y.anchor_index) return x.anchor_index < y.anchor_index;
    return a < b;
  });

  IrIndex index;
  index.window = train.front().context.size();
  index.num_frames = train.front().target.size();
  for (std::size_t i : chosen) {
    const Instance &inst = train[i];
    if (inst.context.size() != index.window) {
      throw ValidationError("IR index: mixed context window sizes");
    }
    std::vector<double> key = Flatten(inst.context);
    if (key.size() != index.window * index.num_frames) {
      throw ValidationError("IR index: inconsistent vector widths");
    }
    NormalizeInPlace(key);
    index.keys.push_back(std::move(key));
    index.values.push_back(inst.target);
    index.ids.emplace_back(inst.doc_id, inst.anchor_index);
  }
  return index;
}

std::size_t IrArgmax(const IrIndex &index, const std::vector<double> &query) {
  if (index.keys.empty()) throw ValidationError("IR index is empty");
  // Cosines that agree to within kIrTieTolerance count as tied, so equal
  // scores whose rounding depends on coordinate order still go to the
  // lowest entry.
  std::vector<double> scores(index.keys.size());
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < index.keys.size(); ++i) {
    scores[i] = Cosine(index.keys[i], query);
    best_score = std::max(best_score, scores[i]);
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] >= best_score - kIrTieTolerance) return i;
  }
  return 0;
}

FrameVector PredictIr(const IrIndex &index,
                      const std::vector<FrameVector> &context) {
  if (context.size() != index.window) {
    throw ValidationError("IR query window " + std::to_string(context.size()) +
                          " does not match index window " +
                          std::to_string(index.window));
  }
  return index.values[IrArgmax(index, Flatten(context))];
}

void SaveIrIndex(const IrIndex &index, const std::string &dir,
                 const std::string &fingerprint) {
  std::filesystem::create_directories(dir);
  std::vector<SparseRecord> keys;
  std::vector<SparseRecord> values;
  json ids = json::array();
  for (std::size_t i = 0; i < index.size(); ++i) {
    keys.push_back({index.ids[i].first, index.ids[i].second,
                    FrameVector{index.keys[i], true}});
    values.push_back({index.ids[i].first, index.ids[i].second, index.values[i]});
    ids.push_back({index.ids[i].first, index.ids[i].second});
  }
  const std::filesystem::path root(dir);
  WriteFile((root / "keys.jsonl").string(),
            SerializeSparseVectors(keys, fingerprint));
  WriteFile((root / "values.jsonl").string(),
            SerializeSparseVectors(values, fingerprint));
  const json manifest = {{"fingerprint", fingerprint},
                         {"window", index.window},
                         {"num_frames", index.num_frames},
                         {"ids", ids}};
  WriteFile((root / "manifest.json").string(), manifest.dump(1) + "\n");
}

IrIndex LoadIrIndex(const std::string &dir) {
  const std::filesystem::path root(dir);
  IrIndex index;
  json manifest;
  try {
    manifest = json::parse(ReadFile((root / "manifest.json").string()));
    index.window = manifest.at("window").get<std::size_t>();
    index.num_frames = manifest.at("num_frames").get<std::size_t>();
    for (const json &id : manifest.at("ids")) {
      index.ids.emplace_back(id.at(0).get<std::string>(), id.at(1).get<int>());
    }
  } catch (const json::exception &e) {
    throw ParseError(std::string("IR manifest: ") + e.what());
  }
  auto keys = ParseSparseVectors(ReadFile((root / "keys.jsonl").string()),
                                 index.window * index.num_frames);
  auto values = ParseSparseVectors(ReadFile((root / "values.jsonl").string()),
                                   index.num_frames);
  if (keys.size() != index.ids.size() || values.size() != index.ids.size()) {
    throw ParseError("IR index: keys, values, and manifest disagree in length");
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    index.keys.push_back(std::move(keys[i].vector.weights));
    index.values.push_back(std::move(values[i].vector));
  }
  return index;
}

}  // namespace frameforecast
