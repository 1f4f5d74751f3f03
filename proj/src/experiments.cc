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

#include "frameforecast/experiments.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <unordered_set>

#include "frameforecast/errors.h"
#include "frameforecast/numeric.h"
#include "frameforecast/rng.h"
#include "json.hpp"

namespace frameforecast {
namespace {

using nlohmann::json;

std::string Fixed4(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

BlocksByDoc VectorizeDocs(
    const std::map<std::string, std::vector<StoryBlock>> &blocks,
    const IdfModel &idf, bool normalize) {
  BlocksByDoc out;
  for (const auto &[id, list] : blocks) {
    std::vector<FrameVector> &vectors = out[id];
    for (const StoryBlock &block : list) {
      vectors.push_back(Vectorize(block, idf, normalize));
    }
  }
  return out;
}

}  // namespace

EvalResult Evaluate(const Forecaster &model, const std::vector<Instance> &test) {
  if (test.empty()) throw ValidationError("cannot evaluate on an empty test set");
  CompensatedSum sum;
  for (const Instance &inst : test) {
    sum.Add(Cosine(model.Predict(inst), inst.target));
  }
  EvalResult result;
  result.model = model.name();
  result.window = test.front().context.size();
  result.n_instances = test.size();
  result.mean_cosine = sum.value() / static_cast<double>(test.size());
  return result;
}

PreparedData PrepareData(const std::vector<Document> &docs,
                         const CorpusSplit &split, std::size_t num_frames,
                         std::size_t block_size, std::size_t window,
                         bool normalize) {
  PreparedData data;
  data.block_size = block_size;
  const std::set<std::string> train_ids(split.train.begin(), split.train.end());
  const std::set<std::string> valid_ids(split.valid.begin(), split.valid.end());
  const std::set<std::string> test_ids(split.test.begin(), split.test.end());

  std::map<std::string, std::vector<StoryBlock>> train_raw;
  std::map<std::string, std::vector<StoryBlock>> valid_raw;
  std::map<std::string, std::vector<StoryBlock>> test_raw;
  std::vector<StoryBlock> all_train;
  for (const Document &doc : docs) {
    std::map<std::string, std::vector<StoryBlock>> *target = nullptr;
    if (train_ids.count(doc.id)) {
      target = &train_raw;
    } else if (valid_ids.count(doc.id)) {
      target = &valid_raw;
    } else if (test_ids.count(doc.id)) {
      target = &test_raw;
    } else {
      continue;
    }
    std::vector<StoryBlock> blocks = SegmentBlocks(doc, block_size);
    if (blocks.empty()) continue;
    if (target == &train_raw) {
      all_train.insert(all_train.end(), blocks.begin(), blocks.end());
    }
    (*target)[doc.id] = std::move(blocks);
  }
  if (all_train.empty()) return data;
  data.idf = FitIdf(all_train, num_frames);
  data.train_blocks = VectorizeDocs(train_raw, data.idf, normalize);
  data.valid_blocks = VectorizeDocs(valid_raw, data.idf, normalize);
  data.test_blocks = VectorizeDocs(test_raw, data.idf, normalize);
  data.train = BuildInstances(data.train_blocks, window);
  data.valid = BuildInstances(data.valid_blocks, window);
  data.test = BuildInstances(data.test_blocks, window);
  return data;
}

std::unique_ptr<Forecaster> FitModel(const std::string &name,
                                     const PreparedData &data,
                                     const ModelOptions &options,
                                     TrainLog *log) {
  if (name == "replay") return std::make_unique<ReplayForecaster>();
  if (name == "prior") {
    return std::make_unique<PriorForecaster>(FitPrior(data.train));
  }
  if (name == "ir") {
    return std::make_unique<IrForecaster>(
        BuildIrIndex(data.train, options.ir_max_entries, options.ir_seed));
  }
  if (name == "dae") {
    auto [params, train_log] =
        DaeTrain(ToExamples(data.train), ToExamples(data.valid), options.dae);
    if (log != nullptr) *log = std::move(train_log);
    return std::make_unique<DaeForecaster>(std::move(params));
  }
  throw ValidationError("unknown model \"" + name +
                        "\" (expected replay, prior, ir, or dae)");
}

SweepTable RunSweep(const std::vector<Document> &docs, const CorpusSplit &split,
                    std::size_t num_frames, const SweepOptions &options) {
  if (options.block_sizes.empty()) throw ValidationError("no block sizes given");
  if (options.models.empty()) throw ValidationError("no models given");
  SweepTable table;
  table.block_sizes = options.block_sizes;
  table.models = options.models;
  table.window = options.window;
  table.fingerprint = options.fingerprint;
  table.cells.assign(options.models.size(),
                     std::vector<std::optional<EvalResult>>(
                         options.block_sizes.size()));
  table.delta.assign(options.block_sizes.size(), std::nullopt);

  const auto prior_it =
      std::find(options.models.begin(), options.models.end(), "prior");
  for (std::size_t c = 0; c < options.block_sizes.size(); ++c) {
    const std::size_t block_size = options.block_sizes[c];
    PreparedData data = PrepareData(docs, split, num_frames, block_size,
                                    options.window, options.normalize);
    if (options.train_budget > 0) {
      data.train =
          DownsampleTrain(data.train, options.train_budget, options.sample_seed);
    }
    if (data.train.empty() || data.test.empty()) continue;
    const bool has_valid = !data.valid.empty();
    for (std::size_t m = 0; m < options.models.size(); ++m) {
      if (options.models[m] == "dae" && !has_valid) continue;
      auto model = FitModel(options.models[m], data, options.model_options);
      EvalResult result = Evaluate(*model, data.test);
      result.block_size = block_size;
      result.fingerprint = options.fingerprint;
      table.cells[m][c] = std::move(result);
    }
    if (prior_it != options.models.end()) {
      const auto &prior =
          table.cells[static_cast<std::size_t>(prior_it - options.models.begin())][c];
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < options.models.size(); ++m) {
        if (table.cells[m][c]) best = std::max(best, table.cells[m][c]->mean_cosine);
      }
      if (prior) table.delta[c] = best - prior->mean_cosine;
    }
  }
  return table;
}

std::string FormatSweepTsv(const SweepTable &table) {
  std::string out = "# fingerprint=" + table.fingerprint +
                    " window=" + std::to_string(table.window) +
                    " idf=ln(n/df) vectors=l2\n";
  out += "model";
  for (std::size_t l : table.block_sizes) out += "\t" + std::to_string(l);
  out += "\n";
  for (std::size_t m = 0; m < table.models.size(); ++m) {
    out += table.models[m];
    for (const auto &cell : table.cells[m]) {
      out += "\t" + (cell ? Fixed4(cell->mean_cosine) : std::string("-"));
    }
    out += "\n";
  }
  out += "DELTA";
  for (const auto &d : table.delta) {
    out += "\t" + (d ? Fixed4(*d) : std::string("-"));
  }
  out += "\n";
  return out;
}

std::string FormatSweepJson(const SweepTable &table) {
  json results = json::array();
  for (std::size_t m = 0; m < table.models.size(); ++m) {
    json row = json::array();
    for (const auto &cell : table.cells[m]) {
      if (!cell) {
        row.push_back(nullptr);
      } else {
        row.push_back({{"model", cell->model},
                       {"block_size", cell->block_size},
                       {"window", cell->window},
                       {"n_instances", cell->n_instances},
                       {"mean_cosine", cell->mean_cosine},
                       {"fingerprint", cell->fingerprint}});
      }
    }
    results.push_back(row);
  }
  json delta = json::array();
  for (const auto &d : table.delta) {
    delta.push_back(d ? json(*d) : json(nullptr));
  }
  const json out = {{"fingerprint", table.fingerprint},
                    {"window", table.window},
                    {"block_sizes", table.block_sizes},
                    {"models", table.models},
                    {"results", results},
                    {"delta", delta}};
  return out.dump(1) + "\n";
}

SkipCurve SkipExperiment(const BlocksByDoc &blocks, std::size_t max_skip) {
  if (max_skip == 0) throw ValidationError("max skip must be positive");
  bool long_enough = false;
  for (const auto &[id, list] : blocks) {
    if (list.size() > max_skip) long_enough = true;
  }
  if (!long_enough) {
    throw ValidationError("no document has more than " +
                          std::to_string(max_skip) + " blocks");
  }
  SkipCurve curve;
  for (std::size_t i = 1; i <= max_skip; ++i) {
    CompensatedSum sum;
    std::size_t pairs = 0;
    for (const auto &[id, list] : blocks) {
      for (std::size_t n = 0; n + i < list.size(); ++n) {
        sum.Add(Cosine(list[n], list[n + i]));
        ++pairs;
      }
    }
    curve.distances.push_back(i);
    curve.mean_cosine.push_back(sum.value() / static_cast<double>(pairs));
    curve.pairs.push_back(pairs);
  }
  return curve;
}

std::string FormatSkipCsv(const SkipCurve &curve,
                          const std::string &fingerprint) {
  std::string out = "# fingerprint=" + fingerprint + "\n";
  out += "skip,mean_cosine,pairs\n";
  for (std::size_t k = 0; k < curve.distances.size(); ++k) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", curve.mean_cosine[k]);
    out += std::to_string(curve.distances[k]) + "," + buffer + "," +
           std::to_string(curve.pairs[k]) + "\n";
  }
  return out;
}

AblationReport Ablate(const Forecaster &model, const std::vector<Instance> &test,
                      const std::vector<FrameId> &frames) {
  AblationReport report;
  report.base_cosine = Evaluate(model, test).mean_cosine;
  std::vector<Instance> ablated = test;
  for (FrameId frame : frames) {
    for (std::size_t k = 0; k < test.size(); ++k) {
      for (std::size_t j = 0; j < test[k].context.size(); ++j) {
        const auto &src = test[k].context[j].weights;
        if (frame < 0 || static_cast<std::size_t>(frame) >= src.size()) {
          throw ValidationError("ablation frame " + std::to_string(frame) +
                                " out of range");
        }
        ablated[k].context[j].weights = src;
        ablated[k].context[j].weights[static_cast<std::size_t>(frame)] = 0.0;
      }
    }
    const double score = Evaluate(model, ablated).mean_cosine;
    report.entries.push_back({frame, score, report.base_cosine - score});
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const AblationEntry &a, const AblationEntry &b) {
                     if (a.delta != b.delta) return a.delta > b.delta;
                     return a.frame < b.frame;
                   });
  return report;
}

std::vector<FrameId> SampleFrames(std::size_t num_frames, std::size_t count,
                                  uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> picked =
      rng.SampleWithoutReplacement(num_frames, std::min(count, num_frames));
  std::sort(picked.begin(), picked.end());
  return {picked.begin(), picked.end()};
}

std::string FormatAblationTsv(const AblationReport &report,
                              const FrameLexicon &lexicon, std::size_t rows,
                              const std::string &fingerprint) {
  const std::size_t n = report.entries.size();
  const std::size_t shown = std::min(rows, n);
  std::string out = "# fingerprint=" + fingerprint +
                    " base=" + Fixed4(report.base_cosine) + "\n";
  out += "rank\tmost_important\tdelta\tleast_important\tdelta\n";
  for (std::size_t r = 0; r < shown; ++r) {
    const AblationEntry &top = report.entries[r];
    const AblationEntry &bottom = report.entries[n - 1 - r];
    out += std::to_string(r + 1) + "\t" + lexicon.frame(top.frame).name + "\t" +
           Fixed4(top.delta) + "\t" + lexicon.frame(bottom.frame).name + "\t" +
           Fixed4(bottom.delta) + "\n";
  }
  return out;
}

std::string FormatAblationJson(const AblationReport &report,
                               const FrameLexicon &lexicon,
                               const std::string &fingerprint) {
  json entries = json::array();
  for (const AblationEntry &e : report.entries) {
    entries.push_back({{"frame", e.frame},
                       {"name", lexicon.frame(e.frame).name},
                       {"ablated_cosine", e.ablated_cosine},
                       {"delta", e.delta}});
  }
  const json out = {{"fingerprint", fingerprint},
                    {"base_cosine", report.base_cosine},
                    {"entries", entries}};
  return out.dump(1) + "\n";
}

std::vector<Instance> DownsampleTrain(const std::vector<Instance> &instances,
                                      std::size_t budget, uint64_t seed) {
  if (budget == 0) throw ValidationError("downsample budget must be positive");
  if (budget >= instances.size()) return instances;
  Rng rng(seed);
  std::vector<std::size_t> picked =
      rng.SampleWithoutReplacement(instances.size(), budget);
  std::sort(picked.begin(), picked.end());
  std::vector<Instance> out;
  out.reserve(budget);
  for (std::size_t i : picked) out.push_back(instances[i]);
  return out;
}

}  // namespace frameforecast
