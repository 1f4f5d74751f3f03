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

#ifndef FRAMEFORECAST_EXPERIMENTS_H_
#define FRAMEFORECAST_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frameforecast/corpus.h"
#include "frameforecast/dae.h"
#include "frameforecast/models.h"
#include "frameforecast/representation.h"

namespace frameforecast {

struct EvalResult {
  std::string model;
  std::size_t block_size = 0;
  std::size_t window = 0;
  std::size_t n_instances = 0;
  double mean_cosine = 0.0;
  std::string fingerprint;
};

// Mean cosine of predictions against targets, summed in instance order with
// compensated summation. Throws ValidationError on an empty test set.
EvalResult Evaluate(const Forecaster &model, const std::vector<Instance> &test);

// Blocks, IDF, and instances for one block size.
struct PreparedData {
  std::size_t block_size = 0;
  IdfModel idf;
  BlocksByDoc train_blocks;
  BlocksByDoc valid_blocks;
  BlocksByDoc test_blocks;
  std::vector<Instance> train;
  std::vector<Instance> valid;
  std::vector<Instance> test;
};

// Segments every document at block_size, fits IDF on the training
// documents' blocks only, and vectorizes each split. When no training
// blocks exist the IDF is left empty and every split is empty.
// Documents not named in the split are ignored.
PreparedData PrepareData(const std::vector<Document> &docs,
                         const CorpusSplit &split, std::size_t num_frames,
                         std::size_t block_size, std::size_t window,
                         bool normalize = true);

struct ModelOptions {
  TrainConfig dae;
  std::size_t ir_max_entries = 0;
  uint64_t ir_seed = 0;
};

// Fits "replay", "prior", "ir", or "dae" on prepared data.
// Throws ValidationError on an unknown name.
std::unique_ptr<Forecaster> FitModel(const std::string &name,
                                     const PreparedData &data,
                                     const ModelOptions &options,
                                     TrainLog *log = nullptr);

struct SweepOptions {
  std::vector<std::size_t> block_sizes;
  std::vector<std::string> models;
  std::size_t window = 1;
  bool normalize = true;
  ModelOptions model_options;
  // Optional cap on training instances per block size; 0 keeps all.
  std::size_t train_budget = 0;
  uint64_t sample_seed = 0;
  std::string fingerprint;
};

struct SweepTable {
  std::vector<std::size_t> block_sizes;
  std::vector<std::string> models;
  std::size_t window = 1;
  // cells[m][c]; empty optionals mark absent columns.
  std::vector<std::vector<std::optional<EvalResult>>> cells;
  // best - prior per column; absent when the column is absent or the model
  // list has no prior.
  std::vector<std::optional<double>> delta;
  std::string fingerprint;
};

// Re-segments and refits per block size, fits each model, and evaluates it
// on the test split. A block size that yields no training or test instance
// is reported as an absent column.
SweepTable RunSweep(const std::vector<Document> &docs, const CorpusSplit &split,
                    std::size_t num_frames, const SweepOptions &options);

// Tab-separated table: a comment line with the fingerprint, a header row of
// block sizes, one row per model, then DELTA. Four decimals; "-" if absent.
std::string FormatSweepTsv(const SweepTable &table);
std::string FormatSweepJson(const SweepTable &table);

struct SkipCurve {
  std::vector<std::size_t> distances;
  std::vector<double> mean_cosine;
  std::vector<std::size_t> pairs;
};

// For i = 1..max_skip, the mean cosine of block n against block n+i over
// every document and valid anchor, in (doc, n) order.
// Throws ValidationError when max_skip is zero or no document has more than
// max_skip blocks.
SkipCurve SkipExperiment(const BlocksByDoc &blocks, std::size_t max_skip);
std::string FormatSkipCsv(const SkipCurve &curve, const std::string &fingerprint);

struct AblationEntry {
  FrameId frame = 0;
  double ablated_cosine = 0.0;
  double delta = 0.0;  // base - ablated
};

struct AblationReport {
  double base_cosine = 0.0;
  std::vector<AblationEntry> entries;  // delta descending, then frame id
};

// Zeroes coordinate f of every context vector, without renormalizing, and
// re-evaluates. Targets are left untouched.
AblationReport Ablate(const Forecaster &model, const std::vector<Instance> &test,
                      const std::vector<FrameId> &frames);

// count distinct frame ids drawn uniformly from [0, num_frames), ascending.
std::vector<FrameId> SampleFrames(std::size_t num_frames, std::size_t count,
                                  uint64_t seed);

// Most and least important `rows` frames side by side.
std::string FormatAblationTsv(const AblationReport &report,
                              const FrameLexicon &lexicon, std::size_t rows,
                              const std::string &fingerprint);
std::string FormatAblationJson(const AblationReport &report,
                               const FrameLexicon &lexicon,
                               const std::string &fingerprint);

// Seeded uniform sample without replacement, kept in the original order.
// budget >= size returns the input unchanged.
// Throws ValidationError when budget is zero.
std::vector<Instance> DownsampleTrain(const std::vector<Instance> &instances,
                                      std::size_t budget, uint64_t seed);

}  // namespace frameforecast

#endif  // FRAMEFORECAST_EXPERIMENTS_H_
