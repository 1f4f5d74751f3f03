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

#ifndef FRAMEFORECAST_MODELS_H_
#define FRAMEFORECAST_MODELS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "frameforecast/representation.h"

namespace frameforecast {

// A trained next-block predictor. Implementations are immutable after
// construction and safe to share across threads.
class Forecaster {
 public:
  virtual ~Forecaster() = default;
  virtual std::string name() const = 0;
  virtual FrameVector Predict(const std::vector<FrameVector> &context) const = 0;
  FrameVector Predict(const Instance &instance) const {
    return Predict(instance.context);
  }
};

// Returns the most recent context vector unchanged.
FrameVector PredictReplay(const Instance &instance);

class ReplayForecaster : public Forecaster {
 public:
  std::string name() const override { return "replay"; }
  FrameVector Predict(const std::vector<FrameVector> &context) const override;
  using Forecaster::Predict;
};

struct PriorModel {
  FrameVector mean_vector;
};

// Mean of the training targets, scaled to unit length.
// Throws ValidationError on an empty training set.
PriorModel FitPrior(const std::vector<Instance> &train);
FrameVector PredictPrior(const PriorModel &model);

class PriorForecaster : public Forecaster {
 public:
  explicit PriorForecaster(PriorModel model) : model_(std::move(model)) {}
  std::string name() const override { return "prior"; }
  FrameVector Predict(const std::vector<FrameVector> &) const override {
    return model_.mean_vector;
  }
  using Forecaster::Predict;
  const PriorModel &model() const { return model_; }

 private:
  PriorModel model_;
};

// Exact nearest-neighbour index over flattened context windows.
// Entries are ordered by (doc_id, anchor); that order breaks ties.
struct IrIndex {
  std::size_t window = 0;
  std::size_t num_frames = 0;
  std::vector<std::vector<double>> keys;  // unit norm or zero, width w*F
  std::vector<FrameVector> values;
  std::vector<std::pair<std::string, int>> ids;

  std::size_t size() const { return keys.size(); }
};

// max_entries == 0 keeps every instance; otherwise a seeded uniform sample
// of max_entries instances is kept.
// Throws ValidationError on an empty training set or mixed window sizes.
IrIndex BuildIrIndex(const std::vector<Instance> &train,
                     std::size_t max_entries = 0, uint64_t seed = 0);

// Cosines within this distance of the best are ties.
inline constexpr double kIrTieTolerance = 1e-12;

// Index of the entry whose key has the highest cosine with the flattened
// query; the lowest index wins ties. Throws ValidationError on an empty
// index or a width mismatch.
std::size_t IrArgmax(const IrIndex &index, const std::vector<double> &query);
FrameVector PredictIr(const IrIndex &index,
                      const std::vector<FrameVector> &context);

// Writes keys.jsonl, values.jsonl, and manifest.json under dir.
void SaveIrIndex(const IrIndex &index, const std::string &dir,
                 const std::string &fingerprint);
IrIndex LoadIrIndex(const std::string &dir);

class IrForecaster : public Forecaster {
 public:
  explicit IrForecaster(IrIndex index) : index_(std::move(index)) {}
  std::string name() const override { return "ir"; }
  FrameVector Predict(const std::vector<FrameVector> &context) const override {
    return PredictIr(index_, context);
  }
  using Forecaster::Predict;
  const IrIndex &index() const { return index_; }

 private:
  IrIndex index_;
};

}  // namespace frameforecast

#endif  // FRAMEFORECAST_MODELS_H_
