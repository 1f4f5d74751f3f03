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

#ifndef FRAMEFORECAST_DAE_H_
#define FRAMEFORECAST_DAE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frameforecast/models.h"
#include "frameforecast/rng.h"

namespace frameforecast {

// Parameters of a stack of affine layers. Layer l maps widths[l] to
// widths[l+1]; its weight matrix is stored row-major (out x in) followed by
// its bias, all in one flat array.
struct DaeParams {
  std::vector<std::size_t> widths;
  std::vector<double> values;

  std::size_t num_layers() const {
    return widths.empty() ? 0 : widths.size() - 1;
  }
  std::size_t weight_offset(std::size_t layer) const;
  std::size_t bias_offset(std::size_t layer) const {
    return weight_offset(layer) + widths[layer + 1] * widths[layer];
  }
};

// Widths for an encoder/decoder stack: input, then 2*layers_per_side - 1
// hidden layers of hidden_width, then output.
std::vector<std::size_t> DaeWidths(std::size_t input, std::size_t output,
                                   std::size_t hidden_width,
                                   std::size_t layers_per_side = 5);

// Glorot-uniform weights, zero biases.
// Throws ValidationError on fewer than two widths or a zero width.
DaeParams DaeInit(uint64_t seed, const std::vector<std::size_t> &widths);

// Input mask with entries 0 or 1/(1-dropout).
std::vector<double> SampleDropoutMask(std::size_t width, double dropout,
                                      Rng &rng);

// ReLU on hidden layers, identity on the output. The mask, when given,
// multiplies the input elementwise.
// Throws ValidationError on a width mismatch.
std::vector<double> DaeForward(const DaeParams &params,
                               const std::vector<double> &x,
                               const std::vector<double> *mask = nullptr);

// 1 - cosine; a zero prediction costs 1.
double DaeLoss(const std::vector<double> &prediction,
               const std::vector<double> &target);

// Adds the gradient of DaeLoss(forward(x), target) to grad (same layout as
// params.values) and returns the loss.
double DaeBackward(const DaeParams &params, const std::vector<double> &x,
                   const std::vector<double> &target,
                   std::vector<double> &grad,
                   const std::vector<double> *mask = nullptr);

struct TrainConfig {
  double learning_rate = 1e-5;
  std::size_t batch_size = 512;
  double input_dropout = 0.30;
  std::size_t patience_epochs = 20;
  std::size_t max_epochs = 200;
  uint64_t seed = 0;
  std::size_t hidden_width = 512;
  std::size_t layers_per_side = 5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  // Throws ValidationError on out-of-range values.
  void Validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double valid_cosine = 0.0;
};

struct TrainLog {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  double best_valid_cosine = 0.0;
  std::string stop_reason;  // "patience" or "max_epochs"
  std::size_t skipped_zero_targets = 0;
  std::string optimizer;
  std::string kernels;
};

// A training example as seen by the network.
struct DaeExample {
  std::vector<double> input;
  std::vector<double> target;
};

std::vector<DaeExample> ToExamples(const std::vector<Instance> &instances);

// Minibatch Adam on mean cosine distance with early stopping on validation
// mean cosine. Training examples with zero targets are skipped and counted.
// Throws ValidationError on empty sets and TrainingError on a non-finite
// loss, naming the epoch and batch.
std::pair<DaeParams, TrainLog> DaeTrain(const std::vector<DaeExample> &train,
                                        const std::vector<DaeExample> &valid,
                                        const TrainConfig &config);

// Mean inference-mode loss and mean cosine over a set.
double DaeMeanLoss(const DaeParams &params,
                   const std::vector<DaeExample> &examples);
double DaeMeanCosine(const DaeParams &params,
                     const std::vector<DaeExample> &examples);

struct GradCheckOptions {
  double epsilon = 1e-4;
  // Coordinates to test; 0 tests every parameter.
  std::size_t max_coordinates = 0;
  uint64_t seed = 0;
  // Moves each input coordinate by a small seeded positive amount so that no
  // pre-activation sits exactly on a ReLU kink.
  bool nudge_inputs = true;
};

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped_kinks = 0;  // coordinates whose step flips a ReLU
};

// Central finite differences of the mean batch loss against DaeBackward.
GradCheckResult GradCheck(const DaeParams &params,
                          const std::vector<DaeExample> &batch,
                          const GradCheckOptions &options = {});

// Model file: one JSON header line, then the little-endian f64 parameters.
void SaveDae(const DaeParams &params, const TrainConfig &config,
             std::size_t window, const std::string &fingerprint,
             const std::string &path);
struct LoadedDae {
  DaeParams params;
  TrainConfig config;
  std::size_t window = 1;
  std::string fingerprint;
};
LoadedDae LoadDae(const std::string &path);

class DaeForecaster : public Forecaster {
 public:
  explicit DaeForecaster(DaeParams params) : params_(std::move(params)) {}
  std::string name() const override { return "dae"; }
  FrameVector Predict(const std::vector<FrameVector> &context) const override;
  using Forecaster::Predict;
  const DaeParams &params() const { return params_; }

 private:
  DaeParams params_;
};

}  // namespace frameforecast

#endif  // FRAMEFORECAST_DAE_H_
