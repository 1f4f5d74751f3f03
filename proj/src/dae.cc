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

#include "frameforecast/dae.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "frameforecast/errors.h"
#include "frameforecast/kernels.h"
#include "frameforecast/numeric.h"
#include "frameforecast/rng.h"
#include "json.hpp"

namespace frameforecast {
namespace {

using nlohmann::json;

// Training draws from a stream separate from initialization.
constexpr uint64_t kTrainStreamSalt = 0xd1b54a32d192ed03ULL;

struct ForwardCache {
  // activations[0] is the (masked) input; activations[l+1] is the output of
  // layer l after its nonlinearity. pre[l] holds layer l's pre-activation.
  std::vector<std::vector<double>> activations;
  std::vector<std::vector<double>> pre;
};

void CheckInputWidth(const DaeParams &params, std::size_t width) {
  if (params.widths.empty() || width != params.widths.front()) {
    throw ValidationError(
        "DAE input width " + std::to_string(width) + " does not match " +
        std::to_string(params.widths.empty() ? 0 : params.widths.front()));
  }
}

void RunForward(const DaeParams &params, const std::vector<double> &x,
                const std::vector<double> *mask, ForwardCache &cache) {
  CheckInputWidth(params, x.size());
  const std::size_t layers = params.num_layers();
  cache.activations.resize(layers + 1);
  cache.pre.resize(layers);
  cache.activations[0] = x;
  if (mask != nullptr) {
    if (mask->size() != x.size()) {
      throw ValidationError("dropout mask width does not match input");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      cache.activations[0][i] *= (*mask)[i];
    }
  }
  const double *values = params.values.data();
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = params.widths[l];
    const std::size_t out = params.widths[l + 1];
    const double *w = values + params.weight_offset(l);
    const double *b = values + params.bias_offset(l);
    const std::vector<double> &a = cache.activations[l];
    std::vector<double> &z = cache.pre[l];
    z.resize(out);
    for (std::size_t o = 0; o < out; ++o) {
      z[o] = b[o] + kernels::Dot({w + o * in, in}, a);
    }
    std::vector<double> &next = cache.activations[l + 1];
    next = z;
    if (l + 1 < layers) {
      // NaN passes through so a corrupt input surfaces as a non-finite loss.
      for (double &v : next) v = v < 0.0 ? 0.0 : v;
    }
  }
}

// d(1 - cos(p, t)) / dp. Zero when either vector is zero.
std::vector<double> LossGradient(const std::vector<double> &p,
                                 const std::vector<double> &t) {
  std::vector<double> g(p.size(), 0.0);
  const double pp = kernels::SquaredNorm(p);
  const double tt = kernels::SquaredNorm(t);
  if (pp == 0.0 || tt == 0.0) return g;
  const double np = std::sqrt(pp);
  const double nt = std::sqrt(tt);
  const double c = kernels::Dot(p, t) / (np * nt);
  const double inv = 1.0 / (np * nt);
  for (std::size_t i = 0; i < p.size(); ++i) {
    g[i] = -(t[i] * inv - c * p[i] / pp);
  }
  return g;
}

double MaskedBackward(const DaeParams &params, const std::vector<double> &x,
                      const std::vector<double> &target,
                      std::vector<double> &grad,
                      const std::vector<double> *mask, ForwardCache &cache) {
  RunForward(params, x, mask, cache);
  const std::size_t layers = params.num_layers();
  const std::vector<double> &output = cache.activations[layers];
  if (target.size() != output.size()) {
    throw ValidationError("DAE target width does not match output");
  }
  const double loss = DaeLoss(output, target);
  std::vector<double> delta = LossGradient(output, target);
  const double *values = params.values.data();
  for (std::size_t l = layers; l-- > 0;) {
    const std::size_t in = params.widths[l];
    const std::size_t out = params.widths[l + 1];
    const std::vector<double> &a = cache.activations[l];
    double *gw = grad.data() + params.weight_offset(l);
    double *gb = grad.data() + params.bias_offset(l);
    const double *w = values + params.weight_offset(l);
    std::vector<double> prev(l > 0 ? in : 0, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      gb[o] += d;
      kernels::Axpy(d, a, {gw + o * in, in});
      if (l > 0) kernels::Axpy(d, {w + o * in, in}, prev);
    }
    if (l > 0) {
      const std::vector<double> &z = cache.pre[l - 1];
      for (std::size_t i = 0; i < in; ++i) {
        if (!(z[i] > 0.0)) prev[i] = 0.0;
      }
      delta = std::move(prev);
    }
  }
  return loss;
}

json ConfigToJson(const TrainConfig &c) {
  return {{"learning_rate", c.learning_rate},
          {"batch_size", c.batch_size},
          {"input_dropout", c.input_dropout},
          {"patience_epochs", c.patience_epochs},
          {"max_epochs", c.max_epochs},
          {"seed", c.seed},
          {"hidden_width", c.hidden_width},
          {"layers_per_side", c.layers_per_side},
          {"beta1", c.beta1},
          {"beta2", c.beta2},
          {"epsilon", c.epsilon}};
}

TrainConfig ConfigFromJson(const json &j) {
  TrainConfig c;
  c.learning_rate = j.at("learning_rate").get<double>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.input_dropout = j.at("input_dropout").get<double>();
  c.patience_epochs = j.at("patience_epochs").get<std::size_t>();
  c.max_epochs = j.at("max_epochs").get<std::size_t>();
  c.seed = j.at("seed").get<uint64_t>();
  c.hidden_width = j.at("hidden_width").get<std::size_t>();
  c.layers_per_side = j.at("layers_per_side").get<std::size_t>();
  c.beta1 = j.at("beta1").get<double>();
  c.beta2 = j.at("beta2").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  return c;
}

}  // namespace

std::size_t DaeParams::weight_offset(std::size_t layer) const {
  std::size_t offset = 0;
  for (std::size_t l = 0; l < layer; ++l) {
    offset += widths[l + 1] * widths[l] + widths[l + 1];
  }
  return offset;
}

std::vector<std::size_t> DaeWidths(std::size_t input, std::size_t output,
                                   std::size_t hidden_width,
                                   std::size_t layers_per_side) {
  if (layers_per_side == 0) {
    throw ValidationError("DAE needs at least one layer per side");
  }
  std::vector<std::size_t> widths{input};
  for (std::size_t i = 0; i + 1 < 2 * layers_per_side; ++i) {
    widths.push_back(hidden_width);
  }
  widths.push_back(output);
  return widths;
}

DaeParams DaeInit(uint64_t seed, const std::vector<std::size_t> &widths) {
  if (widths.size() < 2) throw ValidationError("DAE needs at least two widths");
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (widths[i] == 0) {
      throw ValidationError("DAE width " + std::to_string(i) + " is zero");
    }
  }
  DaeParams params;
  params.widths = widths;
  params.values.assign(params.weight_offset(widths.size() - 1), 0.0);
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const double limit =
        std::sqrt(6.0 / static_cast<double>(widths[l] + widths[l + 1]));
    double *w = params.values.data() + params.weight_offset(l);
    for (std::size_t k = 0; k < widths[l] * widths[l + 1]; ++k) {
      w[k] = rng.Uniform(-limit, limit);
    }
  }
  return params;
}

std::vector<double> SampleDropoutMask(std::size_t width, double dropout,
                                      Rng &rng) {
  std::vector<double> mask(width, 0.0);
  const double keep = 1.0 - dropout;
  const double scale = 1.0 / keep;
  for (double &m : mask) {
    if (rng.Uniform01() < keep) m = scale;
  }
  return mask;
}

std::vector<double> DaeForward(const DaeParams &params,
                               const std::vector<double> &x,
                               const std::vector<double> *mask) {
  ForwardCache cache;
  RunForward(params, x, mask, cache);
  return std::move(cache.activations.back());
}

double DaeLoss(const std::vector<double> &prediction,
               const std::vector<double> &target) {
  return 1.0 - Cosine(prediction, target);
}

double DaeBackward(const DaeParams &params, const std::vector<double> &x,
                   const std::vector<double> &target,
                   std::vector<double> &grad,
                   const std::vector<double> *mask) {
  if (grad.size() != params.values.size()) {
    throw ValidationError("gradient buffer size does not match parameters");
  }
  ForwardCache cache;
  return MaskedBackward(params, x, target, grad, mask, cache);
}

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ValidationError("learning rate must be positive");
  }
  if (batch_size == 0) throw ValidationError("batch size must be positive");
  if (!(input_dropout >= 0.0 && input_dropout < 1.0)) {
    throw ValidationError("input dropout must lie in [0, 1)");
  }
  if (max_epochs == 0) throw ValidationError("max epochs must be positive");
  if (hidden_width == 0) throw ValidationError("hidden width must be positive");
  if (layers_per_side == 0) {
    throw ValidationError("layers per side must be positive");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ValidationError("Adam betas must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw ValidationError("Adam epsilon must be positive");
}

std::vector<DaeExample> ToExamples(const std::vector<Instance> &instances) {
  std::vector<DaeExample> out;
  out.reserve(instances.size());
  for (const Instance &inst : instances) {
    out.push_back({Flatten(inst.context), inst.target.weights});
  }
  return out;
}

double DaeMeanLoss(const DaeParams &params,
                   const std::vector<DaeExample> &examples) {
  if (examples.empty()) throw ValidationError("mean loss of an empty set");
  CompensatedSum sum;
  for (const DaeExample &e : examples) {
    sum.Add(DaeLoss(DaeForward(params, e.input), e.target));
  }
  return sum.value() / static_cast<double>(examples.size());
}

double DaeMeanCosine(const DaeParams &params,
                     const std::vector<DaeExample> &examples) {
  if (examples.empty()) throw ValidationError("mean cosine of an empty set");
  CompensatedSum sum;
  for (const DaeExample &e : examples) {
    sum.Add(Cosine(DaeForward(params, e.input), e.target));
  }
  return sum.value() / static_cast<double>(examples.size());
}

std::pair<DaeParams, TrainLog> DaeTrain(const std::vector<DaeExample> &train,
                                        const std::vector<DaeExample> &valid,
                                        const TrainConfig &config) {
  config.Validate();
  TrainLog log;
  log.kernels = kernels::ActiveKernels().name;
  {
    std::ostringstream os;
    os.precision(17);
    os << "adam(lr=" << config.learning_rate << ", beta1=" << config.beta1
       << ", beta2=" << config.beta2 << ", eps=" << config.epsilon << ")";
    log.optimizer = os.str();
  }
  std::vector<const DaeExample *> usable;
  for (const DaeExample &e : train) {
    if (kernels::SquaredNorm(e.target) == 0.0) {
      ++log.skipped_zero_targets;
    } else {
      usable.push_back(&e);
    }
  }
  if (usable.empty()) {
    throw ValidationError("DAE training set has no instance with a nonzero target");
  }
  if (valid.empty()) throw ValidationError("DAE validation set is empty");

  const std::size_t input = usable.front()->input.size();
  const std::size_t output = usable.front()->target.size();
  for (const DaeExample *e : usable) {
    if (e->input.size() != input || e->target.size() != output) {
      throw ValidationError("DAE training examples have mixed widths");
    }
  }
  DaeParams params = DaeInit(
      config.seed,
      DaeWidths(input, output, config.hidden_width, config.layers_per_side));
  Rng rng(config.seed ^ kTrainStreamSalt);

  const std::size_t n = usable.size();
  std::vector<double> grad(params.values.size());
  std::vector<double> m(params.values.size(), 0.0);
  std::vector<double> v(params.values.size(), 0.0);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  ForwardCache cache;
  std::vector<double> mask;
  uint64_t step = 0;

  DaeParams best = params;
  double best_score = -std::numeric_limits<double>::infinity();
  std::size_t wait = 0;
  const std::size_t stop_after = std::max<std::size_t>(1, config.patience_epochs);
  log.stop_reason = "max_epochs";

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.Shuffle(order);
    CompensatedSum epoch_loss;
    std::size_t batch_index = 0;
    for (std::size_t begin = 0; begin < n; begin += config.batch_size) {
      const std::size_t end = std::min(n, begin + config.batch_size);
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_loss = 0.0;
      for (std::size_t k = begin; k < end; ++k) {
        const DaeExample &e = *usable[order[k]];
        const std::vector<double> *mask_ptr = nullptr;
        if (config.input_dropout > 0.0) {
          mask = SampleDropoutMask(input, config.input_dropout, rng);
          mask_ptr = &mask;
        }
        batch_loss += MaskedBackward(params, e.input, e.target, grad, mask_ptr,
                                     cache);
      }
      const double count = static_cast<double>(end - begin);
      if (!std::isfinite(batch_loss)) {
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) +
                            ", batch " + std::to_string(batch_index));
      }
      epoch_loss.Add(batch_loss);
      kernels::Scale(1.0 / count, grad);
      ++step;
      kernels::AdamStep adam;
      adam.learning_rate = config.learning_rate;
      adam.beta1 = config.beta1;
      adam.beta2 = config.beta2;
      adam.epsilon = config.epsilon;
      adam.bias_correction1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
      adam.bias_correction2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
      kernels::AdamUpdate(params.values, grad, m, v, adam);
      ++batch_index;
    }
    const double valid_cosine = DaeMeanCosine(params, valid);
    if (!std::isfinite(valid_cosine)) {
      throw TrainingError("non-finite validation cosine at epoch " +
                          std::to_string(epoch));
    }
    log.epochs.push_back(
        {epoch, epoch_loss.value() / static_cast<double>(n), valid_cosine});
    if (valid_cosine > best_score) {
      best_score = valid_cosine;
      best = params;
      log.best_epoch = epoch;
      log.best_valid_cosine = valid_cosine;
      wait = 0;
    } else if (++wait >= stop_after) {
      log.stop_reason = "patience";
      break;
    }
  }
  return {std::move(best), std::move(log)};
}

GradCheckResult GradCheck(const DaeParams &params,
                          const std::vector<DaeExample> &batch,
                          const GradCheckOptions &options) {
  if (batch.empty()) throw ValidationError("gradient check needs a batch");
  std::vector<DaeExample> inputs = batch;
  Rng rng(options.seed);
  if (options.nudge_inputs) {
    for (DaeExample &e : inputs) {
      for (double &x : e.input) x += 1e-3 * (0.5 + rng.Uniform01());
    }
  }
  DaeParams work = params;
  ForwardCache cache;

  auto loss_and_pattern = [&](std::vector<bool> *pattern) {
    CompensatedSum sum;
    if (pattern) pattern->clear();
    for (const DaeExample &e : inputs) {
      RunForward(work, e.input, nullptr, cache);
      sum.Add(DaeLoss(cache.activations.back(), e.target));
      if (pattern) {
        for (std::size_t l = 0; l + 1 < cache.pre.size(); ++l) {
          for (double z : cache.pre[l]) pattern->push_back(z > 0.0);
        }
      }
    }
    return sum.value() / static_cast<double>(inputs.size());
  };

  std::vector<double> analytic(work.values.size(), 0.0);
  for (const DaeExample &e : inputs) {
    MaskedBackward(work, e.input, e.target, analytic, nullptr, cache);
  }
  kernels::Scale(1.0 / static_cast<double>(inputs.size()), analytic);

  std::vector<std::size_t> coords;
  if (options.max_coordinates == 0 ||
      options.max_coordinates >= work.values.size()) {
    coords.resize(work.values.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
  } else {
    coords = rng.SampleWithoutReplacement(work.values.size(),
                                          options.max_coordinates);
    std::sort(coords.begin(), coords.end());
  }

  GradCheckResult result;
  std::vector<bool> base_pattern;
  std::vector<bool> plus_pattern;
  std::vector<bool> minus_pattern;
  loss_and_pattern(&base_pattern);
  for (std::size_t k : coords) {
    const double saved = work.values[k];
    work.values[k] = saved + options.epsilon;
    const double plus = loss_and_pattern(&plus_pattern);
    work.values[k] = saved - options.epsilon;
    const double minus = loss_and_pattern(&minus_pattern);
    work.values[k] = saved;
    if (plus_pattern != base_pattern || minus_pattern != base_pattern) {
      ++result.skipped_kinks;
      continue;
    }
    const double numeric = (plus - minus) / (2.0 * options.epsilon);
    const double a = analytic[k];
    const double rel = std::abs(a - numeric) /
                       std::max(1e-8, std::abs(a) + std::abs(numeric));
    result.max_relative_error = std::max(result.max_relative_error, rel);
    ++result.checked;
  }
  return result;
}

void SaveDae(const DaeParams &params, const TrainConfig &config,
             std::size_t window, const std::string &fingerprint,
             const std::string &path) {
  const json header = {{"format", "frameforecast-dae"},
                       {"version", 1},
                       {"widths", params.widths},
                       {"window", window},
                       {"seed", config.seed},
                       {"config", ConfigToJson(config)},
                       {"fingerprint", fingerprint},
                       {"num_params", params.values.size()}};
  std::string out = header.dump() + "\n";
  out.reserve(out.size() + params.values.size() * 8);
  for (double value : params.values) {
    const uint64_t bits = std::bit_cast<uint64_t>(value);
    for (int b = 0; b < 8; ++b) {
      out.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
    }
  }
  WriteFile(path, out);
}

LoadedDae LoadDae(const std::string &path) {
  const std::string data = ReadFile(path);
  const std::size_t newline = data.find('\n');
  if (newline == std::string::npos) {
    throw ParseError(path + ": missing model header line");
  }
  LoadedDae loaded;
  std::size_t count = 0;
  try {
    const json header = json::parse(data.substr(0, newline));
    if (header.at("format").get<std::string>() != "frameforecast-dae") {
      throw ParseError(path + ": not a DAE model file");
    }
    loaded.params.widths = header.at("widths").get<std::vector<std::size_t>>();
    loaded.window = header.at("window").get<std::size_t>();
    loaded.config = ConfigFromJson(header.at("config"));
    loaded.fingerprint = header.at("fingerprint").get<std::string>();
    count = header.at("num_params").get<std::size_t>();
  } catch (const json::exception &e) {
    throw ParseError(path + ": bad model header: " + e.what());
  }
  if (loaded.params.widths.size() < 2 ||
      loaded.params.weight_offset(loaded.params.widths.size() - 1) != count) {
    throw ParseError(path + ": parameter count does not match widths");
  }
  if (data.size() - newline - 1 != count * 8) {
    throw ParseError(path + ": parameter block has the wrong length");
  }
  loaded.params.values.resize(count);
  const auto *bytes =
      reinterpret_cast<const unsigned char *>(data.data() + newline + 1);
  for (std::size_t i = 0; i < count; ++i) {
    uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<uint64_t>(bytes[i * 8 + b]) << (8 * b);
    }
    loaded.params.values[i] = std::bit_cast<double>(bits);
  }
  return loaded;
}

FrameVector DaeForecaster::Predict(
    const std::vector<FrameVector> &context) const {
  return FrameVector{DaeForward(params_, Flatten(context)), false};
}

}  // namespace frameforecast
