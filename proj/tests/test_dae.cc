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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "frameforecast/dae.h"
#include "frameforecast/errors.h"
#include "frameforecast/rng.h"
#include "support.h"

using namespace frameforecast;

namespace {

// 2-2-2 network: W1 = [[1, 2], [3, -1]], W2 = [[1, 0], [1, 1]], zero biases.
DaeParams ToyNetwork() {
  DaeParams p;
  p.widths = {2, 2, 2};
  p.values = {1, 2, 3, -1, 0, 0, 1, 0, 1, 1, 0, 0};
  return p;
}

std::vector<double> RandomNonNegative(Rng &rng, std::size_t n) {
  std::vector<double> v(n);
  for (double &x : v) x = rng.Bernoulli(0.7) ? rng.Uniform(0.05, 1.0) : 0.0;
  return v;
}

// target = input shifted by a fixed permutation of coordinates.
std::vector<DaeExample> PermutationTask(std::size_t count, std::size_t f,
                                        uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> perm(f);
  for (std::size_t i = 0; i < f; ++i) perm[i] = (i * 5 + 3) % f;
  std::vector<DaeExample> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> x(f, 0.0);
    for (int j = 0; j < 3; ++j) x[rng.UniformIndex(f)] = rng.Uniform(0.5, 1.0);
    NormalizeInPlace(x);
    std::vector<double> y(f, 0.0);
    for (std::size_t i = 0; i < f; ++i) y[perm[i]] = x[i];
    out.push_back({x, y});
  }
  return out;
}

}  // namespace

TEST_SUITE("dae") {
  TEST_CASE("initialization") {
    const auto widths = DaeWidths(1221, 1221, 512);
    CHECK(widths.size() == 11);
    CHECK(widths.front() == 1221);
    const DaeParams a = DaeInit(3, widths);
    CHECK(a.num_layers() == 10);
    const DaeParams b = DaeInit(3, widths);
    CHECK(a.values == b.values);
    CHECK(DaeInit(4, {4, 3, 2}).values != DaeInit(5, {4, 3, 2}).values);
    CHECK_THROWS_AS(DaeInit(1, {4, 0, 4}), ValidationError);
    CHECK_THROWS_AS(DaeInit(1, {4}), ValidationError);
  }

  TEST_CASE("initial weights lie in the Glorot range with zero biases") {
    const DaeParams p = DaeInit(9, {6, 10, 4});
    for (std::size_t l = 0; l < 2; ++l) {
      const double limit = std::sqrt(6.0 / (p.widths[l] + p.widths[l + 1]));
      for (std::size_t k = p.weight_offset(l); k < p.bias_offset(l); ++k) {
        CHECK(std::abs(p.values[k]) <= limit);
      }
      for (std::size_t k = p.bias_offset(l); k < p.bias_offset(l) + p.widths[l + 1]; ++k) {
        CHECK(p.values[k] == 0.0);
      }
    }
  }

  TEST_CASE("forward pass") {
    const DaeParams big = DaeInit(1, DaeWidths(8, 8, 16));
    CHECK(DaeForward(big, std::vector<double>(8, 0.0)) == std::vector<double>(8, 0.0));
    Rng rng(2);
    const auto x = RandomNonNegative(rng, 8);
    CHECK(DaeForward(big, x) == DaeForward(big, x));
    CHECK_THROWS_AS(DaeForward(big, std::vector<double>(7, 0.0)), ValidationError);

    const DaeParams toy = ToyNetwork();
    const std::vector<double> input{0.7, 0.35};
    const std::vector<double> keep_all(2, 1.0 / 0.7);
    const auto train = DaeForward(toy, input, &keep_all);
    const auto infer = DaeForward(toy, input);
    CHECK(train[0] == doctest::Approx(2.0));
    CHECK(train[1] == doctest::Approx(4.5));
    CHECK(infer[0] == doctest::Approx(1.4));
    CHECK(infer[1] == doctest::Approx(3.15));
  }

  TEST_CASE("dropout mask keeps about 70 percent, scaled") {
    Rng rng(12);
    const auto mask = SampleDropoutMask(20000, 0.3, rng);
    std::size_t kept = 0;
    for (double m : mask) {
      CHECK((m == 0.0 || m == doctest::Approx(1.0 / 0.7)));
      kept += m != 0.0;
    }
    CHECK(std::abs(kept / 20000.0 - 0.7) < 0.02);
  }

  TEST_CASE("loss examples") {
    CHECK(DaeLoss({1, 2, 0}, {1, 2, 0}) == doctest::Approx(0.0));
    CHECK(DaeLoss({1, 0}, {0, 1}) == 1.0);
    CHECK(DaeLoss({1, 2, 0}, {2, 1, 0}) == doctest::Approx(0.2));
    CHECK(DaeLoss({0, 0}, {0, 1}) == 1.0);
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
      const double l = DaeLoss(RandomNonNegative(rng, 5), RandomNonNegative(rng, 5));
      CHECK(l >= 0.0);
      CHECK(l <= 1.0 + 1e-15);
    }
  }

  TEST_CASE("gradient check on a linear network") {
    const DaeParams p = DaeInit(5, {2, 2});
    const std::vector<DaeExample> batch{{{0.3, 0.9}, {0.8, 0.1}}};
    GradCheckOptions o;
    o.nudge_inputs = false;
    const GradCheckResult r = GradCheck(p, batch, o);
    CHECK(r.checked == p.values.size());
    CHECK(r.max_relative_error <= 1e-5);
  }

  TEST_CASE("gradient check on a ReLU network") {
    Rng rng(7);
    const DaeParams p = DaeInit(6, DaeWidths(6, 6, 8, 2));
    std::vector<DaeExample> batch;
    for (int i = 0; i < 4; ++i) {
      batch.push_back({RandomNonNegative(rng, 6), RandomNonNegative(rng, 6)});
    }
    const GradCheckResult r = GradCheck(p, batch);
    CHECK(r.checked > p.values.size() / 2);
    CHECK(r.max_relative_error <= 1e-4);
  }

  TEST_CASE("gradients vanish when the prediction is parallel to the target") {
    const DaeParams p = DaeInit(5, {3, 3});
    const std::vector<double> x{0.2, 0.5, 0.4};
    std::vector<double> target = DaeForward(p, x);
    for (double &t : target) t *= 3.0;
    std::vector<double> grad(p.values.size(), 0.0);
    DaeBackward(p, x, target, grad);
    for (double g : grad) CHECK(std::abs(g) <= 1e-6);
    GradCheckOptions o;
    o.nudge_inputs = false;
    const double eps = o.epsilon;
    DaeParams q = p;
    for (std::size_t k = 0; k < q.values.size(); ++k) {
      q.values[k] += eps;
      const double plus = DaeLoss(DaeForward(q, x), target);
      q.values[k] -= 2 * eps;
      const double minus = DaeLoss(DaeForward(q, x), target);
      q.values[k] += eps;
      CHECK(std::abs((plus - minus) / (2 * eps)) <= 1e-6);
    }
  }

  TEST_CASE("training learns a permutation and is reproducible") {
    const auto train = PermutationTask(32, 16, 1);
    TrainConfig c;
    c.learning_rate = 1e-3;
    c.batch_size = 8;
    c.input_dropout = 0.0;
    c.hidden_width = 32;
    c.max_epochs = 150;
    c.patience_epochs = 150;
    c.seed = 4;
    const auto [params, log] = DaeTrain(train, train, c);
    CHECK(DaeMeanLoss(params, train) < 0.05);
    const auto [params2, log2] = DaeTrain(train, train, c);
    CHECK(params.values == params2.values);
    REQUIRE(log.epochs.size() == log2.epochs.size());
    for (std::size_t i = 0; i < log.epochs.size(); ++i) {
      CHECK(log.epochs[i].train_loss == log2.epochs[i].train_loss);
      CHECK(log.epochs[i].valid_cosine == log2.epochs[i].valid_cosine);
    }
    double best = -1.0;
    for (const auto &e : log.epochs) best = std::max(best, e.valid_cosine);
    CHECK(log.best_valid_cosine == best);
    CHECK(log.epochs[log.best_epoch - 1].valid_cosine == best);
    CHECK(DaeMeanCosine(params, train) == best);
  }

  TEST_CASE("patience zero stops at the first non-improving epoch") {
    const auto train = PermutationTask(16, 8, 2);
    TrainConfig c;
    c.learning_rate = 0.5;  // large enough to overshoot quickly
    c.batch_size = 16;
    c.hidden_width = 8;
    c.layers_per_side = 1;
    c.patience_epochs = 0;
    c.max_epochs = 500;
    const auto [params, log] = DaeTrain(train, train, c);
    CHECK(log.stop_reason == "patience");
    const std::size_t n = log.epochs.size();
    REQUIRE(n >= 2);
    CHECK(log.epochs[n - 1].valid_cosine <= log.best_valid_cosine);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      CHECK(log.epochs[i].valid_cosine > log.epochs[i - 1].valid_cosine);
    }
  }

  TEST_CASE("zero targets are skipped and counted; NaN aborts") {
    auto train = PermutationTask(8, 4, 3);
    train.push_back({{1, 0, 0, 0}, {0, 0, 0, 0}});
    TrainConfig c;
    c.hidden_width = 4;
    c.layers_per_side = 1;
    c.max_epochs = 2;
    const auto [p, log] = DaeTrain(train, train, c);
    CHECK(log.skipped_zero_targets == 1);
    CHECK(log.epochs.size() == 2);
    CHECK(log.stop_reason == "max_epochs");

    auto bad = PermutationTask(8, 4, 3);
    bad[3].input[0] = std::numeric_limits<double>::quiet_NaN();
    try {
      DaeTrain(bad, bad, c);
      FAIL("expected TrainingError");
    } catch (const TrainingError &e) {
      CHECK(std::string(e.what()).find("epoch 1") != std::string::npos);
      CHECK(std::string(e.what()).find("batch 0") != std::string::npos);
    }
    CHECK_THROWS_AS(DaeTrain({}, train, c), ValidationError);
    c.input_dropout = 1.0;
    CHECK_THROWS_AS(DaeTrain(train, train, c), ValidationError);
  }

  TEST_CASE("model file round trip is bitwise") {
    const DaeParams p = DaeInit(8, DaeWidths(5, 5, 7, 2));
    TrainConfig c;
    c.seed = 99;
    const auto dir = testsupport::TempDir("dae_file");
    const std::string path = (dir / "m.bin").string();
    SaveDae(p, c, 1, "abc", path);
    const LoadedDae back = LoadDae(path);
    CHECK(back.params.widths == p.widths);
    CHECK(back.params.values == p.values);
    CHECK(back.config.seed == 99);
    CHECK(back.fingerprint == "abc");
    WriteFile(path, "{\"format\":\"frameforecast-dae\"}\n");
    CHECK_THROWS_AS(LoadDae(path), ParseError);
  }
}
