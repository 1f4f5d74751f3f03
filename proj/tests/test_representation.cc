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

#include "doctest.h"
#include "frameforecast/errors.h"
#include "frameforecast/representation.h"
#include "frameforecast/rng.h"
#include "support.h"

using namespace frameforecast;

namespace {

StoryBlock Block(const std::string &doc, int index, FrameCounts tf) {
  StoryBlock b;
  b.doc_id = doc;
  b.index = index;
  b.frame_tf = std::move(tf);
  return b;
}

std::vector<FrameVector> Vectors(std::size_t n) {
  std::vector<FrameVector> v;
  for (std::size_t i = 0; i < n; ++i) {
    FrameVector f = ZeroVector(3);
    f.weights[i % 3] = 1.0 + static_cast<double>(i);
    v.push_back(f);
  }
  return v;
}

}  // namespace

TEST_SUITE("representation") {
  TEST_CASE("idf examples") {
    // Frame 0 in 2 of 4 blocks, frame 1 in all, frame 2 in none.
    std::vector<StoryBlock> blocks = {
        Block("d", 0, {{0, 1.0}, {1, 2.0}}), Block("d", 1, {{1, 1.0}}),
        Block("d", 2, {{0, 3.0}, {1, 1.0}}), Block("d", 3, {{1, 0.5}})};
    const IdfModel idf = FitIdf(blocks, 3);
    CHECK(idf.n == 4);
    CHECK(idf.df == std::vector<std::size_t>{2, 4, 0});
    CHECK(idf.idf[0] == doctest::Approx(0.693147).epsilon(1e-6));
    CHECK(idf.idf[1] == 0.0);
    CHECK(idf.idf[2] == 0.0);
    CHECK_THROWS_AS(FitIdf({}, 3), ValidationError);
    CHECK_THROWS_AS(FitIdf({Block("d", 0, {{5, 1.0}})}, 3), ValidationError);
  }

  TEST_CASE("vectorize examples") {
    IdfModel idf = IdfFromCounts(4, {2, 4});
    const FrameVector raw = Vectorize(Block("d", 0, {{0, 3.0}, {1, 5.0}}), idf, false);
    CHECK(raw.weights[0] == doctest::Approx(2.079442).epsilon(1e-6));
    CHECK(raw.weights[1] == 0.0);
    const FrameVector unit = Vectorize(Block("d", 0, {{0, 3.0}, {1, 5.0}}), idf);
    CHECK(unit.weights[0] == 1.0);
    CHECK(unit.weights[1] == 0.0);
    const FrameVector empty = Vectorize(Block("d", 0, {}), idf);
    CHECK(empty.normalized);
    CHECK(Norm(empty.weights) == 0.0);
    const FrameVector single = Vectorize(Block("d", 0, {{0, 1.0}}), idf, false);
    CHECK(single.weights[0] == doctest::Approx(0.693147).epsilon(1e-6));
  }

  TEST_CASE("tf-idf matches the brute-force oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const int f = 1 + static_cast<int>(rng.UniformIndex(16));
      const std::size_t nb = 1 + rng.UniformIndex(10);
      std::vector<StoryBlock> blocks;
      std::vector<std::map<int, double>> maps;
      for (std::size_t b = 0; b < nb; ++b) {
        FrameCounts tf;
        for (int t = 0; t < f; ++t) {
          if (rng.Bernoulli(0.4)) tf[t] = rng.Uniform(0.0, 5.0);
        }
        blocks.push_back(Block("d", static_cast<int>(b), tf));
        maps.emplace_back(tf.begin(), tf.end());
      }
      const IdfModel idf = FitIdf(blocks, static_cast<std::size_t>(f));
      for (bool normalize : {false, true}) {
        const auto expected = testsupport::OracleTfIdf(maps, maps, f, normalize);
        for (std::size_t b = 0; b < nb; ++b) {
          const FrameVector v = Vectorize(blocks[b], idf, normalize);
          for (int t = 0; t < f; ++t) {
            CHECK(std::abs(v.weights[t] - expected[b][t]) <= 1e-12);
          }
        }
      }
    }
  }

  TEST_CASE("ubiquitous frames vanish and norms are 0 or 1") {
    Rng rng(2);
    std::vector<StoryBlock> blocks;
    for (int b = 0; b < 8; ++b) {
      blocks.push_back(Block("d", b, {{0, rng.Uniform(0.1, 3.0)},
                                      {1 + b % 3, rng.Uniform(0.1, 3.0)}}));
    }
    const IdfModel idf = FitIdf(blocks, 5);
    for (const StoryBlock &b : blocks) {
      const FrameVector v = Vectorize(b, idf);
      CHECK(v.weights[0] == 0.0);
      const double n = Norm(v.weights);
      CHECK((std::abs(n - 1.0) < 1e-9 || n == 0.0));
      for (double w : v.weights) CHECK(w >= 0.0);
    }
  }

  TEST_CASE("cosine examples and errors") {
    const FrameVector a{{1.0, 2.0, 0.0}, false};
    const FrameVector b{{2.0, 1.0, 0.0}, false};
    CHECK(Cosine(a, b) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(Cosine(a, a) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(Cosine(FrameVector{{1, 0}, false}, FrameVector{{0, 1}, false}) == 0.0);
    CHECK(Cosine(FrameVector{{0, 0}, false}, FrameVector{{0, 1}, false}) == 0.0);
    CHECK_THROWS_AS(Cosine(a, FrameVector{{1.0}, false}), ValidationError);
  }

  TEST_CASE("normalization never changes a cosine") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(9), y(9);
      for (double &v : x) v = rng.Bernoulli(0.5) ? rng.Uniform(0, 4) : 0.0;
      for (double &v : y) v = rng.Bernoulli(0.5) ? rng.Uniform(0, 4) : 0.0;
      std::vector<double> xn = x;
      NormalizeInPlace(xn);
      CHECK(std::abs(Cosine(x, y) - Cosine(xn, y)) <= 1e-12);
    }
  }

  TEST_CASE("instance construction") {
    BlocksByDoc one{{"a", Vectors(4)}};
    CHECK(BuildInstances(one, 1).size() == 3);
    const auto w2 = BuildInstances(one, 2);
    REQUIRE(w2.size() == 2);
    CHECK(w2[0].context[0].weights == one["a"][0].weights);
    CHECK(w2[0].context[1].weights == one["a"][1].weights);
    CHECK(w2[0].target.weights == one["a"][2].weights);
    CHECK(w2[0].anchor_index == 1);
    CHECK(w2[1].target.weights == one["a"][3].weights);
    BlocksByDoc two{{"b", Vectors(3)}, {"a", Vectors(4)}, {"c", Vectors(1)}};
    const auto all = BuildInstances(two, 1);
    CHECK(all.size() == 5);
    CHECK(all.front().doc_id == "a");
    CHECK(all.back().doc_id == "b");
    CHECK_THROWS_AS(BuildInstances(two, 0), ValidationError);
    for (std::size_t w = 1; w < 6; ++w) {
      std::size_t expected = 0;
      for (const auto &[id, v] : two) expected += v.size() > w ? v.size() - w : 0;
      CHECK(BuildInstances(two, w).size() == expected);
    }
  }

  TEST_CASE("flatten concatenates chronologically") {
    const auto v = Vectors(2);
    CHECK(Flatten(v) == std::vector<double>{1, 0, 0, 0, 2, 0});
  }

  TEST_CASE("sparse vector and idf files round trip") {
    std::vector<SparseRecord> records = {
        {"a", 0, FrameVector{{0.0, 0.25, 0.1}, true}},
        {"b", 3, FrameVector{{1.0 / 3.0, 0.0, 0.0}, false}}};
    const auto again = ParseSparseVectors(SerializeSparseVectors(records, "fp"), 3);
    REQUIRE(again.size() == 2);
    CHECK(again[0].vector.weights == records[0].vector.weights);
    CHECK(again[1].vector.weights == records[1].vector.weights);
    CHECK(again[1].index == 3);
    CHECK_FALSE(again[1].vector.normalized);
    CHECK_THROWS_AS(ParseSparseVectors(SerializeSparseVectors(records), 2),
                    ParseError);

    const IdfModel idf = IdfFromCounts(7, {0, 3, 7});
    const IdfModel back = ParseIdf(SerializeIdf(idf, "fp"));
    CHECK(back.n == 7);
    CHECK(back.df == idf.df);
    CHECK(back.idf == idf.idf);
    CHECK_THROWS_AS(ParseIdf(R"({"n":2,"df":[3]})"), ValidationError);
  }
}
