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

#include <map>
#include <set>

#include "doctest.h"
#include "frameforecast/cloud.h"
#include "frameforecast/errors.h"
#include "frameforecast/rng.h"
#include "support.h"

using namespace frameforecast;

namespace {

// n frames, each with two nouns, one verb, one adjective and one adverb.
FrameLexicon WideLexicon(int n) {
  std::vector<Frame> frames;
  for (int i = 0; i < n; ++i) {
    const std::string s = std::to_string(i);
    frames.push_back({i, "F" + s,
                      {{"noun" + s + "a", PartOfSpeech::kNoun, false},
                       {"noun" + s + "b", PartOfSpeech::kNoun, false},
                       {"verb" + s, PartOfSpeech::kVerb, false},
                       {"adj" + s, PartOfSpeech::kAdjective, false},
                       {"adv" + s, PartOfSpeech::kAdverb, false}}});
  }
  return FrameLexicon(frames);
}

FrameVector RandomVector(int n, int nonzero, uint64_t seed) {
  Rng rng(seed);
  FrameVector v = ZeroVector(n);
  for (std::size_t i : rng.SampleWithoutReplacement(n, nonzero)) {
    v.weights[i] = rng.Uniform(0.01, 1.0);
  }
  return v;
}

bool Overlap(const PlacedWord &a, const PlacedWord &b) {
  return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
}

}  // namespace

TEST_SUITE("cloud") {
  TEST_CASE("40 nonzero frames yield 30 represented, at most 3 LUs each") {
    const FrameLexicon lex = WideLexicon(60);
    const FrameVector v = RandomVector(60, 40, 5);
    const auto entries = SelectCloudWords(v, lex, 1);
    std::map<FrameId, int> per_frame;
    for (const auto &e : entries) ++per_frame[e.frame];
    CHECK(per_frame.size() == 30);
    for (const auto &[f, n] : per_frame) CHECK(n == 3);
    // The 30 heaviest frames are the ones kept.
    std::vector<std::pair<double, int>> ranked;
    for (int i = 0; i < 60; ++i) {
      if (v.weights[i] > 0) ranked.push_back({-v.weights[i], i});
    }
    std::sort(ranked.begin(), ranked.end());
    for (int i = 0; i < 30; ++i) CHECK(per_frame.count(ranked[i].second) == 1);
    for (const auto &e : entries) {
      CHECK(e.font_px >= 12);
      CHECK(e.font_px <= 48);
      CHECK(e.word.rfind("adv", 0) != 0);
    }
  }

  TEST_CASE("fewer nonzero frames than top_k are all represented") {
    const FrameLexicon lex = WideLexicon(20);
    const auto entries = SelectCloudWords(RandomVector(20, 7, 2), lex, 3);
    std::set<FrameId> frames;
    for (const auto &e : entries) frames.insert(e.frame);
    CHECK(frames.size() == 7);
  }

  TEST_CASE("single frame maps to max font and darkest shade") {
    const FrameLexicon lex = WideLexicon(5);
    FrameVector v = ZeroVector(5);
    v.weights[2] = 0.4;
    const auto entries = SelectCloudWords(v, lex, 0);
    REQUIRE(entries.size() == 3);
    for (const auto &e : entries) {
      CHECK(e.font_px == 48);
      CHECK(e.shade == 0);
      CHECK(e.frame == 2);
    }
  }

  TEST_CASE("font and shade are monotone in weight") {
    const FrameLexicon lex = WideLexicon(60);
    for (uint64_t seed = 0; seed < 10; ++seed) {
      const auto entries = SelectCloudWords(RandomVector(60, 45, seed), lex, seed);
      for (const auto &a : entries) {
        for (const auto &b : entries) {
          if (a.weight > b.weight) {
            CHECK(a.font_px >= b.font_px);
            CHECK(a.shade <= b.shade);
          }
        }
      }
    }
  }

  TEST_CASE("selection errors") {
    const FrameLexicon lex = WideLexicon(5);
    CHECK_THROWS_AS(SelectCloudWords(ZeroVector(5), lex, 0), ValidationError);
    CHECK_THROWS_AS(SelectCloudWords(ZeroVector(4), lex, 0), ValidationError);
    // A frame with only adverbs has nothing to draw.
    const FrameLexicon adv_only({{0, "A", {{"quickly", PartOfSpeech::kAdverb, false}}}});
    FrameVector v = ZeroVector(1);
    v.weights[0] = 1.0;
    try {
      SelectCloudWords(v, adv_only, 0);
      FAIL("expected error");
    } catch (const ValidationError &e) {
      CHECK(std::string(e.what()).find("nothing to render") != std::string::npos);
    }
  }

  TEST_CASE("layout: no overlaps, inside canvas, deterministic") {
    const FrameLexicon lex = WideLexicon(60);
    for (uint64_t seed = 0; seed < 5; ++seed) {
      const auto entries = SelectCloudWords(RandomVector(60, 40, seed), lex, seed);
      const CloudLayout layout = LayoutCloud(entries, 800, 600, seed);
      std::size_t placed = 0;
      for (const auto &group : layout.groups) {
        placed += group.size();
        for (std::size_t i = 0; i < group.size(); ++i) {
          const PlacedWord &a = group[i];
          CHECK(a.x >= 0);
          CHECK(a.y >= 0);
          CHECK(a.x + a.w <= 800);
          CHECK(a.y + a.h <= 600);
          CHECK(a.w == TextWidth(a.entry.word, a.entry.font_px));
          CHECK(a.h == TextHeight(a.entry.font_px));
          for (std::size_t j = i + 1; j < group.size(); ++j) {
            CHECK_FALSE(Overlap(a, group[j]));
          }
        }
      }
      CHECK(placed == entries.size());
      CHECK(RenderSvg(layout) == RenderSvg(LayoutCloud(entries, 800, 600, seed)));
    }
  }

  TEST_CASE("layout names the word that does not fit") {
    const FrameLexicon lex({{0, "F", {{"enormousword", PartOfSpeech::kNoun, false}}}});
    FrameVector v = ZeroVector(1);
    v.weights[0] = 1.0;
    const auto entries = SelectCloudWords(v, lex, 0);
    try {
      LayoutCloud(entries, 50, 20, 0);
      FAIL("expected error");
    } catch (const ValidationError &e) {
      const std::string msg = e.what();
      CHECK(msg.find("enormousword") != std::string::npos);
      CHECK(msg.find("50") != std::string::npos);
    }
  }

  TEST_CASE("svg is well formed with one text node per entry") {
    const FrameLexicon lex = WideLexicon(60);
    const auto entries = SelectCloudWords(RandomVector(60, 40, 7), lex, 7);
    const CloudLayout layout = LayoutCloud(entries, 800, 600, 7);
    const std::string svg = RenderSvg(layout, "abc");
    const auto check = testsupport::CheckXml(svg);
    REQUIRE_MESSAGE(check.ok, check.error);
    CHECK(check.text_of_lu.size() == entries.size());
    CHECK(svg.find("abc") != std::string::npos);
    std::multiset<std::string> want, got(check.text_of_lu.begin(), check.text_of_lu.end());
    for (const auto &e : entries) want.insert(e.word);
    CHECK(want == got);
    for (CloudGroup g : {CloudGroup::kNoun, CloudGroup::kVerb, CloudGroup::kAdjective}) {
      const auto c = testsupport::CheckXml(RenderGroupSvg(layout, g));
      CHECK(c.ok);
      CHECK(c.text_of_lu.size() == layout.groups[static_cast<int>(g)].size());
    }
    CHECK(LayoutJson(layout, "abc").find("\"font_px\"") != std::string::npos);
  }

  TEST_CASE("direct font and shade mapping") {
    CloudEntry e;
    e.word = "whale";
    e.font_px = 48;
    e.shade = 32;
    e.weight = 1.0;
    const CloudLayout layout = LayoutCloud({e}, 400, 300, 0);
    const std::string svg = RenderSvg(layout);
    CHECK(svg.find("font-size=\"48\"") != std::string::npos);
    CHECK(svg.find("fill=\"rgb(32,32,32)\"") != std::string::npos);
    // Empty verb and adjective panels still render.
    CHECK(testsupport::CheckXml(RenderGroupSvg(layout, CloudGroup::kVerb)).ok);
  }

  TEST_CASE("words needing escapes stay valid XML") {
    CloudEntry e;
    e.word = "rock & roll";
    e.font_px = 20;
    const CloudLayout layout = LayoutCloud({e}, 400, 300, 0);
    const auto c = testsupport::CheckXml(RenderSvg(layout));
    REQUIRE(c.ok);
    CHECK(c.text_of_lu.at(0) == "rock &amp; roll");
  }
}
