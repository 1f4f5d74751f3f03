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

#include <set>
#include <sstream>

#include "doctest.h"
#include "frameforecast/corpus.h"
#include "frameforecast/lemmatizer.h"
#include "frameforecast/text.h"
#include "support.h"

using frameforecast::Lemmatize;

TEST_SUITE("lemmatizer") {
  TEST_CASE("documented examples") {
    CHECK(Lemmatize("remained") == "remain");
    CHECK(Lemmatize("Father") == "father");
    CHECK(Lemmatize("running") == "run");
  }

  TEST_CASE("suffix rules") {
    CHECK(Lemmatize("stories") == "story");
    CHECK(Lemmatize("classes") == "class");
    CHECK(Lemmatize("boxes") == "box");
    CHECK(Lemmatize("churches") == "church");
    CHECK(Lemmatize("cats") == "cat");
    CHECK(Lemmatize("carried") == "carry");
    CHECK(Lemmatize("stopped") == "stop");
    CHECK(Lemmatize("hoped") == "hope");
    CHECK(Lemmatize("making") == "make");
    CHECK(Lemmatize("sparks") == "spark");
    CHECK(Lemmatize("glass") == "glass");
    CHECK(Lemmatize("bus") == "bus");
  }

  TEST_CASE("irregular forms and protected words") {
    CHECK(Lemmatize("went") == "go");
    CHECK(Lemmatize("children") == "child");
    CHECK(Lemmatize("brought") == "bring");
    CHECK(Lemmatize("always") == "always");
    CHECK(Lemmatize("morning") == "morning");
    CHECK(Lemmatize("being") == "be");
  }

  TEST_CASE("short and non-alphabetic tokens pass through lowercased") {
    CHECK(Lemmatize("Us") == "us");
    CHECK(Lemmatize("1850s") == "1850s");
    CHECK(Lemmatize(",") == ",");
    CHECK(Lemmatize("") == "");
  }

  TEST_CASE("hyphenated compounds reduce their last segment") {
    CHECK(Lemmatize("sea-captains") == "sea-captain");
  }

  TEST_CASE("idempotent over a real vocabulary") {
    const std::string raw = frameforecast::ReadFile(
        testsupport::DataPath("corpus/moby_dick/volume_01.txt"));
    std::set<std::string> vocab;
    for (const auto &s : frameforecast::SplitSentences(
             frameforecast::Transliterate(raw))) {
      for (const auto &t : frameforecast::Tokenize(s)) vocab.insert(t);
    }
    REQUIRE(vocab.size() > 1000);
    std::size_t failures = 0;
    for (const std::string &w : vocab) {
      const std::string once = Lemmatize(w);
      if (Lemmatize(once) != once) {
        ++failures;
        MESSAGE("not idempotent: " << w << " -> " << once << " -> "
                                   << Lemmatize(once));
      }
    }
    CHECK(failures == 0);
  }

  TEST_CASE("idempotent over synthetic suffix stacks") {
    const char *stems[] = {"walk", "hop", "try", "bless", "fix", "agree",
                           "sing", "use", "stir", "panic", "judge", "free"};
    const char *suffixes[] = {"", "s", "es", "ed", "ing", "ies", "ied",
                              "ings", "sses", "eds"};
    for (const char *s : stems) {
      for (const char *x : suffixes) {
        const std::string w = std::string(s) + x;
        const std::string once = Lemmatize(w);
        CHECK_MESSAGE(Lemmatize(once) == once, w);
      }
    }
  }
}
