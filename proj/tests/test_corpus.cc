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

#include "doctest.h"
#include "frameforecast/corpus.h"
#include "frameforecast/errors.h"
#include "frameforecast/rng.h"
#include "support.h"

using namespace frameforecast;

namespace {

Document DocWithCounts(const std::string &id, std::size_t sentences,
                       uint64_t seed) {
  Rng rng(seed);
  Document doc;
  doc.id = id;
  for (std::size_t i = 0; i < sentences; ++i) {
    Sentence s;
    s.text = "s" + std::to_string(i);
    const std::size_t k = rng.UniformIndex(4);
    for (std::size_t j = 0; j < k; ++j) {
      s.frame_counts[static_cast<FrameId>(rng.UniformIndex(6))] +=
          0.5 * static_cast<double>(1 + rng.UniformIndex(3));
    }
    doc.sentences.push_back(s);
  }
  return doc;
}

std::vector<std::string> Ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("d" + std::to_string(i));
  return ids;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("block counts") {
    CHECK(SegmentBlocks(DocWithCounts("a", 23, 1), 5).size() == 4);
    CHECK(SegmentBlocks(DocWithCounts("a", 23, 1), 5).back().sentence_end == 20);
    CHECK(SegmentBlocks(DocWithCounts("a", 5, 1), 5).size() == 1);
    CHECK(SegmentBlocks(DocWithCounts("a", 9, 1), 10).empty());
    CHECK_THROWS_AS(SegmentBlocks(DocWithCounts("a", 9, 1), 0), ValidationError);
  }

  TEST_CASE("blocks conserve frame mass and have span L") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      const Document doc = DocWithCounts("d", 5 + seed * 3, seed);
      for (std::size_t l : {1u, 2u, 3u, 7u}) {
        const auto blocks = SegmentBlocks(doc, l);
        CHECK(blocks.size() == doc.sentences.size() / l);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
          CHECK(blocks[b].index == static_cast<int>(b));
          CHECK(blocks[b].sentence_end - blocks[b].sentence_begin == l);
          FrameCounts expected;
          for (std::size_t s = blocks[b].sentence_begin;
               s < blocks[b].sentence_end; ++s) {
            for (const auto &[f, w] : doc.sentences[s].frame_counts) {
              expected[f] += w;
            }
          }
          CHECK(blocks[b].frame_tf == expected);
        }
      }
    }
  }

  TEST_CASE("import examples") {
    const FrameLexicon lex =
        LoadLexicon(testsupport::DataPath("lexicon/toy_lexicon.json"));
    const auto docs = ParseParsedCorpus(
        R"({"id":"b1","sentences":[{"text":"x","frames":["Kinship"]}]})", lex);
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].id == "b1");
    CHECK(docs[0].sentences[0].frame_counts ==
          FrameCounts{{*lex.FindFrame("Kinship"), 1.0}});
    CHECK(ParseParsedCorpus("", lex).empty());
    CHECK(ParseParsedCorpus("\n  \n", lex).empty());
  }

  TEST_CASE("import errors name the frame and line") {
    const FrameLexicon lex =
        LoadLexicon(testsupport::DataPath("lexicon/toy_lexicon.json"));
    try {
      ParseParsedCorpus(
          "{\"id\":\"a\",\"sentences\":[]}\n"
          "{\"id\":\"b\",\"sentences\":[{\"text\":\"x\",\"frames\":[\"NotAFrame\"]}]}\n",
          lex);
      FAIL("expected an error");
    } catch (const ValidationError &e) {
      const std::string msg = e.what();
      CHECK(msg.find("NotAFrame") != std::string::npos);
      CHECK(msg.find("line 2") != std::string::npos);
    }
    try {
      ParseParsedCorpus("{\"id\":\"a\",\"sentences\":[]}\n\n{oops\n", lex);
      FAIL("expected an error");
    } catch (const ParseError &e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }

  TEST_CASE("parsed corpus round trip with weights") {
    const FrameLexicon lex =
        LoadLexicon(testsupport::DataPath("lexicon/toy_lexicon.json"));
    const auto docs = ParseParsedCorpus(
        R"({"id":"b1","sentences":[{"text":"a spark","frame_weights":{"Cause_to_start":0.5,"Fire_emanation":0.5}},{"text":"father","frames":["Kinship","Kinship"]}]})",
        lex);
    const auto again = ParseParsedCorpus(SerializeParsedCorpus(docs, lex, "ff"), lex);
    REQUIRE(again.size() == 1);
    REQUIRE(again[0].sentences.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(again[0].sentences[i].frame_counts == docs[0].sentences[i].frame_counts);
      CHECK(again[0].sentences[i].text == docs[0].sentences[i].text);
    }
    CHECK(docs[0].sentences[1].frame_counts.begin()->second == 2.0);
  }

  TEST_CASE("block dump round trip") {
    const auto blocks = SegmentBlocks(DocWithCounts("z", 12, 4), 3);
    const auto again = ParseBlocks(SerializeBlocks(blocks));
    REQUIRE(again.size() == blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      CHECK(again[i].doc_id == "z");
      CHECK(again[i].index == blocks[i].index);
      CHECK(again[i].frame_tf == blocks[i].frame_tf);
    }
  }

  TEST_CASE("split sizes") {
    const SplitRatios r{0.7, 0.1, 0.2};
    const CorpusSplit ten = SplitCorpus(Ids(10), r, 7);
    CHECK(ten.train.size() == 7);
    CHECK(ten.valid.size() == 1);
    CHECK(ten.test.size() == 2);
    const CorpusSplit big = SplitCorpus(Ids(4794), r, 0);
    CHECK(big.train.size() == 3357);
    CHECK(big.valid.size() == 479);
    CHECK(big.test.size() == 958);
    const CorpusSplit again = SplitCorpus(Ids(10), r, 7);
    CHECK(again.train == ten.train);
    CHECK(again.test == ten.test);
  }

  TEST_CASE("split is a partition independent of input order") {
    for (std::size_t n = 3; n < 60; n += 7) {
      auto ids = Ids(n);
      const CorpusSplit a = SplitCorpus(ids, {0.7, 0.1, 0.2}, n);
      std::reverse(ids.begin(), ids.end());
      const CorpusSplit b = SplitCorpus(ids, {0.7, 0.1, 0.2}, n);
      CHECK(a.train == b.train);
      std::set<std::string> all;
      for (const auto *part : {&a.train, &a.valid, &a.test}) {
        for (const auto &id : *part) CHECK(all.insert(id).second);
      }
      CHECK(all.size() == n);
      CHECK(!a.valid.empty());
      CHECK(!a.test.empty());
    }
  }

  TEST_CASE("split errors") {
    CHECK_THROWS_AS(SplitCorpus(Ids(2), {0.7, 0.1, 0.2}, 0), ValidationError);
    CHECK_THROWS_AS(SplitCorpus(Ids(10), {0.7, 0.1, 0.1}, 0), ValidationError);
    CHECK_THROWS_AS(SplitCorpus(Ids(10), {1.2, -0.2, 0.0}, 0), ValidationError);
    CHECK_THROWS_AS(SplitCorpus({"a", "a", "b"}, {0.5, 0.25, 0.25}, 0),
                    ValidationError);
    const CorpusSplit only = SplitCorpus(Ids(2), {1.0, 0.0, 0.0}, 0);
    CHECK(only.train.size() == 2);
  }

  TEST_CASE("ingestion pipeline") {
    const FrameLexicon lex =
        LoadLexicon(testsupport::DataPath("lexicon/toy_lexicon.json"));
    const std::string raw =
        "Preface\n\nCHAPTER 1. Start\n\nHis father remained silent. "
        "The mother stayed.\n\nCHAPTER 2. End\n\nGone.\n";
    const IngestResult r = IngestText("b", raw, lex);
    REQUIRE(r.document);
    const Document &doc = *r.document;
    // "CHAPTER 1." and "Start" split apart, then the two body sentences.
    CHECK(doc.sentences.size() == 4);
    CHECK(doc.sentences[0].text == "CHAPTER 1.");
    CHECK(doc.sentences[2].frame_counts.count(*lex.FindFrame("Kinship")) == 1);
    CHECK_FALSE(IngestText("c", "no chapters", lex).document);
    IngestOptions strict;
    strict.min_bytes = 10000;
    CHECK(IngestText("b", raw, lex, strict).rejection.find("bytes") !=
          std::string::npos);
    strict.min_bytes = 0;
    strict.reject_html = true;
    CHECK_FALSE(IngestText("h", "<html><p>Chapter 1</p>", lex, strict).document);
    CHECK_THROWS_AS(IngestFile("/nonexistent/book.txt", lex), IoError);
  }

  TEST_CASE("bundled books ingest") {
    const FrameLexicon lex =
        LoadLexicon(testsupport::DataPath("lexicon/desk_lexicon.json"));
    const IngestResult r = IngestFile(
        testsupport::DataPath("corpus/moby_dick/volume_02.txt"), lex);
    REQUIRE(r.document);
    CHECK(r.document->id == "volume_02");
    CHECK(r.document->sentences.size() > 100);
    double mass = 0.0;
    for (const auto &s : r.document->sentences) {
      for (const auto &[f, w] : s.frame_counts) {
        CHECK(f < static_cast<FrameId>(lex.size()));
        CHECK(w > 0.0);
        mass += w;
      }
    }
    CHECK(mass > 100.0);
  }
}
