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

#ifndef FRAMEFORECAST_CORPUS_H_
#define FRAMEFORECAST_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frameforecast/lexicon.h"

namespace frameforecast {

struct Sentence {
  std::string text;
  std::vector<std::string> tokens;
  FrameCounts frame_counts;
};

// One book or abstract.
struct Document {
  std::string id;
  std::vector<Sentence> sentences;
};

// L consecutive sentences of one document; frame_tf is the elementwise sum
// of the member sentences' frame counts.
struct StoryBlock {
  std::string doc_id;
  int index = 0;
  std::size_t sentence_begin = 0;
  std::size_t sentence_end = 0;
  FrameCounts frame_tf;
};

// Optional ingestion predicates. Defaults keep every book that has
// locatable chapter titles.
struct IngestOptions {
  std::size_t min_bytes = 0;   // reject raw files smaller than this
  bool reject_html = false;    // reject files containing HTML tags
  bool clean_chapters = true;  // apply chapter-title cleaning
};

struct IngestResult {
  std::optional<Document> document;
  std::string rejection;
};

// Transliterate, clean, split, tokenize, and tag one raw UTF-8 document.
IngestResult IngestText(const std::string &id, std::string_view raw,
                        const FrameLexicon &lexicon,
                        const IngestOptions &options = {});

// Reads path and ingests it with the file stem as document id.
// Throws IoError when the file cannot be read.
IngestResult IngestFile(const std::string &path, const FrameLexicon &lexicon,
                        const IngestOptions &options = {});

// Non-overlapping blocks of exactly block_size sentences in document order;
// a trailing remainder shorter than block_size is dropped.
// Throws ValidationError when block_size is zero.
std::vector<StoryBlock> SegmentBlocks(const Document &doc,
                                      std::size_t block_size);

// Parsed-corpus JSONL, one document per line:
//   {"id": str, "sentences": [{"text": str,
//                              "frames": [str] | "frame_weights": {str: num}}]}
// Frame names are resolved against the lexicon. Blank lines are skipped.
// Throws ParseError (with line number) on malformed lines and
// ValidationError naming the frame and line on unknown frame names.
std::vector<Document> ParseParsedCorpus(std::string_view jsonl,
                                        const FrameLexicon &lexicon);
std::vector<Document> ImportParsed(const std::string &path,
                                   const FrameLexicon &lexicon);

// Writes documents in the parsed-corpus format using "frame_weights".
// A non-empty fingerprint is added to every record.
std::string SerializeParsedCorpus(const std::vector<Document> &docs,
                                  const FrameLexicon &lexicon,
                                  const std::string &fingerprint = "");

// Block dump JSONL: {"doc_id": str, "index": int, "tf": {frame_id: num}}.
std::string SerializeBlocks(const std::vector<StoryBlock> &blocks,
                            const std::string &fingerprint = "");
std::vector<StoryBlock> ParseBlocks(std::string_view jsonl);

struct SplitRatios {
  double train = 0.7;
  double valid = 0.1;
  double test = 0.2;
};

// Document-level train/valid/test partition.
struct CorpusSplit {
  std::vector<std::string> train;
  std::vector<std::string> valid;
  std::vector<std::string> test;
};

// Sorts the ids, shuffles them with the seed, and cuts contiguous parts.
// The valid and test sizes are floor(N * ratio), raised to 1 when the ratio
// is nonzero; the train part takes the remainder. 4,794 documents at
// 0.7/0.1/0.2 give 3,357/479/958.
// Throws ValidationError when ratios are negative or do not sum to 1, when
// ids repeat, or when there are fewer documents than nonzero parts.
CorpusSplit SplitCorpus(std::vector<std::string> doc_ids,
                        const SplitRatios &ratios, uint64_t seed);

std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, std::string_view contents);

}  // namespace frameforecast

#endif  // FRAMEFORECAST_CORPUS_H_
