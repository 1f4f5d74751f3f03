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

#ifndef FRAMEFORECAST_LEXICON_H_
#define FRAMEFORECAST_LEXICON_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace frameforecast {

using FrameId = int;

// Weighted frame evocations for one sentence or block, keyed by frame id.
// Ordered so that iteration and serialization are deterministic.
using FrameCounts = std::map<FrameId, double>;

enum class PartOfSpeech { kNoun, kVerb, kAdjective, kAdverb, kOther };

std::string_view PartOfSpeechName(PartOfSpeech pos);
std::optional<PartOfSpeech> ParsePartOfSpeech(std::string_view name);

struct LexicalUnit {
  std::string lemma;  // lowercase, trimmed, single internal spaces
  PartOfSpeech pos = PartOfSpeech::kOther;
  bool multiword = false;
};

struct Frame {
  FrameId id = 0;
  std::string name;
  std::vector<LexicalUnit> lexical_units;
};

// The frame inventory plus a lemma -> frames trigger index. Immutable after
// construction and safe to share between threads.
class FrameLexicon {
 public:
  // Assigns ids by position and builds the trigger index. Lemmas are
  // normalized (lowercased, trimmed, whitespace collapsed).
  // Throws ValidationError on duplicate or empty frame names and on empty
  // lemmas.
  explicit FrameLexicon(std::vector<Frame> frames);

  std::size_t size() const { return frames_.size(); }
  const std::vector<Frame> &frames() const { return frames_; }
  const Frame &frame(FrameId id) const { return frames_.at(id); }

  std::optional<FrameId> FindFrame(std::string_view name) const;

  // Frames evoked by a (possibly multiword) lemma, ascending and unique;
  // nullptr when the lemma is not a trigger.
  const std::vector<FrameId> *Triggers(std::string_view lemma) const;

  const std::unordered_map<std::string, std::vector<FrameId>> &
  trigger_index() const {
    return trigger_index_;
  }

  // Largest number of words in any lexical unit.
  std::size_t max_trigger_words() const { return max_trigger_words_; }

 private:
  std::vector<Frame> frames_;
  std::unordered_map<std::string, FrameId> by_name_;
  std::unordered_map<std::string, std::vector<FrameId>> trigger_index_;
  std::size_t max_trigger_words_ = 0;
};

// Parses the lexicon JSON schema
//   {"frames": [{"name": str, "lexical_units": [{"lemma": str, "pos": str}]}]}
// Throws ParseError naming the line or field on malformed input and
// ValidationError on duplicate frame names.
FrameLexicon ParseLexicon(std::string_view json_text);
FrameLexicon LoadLexicon(const std::string &path);

// Inverse of ParseLexicon: ParseLexicon(SerializeLexicon(x)) has the same
// logical content as x.
std::string SerializeLexicon(const FrameLexicon &lexicon);

// Tags one tokenized sentence by trigger lookup. Scans left to right trying
// the longest multiword trigger first; an n-gram matches when its lemmatized
// tokens (or, failing that, its lowercased surface tokens) form a lexical
// unit. Each matched trigger contributes a total weight of 1, split evenly
// across its candidate frames. Tokens consumed by a match are not reused.
// Hyphenated tokens that are not triggers as a whole are split at hyphens.
FrameCounts TagSentence(const std::vector<std::string> &tokens,
                        const FrameLexicon &lexicon);

}  // namespace frameforecast

#endif  // FRAMEFORECAST_LEXICON_H_
