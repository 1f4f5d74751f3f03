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

#include "frameforecast/lexicon.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "frameforecast/errors.h"
#include "frameforecast/lemmatizer.h"
#include "json.hpp"

namespace frameforecast {
namespace {

using nlohmann::json;

std::string NormalizeLemma(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (char c : raw) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return ToLowerAscii(out);
}

std::size_t WordCount(std::string_view lemma) {
  return static_cast<std::size_t>(std::count(lemma.begin(), lemma.end(), ' ')) +
         1;
}

// 1-based line of a byte offset in text.
std::size_t LineOf(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

const json &Require(const json &object, const char *key,
                    const std::string &where) {
  if (!object.is_object()) throw ParseError(where + ": expected an object");
  auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError(where + "." + key + ": missing required field");
  }
  return *it;
}

}  // namespace

std::string_view PartOfSpeechName(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::kNoun:
      return "noun";
    case PartOfSpeech::kVerb:
      return "verb";
    case PartOfSpeech::kAdjective:
      return "adjective";
    case PartOfSpeech::kAdverb:
      return "adverb";
    case PartOfSpeech::kOther:
      return "other";
  }
  return "other";
}

std::optional<PartOfSpeech> ParsePartOfSpeech(std::string_view name) {
  if (name == "noun") return PartOfSpeech::kNoun;
  if (name == "verb") return PartOfSpeech::kVerb;
  if (name == "adjective") return PartOfSpeech::kAdjective;
  if (name == "adverb") return PartOfSpeech::kAdverb;
  if (name == "other") return PartOfSpeech::kOther;
  return std::nullopt;
}

FrameLexicon::FrameLexicon(std::vector<Frame> frames)
    : frames_(std::move(frames)) {
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    Frame &frame = frames_[i];
    frame.id = static_cast<FrameId>(i);
    if (frame.name.empty()) {
      throw ValidationError("frame " + std::to_string(i) + " has an empty name");
    }
    if (!by_name_.emplace(frame.name, frame.id).second) {
      throw ValidationError("duplicate frame name \"" + frame.name + "\"");
    }
    for (LexicalUnit &lu : frame.lexical_units) {
      lu.lemma = NormalizeLemma(lu.lemma);
      if (lu.lemma.empty()) {
        throw ValidationError("frame \"" + frame.name +
                              "\" has a lexical unit with an empty lemma");
      }
      lu.multiword = lu.lemma.find(' ') != std::string::npos;
      max_trigger_words_ = std::max(max_trigger_words_, WordCount(lu.lemma));
      std::vector<FrameId> &ids = trigger_index_[lu.lemma];
      if (ids.empty() || ids.back() != frame.id) ids.push_back(frame.id);
    }
  }
}

std::optional<FrameId> FrameLexicon::FindFrame(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

const std::vector<FrameId> *FrameLexicon::Triggers(
    std::string_view lemma) const {
  auto it = trigger_index_.find(std::string(lemma));
  return it == trigger_index_.end() ? nullptr : &it->second;
}

FrameLexicon ParseLexicon(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ParseError("lexicon: malformed JSON at line " +
                     std::to_string(LineOf(json_text, e.byte)) + ": " +
                     e.what());
  }
  const json &frames_json = Require(doc, "frames", "lexicon");
  if (!frames_json.is_array()) {
    throw ParseError("lexicon: field \"frames\" must be an array");
  }
  std::vector<Frame> frames;
  frames.reserve(frames_json.size());
  for (std::size_t i = 0; i < frames_json.size(); ++i) {
    const std::string where = "lexicon: frames[" + std::to_string(i) + "]";
    const json &f = frames_json[i];
    const json &name = Require(f, "name", where);
    if (!name.is_string()) throw ParseError(where + ".name must be a string");
    Frame frame;
    frame.name = name.get<std::string>();
    const json &lus = Require(f, "lexical_units", where);
    if (!lus.is_array()) {
      throw ParseError(where + ".lexical_units must be an array");
    }
    for (std::size_t j = 0; j < lus.size(); ++j) {
      const std::string lu_where =
          where + ".lexical_units[" + std::to_string(j) + "]";
      const json &lemma = Require(lus[j], "lemma", lu_where);
      const json &pos = Require(lus[j], "pos", lu_where);
      if (!lemma.is_string()) {
        throw ParseError(lu_where + ".lemma must be a string");
      }
      if (!pos.is_string()) throw ParseError(lu_where + ".pos must be a string");
      auto parsed = ParsePartOfSpeech(pos.get<std::string>());
      if (!parsed) {
        throw ParseError(lu_where + ".pos: unknown part of speech \"" +
                         pos.get<std::string>() + "\"");
      }
      frame.lexical_units.push_back(
          LexicalUnit{lemma.get<std::string>(), *parsed, false});
    }
    frames.push_back(std::move(frame));
  }
  return FrameLexicon(std::move(frames));
}

FrameLexicon LoadLexicon(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseLexicon(buffer.str());
}

std::string SerializeLexicon(const FrameLexicon &lexicon) {
  json frames = json::array();
  for (const Frame &frame : lexicon.frames()) {
    json lus = json::array();
    for (const LexicalUnit &lu : frame.lexical_units) {
      lus.push_back({{"lemma", lu.lemma},
                     {"pos", std::string(PartOfSpeechName(lu.pos))}});
    }
    frames.push_back({{"name", frame.name}, {"lexical_units", lus}});
  }
  return json{{"frames", frames}}.dump(1) + "\n";
}

FrameCounts TagSentence(const std::vector<std::string> &raw_tokens,
                        const FrameLexicon &lexicon) {
  FrameCounts counts;
  // Hyphenated tokens that are not triggers themselves ("ago-never" from a
  // transliterated dash) are matched part by part.
  std::vector<std::string> tokens;
  tokens.reserve(raw_tokens.size());
  for (const std::string &token : raw_tokens) {
    if (token.find('-') == std::string::npos ||
        lexicon.Triggers(Lemmatize(token)) != nullptr ||
        lexicon.Triggers(ToLowerAscii(token)) != nullptr) {
      tokens.push_back(token);
      continue;
    }
    std::size_t start = 0;
    while (start <= token.size()) {
      std::size_t dash = token.find('-', start);
      if (dash == std::string::npos) dash = token.size();
      if (dash > start) tokens.push_back(token.substr(start, dash - start));
      start = dash + 1;
    }
  }
  const std::size_t n = tokens.size();
  std::vector<std::string> lemmas(n);
  std::vector<std::string> surfaces(n);
  for (std::size_t i = 0; i < n; ++i) {
    surfaces[i] = ToLowerAscii(tokens[i]);
    lemmas[i] = Lemmatize(tokens[i]);
  }
  const std::size_t max_words = std::max<std::size_t>(1, lexicon.max_trigger_words());
  std::size_t i = 0;
  while (i < n) {
    const std::vector<FrameId> *match = nullptr;
    std::size_t span = 0;
    for (std::size_t len = std::min(max_words, n - i); len >= 1 && !match;
         --len) {
      std::string lemma_key = lemmas[i];
      std::string surface_key = surfaces[i];
      for (std::size_t k = 1; k < len; ++k) {
        lemma_key += ' ';
        lemma_key += lemmas[i + k];
        surface_key += ' ';
        surface_key += surfaces[i + k];
      }
      match = lexicon.Triggers(lemma_key);
      if (match == nullptr) match = lexicon.Triggers(surface_key);
      if (match != nullptr) span = len;
    }
    if (match == nullptr) {
      ++i;
      continue;
    }
    const double share = 1.0 / static_cast<double>(match->size());
    for (FrameId id : *match) counts[id] += share;
    i += span;
  }
  return counts;
}

}  // namespace frameforecast
