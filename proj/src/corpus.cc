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

#include "frameforecast/corpus.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "frameforecast/errors.h"
#include "frameforecast/rng.h"
#include "frameforecast/text.h"
#include "json.hpp"

namespace frameforecast {
namespace {

using nlohmann::json;

// Calls fn(line_number, line) for each non-blank line.
template <typename Fn>
void ForEachLine(std::string_view text, Fn fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      fn(line_no, line);
    }
    pos = end + 1;
  }
}

double RequireWeight(const json &value, const std::string &where) {
  if (!value.is_number()) throw ParseError(where + ": weight must be a number");
  const double w = value.get<double>();
  if (!std::isfinite(w) || w < 0.0) {
    throw ParseError(where + ": weight must be finite and non-negative");
  }
  return w;
}

}  // namespace

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return buffer.str();
}

void WriteFile(const std::string &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("cannot write " + path);
}

IngestResult IngestText(const std::string &id, std::string_view raw,
                        const FrameLexicon &lexicon,
                        const IngestOptions &options) {
  if (raw.size() < options.min_bytes) {
    return {std::nullopt, "smaller than " + std::to_string(options.min_bytes) +
                              " bytes"};
  }
  if (options.reject_html && LooksLikeHtml(raw)) {
    return {std::nullopt, "contains HTML"};
  }
  std::string text = Transliterate(raw);
  if (options.clean_chapters) {
    CleanedBook cleaned = CleanBook(text);
    if (!cleaned.accepted()) return {std::nullopt, cleaned.rejection};
    text = std::move(*cleaned.text);
  }
  Document doc;
  doc.id = id;
  for (std::string &sentence_text : SplitSentences(text)) {
    Sentence sentence;
    sentence.tokens = Tokenize(sentence_text);
    sentence.frame_counts = TagSentence(sentence.tokens, lexicon);
    sentence.text = std::move(sentence_text);
    doc.sentences.push_back(std::move(sentence));
  }
  if (doc.sentences.empty()) return {std::nullopt, "no sentences"};
  return {std::move(doc), ""};
}

IngestResult IngestFile(const std::string &path, const FrameLexicon &lexicon,
                        const IngestOptions &options) {
  const std::string raw = ReadFile(path);
  return IngestText(std::filesystem::path(path).stem().string(), raw, lexicon,
                    options);
}

std::vector<StoryBlock> SegmentBlocks(const Document &doc,
                                      std::size_t block_size) {
  if (block_size == 0) throw ValidationError("block size must be positive");
  std::vector<StoryBlock> blocks;
  const std::size_t count = doc.sentences.size() / block_size;
  blocks.reserve(count);
  for (std::size_t b = 0; b < count; ++b) {
    StoryBlock block;
    block.doc_id = doc.id;
    block.index = static_cast<int>(b);
    block.sentence_begin = b * block_size;
    block.sentence_end = block.sentence_begin + block_size;
    for (std::size_t s = block.sentence_begin; s < block.sentence_end; ++s) {
      for (const auto &[frame, weight] : doc.sentences[s].frame_counts) {
        block.frame_tf[frame] += weight;
      }
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::vector<Document> ParseParsedCorpus(std::string_view jsonl,
                                        const FrameLexicon &lexicon) {
  std::vector<Document> docs;
  std::set<std::string> seen;
  ForEachLine(jsonl, [&](std::size_t line_no, std::string_view line) {
    const std::string where = "line " + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(where + ": malformed JSON: " + e.what());
    }
    if (!record.is_object() || !record.contains("id") ||
        !record["id"].is_string()) {
      throw ParseError(where + ": expected an object with string field \"id\"");
    }
    if (!record.contains("sentences") || !record["sentences"].is_array()) {
      throw ParseError(where + ": expected array field \"sentences\"");
    }
    Document doc;
    doc.id = record["id"].get<std::string>();
    if (!seen.insert(doc.id).second) {
      throw ValidationError(where + ": duplicate document id \"" + doc.id +
                            "\"");
    }
    auto resolve = [&](const std::string &name) {
      auto id = lexicon.FindFrame(name);
      if (!id) {
        throw ValidationError(where + ": unknown frame name \"" + name + "\"");
      }
      return *id;
    };
    for (const json &s : record["sentences"]) {
      if (!s.is_object()) throw ParseError(where + ": sentence must be an object");
      Sentence sentence;
      if (s.contains("text")) {
        if (!s["text"].is_string()) {
          throw ParseError(where + ": sentence text must be a string");
        }
        sentence.text = s["text"].get<std::string>();
        sentence.tokens = Tokenize(sentence.text);
      }
      const bool has_frames = s.contains("frames");
      const bool has_weights = s.contains("frame_weights");
      if (has_frames && has_weights) {
        throw ParseError(where +
                         ": sentence has both \"frames\" and \"frame_weights\"");
      }
      if (has_frames) {
        if (!s["frames"].is_array()) {
          throw ParseError(where + ": \"frames\" must be an array");
        }
        for (const json &name : s["frames"]) {
          if (!name.is_string()) {
            throw ParseError(where + ": frame names must be strings");
          }
          sentence.frame_counts[resolve(name.get<std::string>())] += 1.0;
        }
      } else if (has_weights) {
        if (!s["frame_weights"].is_object()) {
          throw ParseError(where + ": \"frame_weights\" must be an object");
        }
        for (const auto &[name, value] : s["frame_weights"].items()) {
          const double w = RequireWeight(value, where + ": frame " + name);
          const FrameId id = resolve(name);
          if (w > 0.0) sentence.frame_counts[id] += w;
        }
      }
      doc.sentences.push_back(std::move(sentence));
    }
    docs.push_back(std::move(doc));
  });
  return docs;
}

std::vector<Document> ImportParsed(const std::string &path,
                                   const FrameLexicon &lexicon) {
  return ParseParsedCorpus(ReadFile(path), lexicon);
}

std::string SerializeParsedCorpus(const std::vector<Document> &docs,
                                  const FrameLexicon &lexicon,
                                  const std::string &fingerprint) {
  std::string out;
  for (const Document &doc : docs) {
    json sentences = json::array();
    for (const Sentence &s : doc.sentences) {
      json weights = json::object();
      for (const auto &[frame, weight] : s.frame_counts) {
        weights[lexicon.frame(frame).name] = weight;
      }
      sentences.push_back({{"text", s.text}, {"frame_weights", weights}});
    }
    json record = {{"id", doc.id}, {"sentences", sentences}};
    if (!fingerprint.empty()) record["fingerprint"] = fingerprint;
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::string SerializeBlocks(const std::vector<StoryBlock> &blocks,
                            const std::string &fingerprint) {
  std::string out;
  for (const StoryBlock &block : blocks) {
    json tf = json::object();
    for (const auto &[frame, weight] : block.frame_tf) {
      tf[std::to_string(frame)] = weight;
    }
    json record = {{"doc_id", block.doc_id}, {"index", block.index}, {"tf", tf}};
    if (!fingerprint.empty()) record["fingerprint"] = fingerprint;
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::vector<StoryBlock> ParseBlocks(std::string_view jsonl) {
  std::vector<StoryBlock> blocks;
  ForEachLine(jsonl, [&](std::size_t line_no, std::string_view line) {
    const std::string where = "line " + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
      StoryBlock block;
      block.doc_id = record.at("doc_id").get<std::string>();
      block.index = record.at("index").get<int>();
      for (const auto &[key, value] : record.at("tf").items()) {
        const FrameId id = std::stoi(key);
        if (id < 0) throw ParseError(where + ": negative frame id");
        block.frame_tf[id] = RequireWeight(value, where + ": frame " + key);
      }
      blocks.push_back(std::move(block));
    } catch (const json::exception &e) {
      throw ParseError(where + ": " + e.what());
    } catch (const std::logic_error &e) {
      throw ParseError(where + ": bad frame id: " + e.what());
    }
  });
  return blocks;
}

CorpusSplit SplitCorpus(std::vector<std::string> doc_ids,
                        const SplitRatios &ratios, uint64_t seed) {
  const double parts[3] = {ratios.train, ratios.valid, ratios.test};
  int nonzero = 0;
  for (double r : parts) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw ValidationError("split ratios must be finite and non-negative");
    }
    if (r > 0.0) ++nonzero;
  }
  if (std::abs(parts[0] + parts[1] + parts[2] - 1.0) > 1e-9) {
    throw ValidationError("split ratios must sum to 1");
  }
  std::sort(doc_ids.begin(), doc_ids.end());
  if (std::adjacent_find(doc_ids.begin(), doc_ids.end()) != doc_ids.end()) {
    throw ValidationError("duplicate document ids in split");
  }
  const std::size_t n = doc_ids.size();
  if (n < static_cast<std::size_t>(nonzero)) {
    throw ValidationError("split needs at least " + std::to_string(nonzero) +
                          " documents, got " + std::to_string(n));
  }
  Rng rng(seed);
  rng.Shuffle(doc_ids);

  std::size_t sizes[3] = {0, 0, 0};
  int first = 0;
  while (parts[first] == 0.0) ++first;
  std::size_t assigned = 0;
  for (int k = 0; k < 3; ++k) {
    if (k == first || parts[k] == 0.0) continue;
    sizes[k] = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * parts[k] + 1e-9));
    sizes[k] = std::max<std::size_t>(sizes[k], 1);
    assigned += sizes[k];
  }
  if (assigned >= n) {
    throw ValidationError("split leaves no documents for the first part");
  }
  sizes[first] = n - assigned;

  CorpusSplit split;
  std::vector<std::string> *outs[3] = {&split.train, &split.valid, &split.test};
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    outs[k]->assign(doc_ids.begin() + static_cast<std::ptrdiff_t>(pos),
                    doc_ids.begin() + static_cast<std::ptrdiff_t>(pos + sizes[k]));
    pos += sizes[k];
  }
  return split;
}

}  // namespace frameforecast
