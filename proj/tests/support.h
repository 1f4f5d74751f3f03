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

// Shared fixtures and independent oracles for the unit and acceptance tests.
// Nothing here calls into the library's numeric code paths.
#ifndef FRAMEFORECAST_TESTS_SUPPORT_H_
#define FRAMEFORECAST_TESTS_SUPPORT_H_

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "frameforecast/corpus.h"
#include "frameforecast/lexicon.h"

namespace testsupport {

inline std::string DataPath(const std::string &relative) {
  return std::string(FRAMEFORECAST_DATA_DIR) + "/" + relative;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path TempDir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("frameforecast_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline double OracleDot(const std::vector<double> &a,
                        const std::vector<double> &b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += static_cast<long double>(a[i]) * b[i];
  }
  return static_cast<double>(s);
}

inline double OracleCosine(const std::vector<double> &a,
                           const std::vector<double> &b) {
  const long double na = std::sqrt(static_cast<long double>(OracleDot(a, a)));
  const long double nb = std::sqrt(static_cast<long double>(OracleDot(b, b)));
  if (na == 0.0L || nb == 0.0L) return 0.0;
  return static_cast<double>(OracleDot(a, b) / (na * nb));
}

// TF-IDF straight from the definitions: df counts blocks with a positive
// count, idf = ln(n/df) or 0, weight = tf * idf, optionally L2-scaled.
inline std::vector<std::vector<double>> OracleTfIdf(
    const std::vector<std::map<int, double>> &train,
    const std::vector<std::map<int, double>> &blocks, int num_frames,
    bool normalize) {
  std::vector<double> idf(num_frames, 0.0);
  for (int t = 0; t < num_frames; ++t) {
    int df = 0;
    for (const auto &b : train) {
      auto it = b.find(t);
      if (it != b.end() && it->second > 0.0) ++df;
    }
    if (df > 0) idf[t] = std::log(static_cast<double>(train.size()) / df);
  }
  std::vector<std::vector<double>> out;
  for (const auto &b : blocks) {
    std::vector<double> v(num_frames, 0.0);
    for (int t = 0; t < num_frames; ++t) {
      auto it = b.find(t);
      if (it != b.end()) v[t] = it->second * idf[t];
    }
    if (normalize) {
      double ss = 0.0;
      for (double x : v) ss += x * x;
      if (ss > 0.0) {
        const double n = std::sqrt(ss);
        for (double &x : v) x /= n;
      }
    }
    out.push_back(v);
  }
  return out;
}

// Minimal XML well-formedness check: balanced tags, quoted attributes,
// known entities. Counts elements by name.
struct XmlCheck {
  bool ok = false;
  std::string error;
  std::map<std::string, int> element_counts;
  std::vector<std::string> text_of_lu;  // text content of class="lu" nodes
};

inline XmlCheck CheckXml(const std::string &doc) {
  XmlCheck r;
  std::vector<std::string> stack;
  std::size_t i = 0;
  bool in_lu = false;
  std::string lu_text;
  auto fail = [&](const std::string &msg) {
    r.ok = false;
    r.error = msg + " at byte " + std::to_string(i);
    return r;
  };
  bool seen_root = false;
  while (i < doc.size()) {
    if (doc[i] != '<') {
      if (doc[i] == '&') {
        const std::size_t semi = doc.find(';', i);
        if (semi == std::string::npos) return fail("bad entity");
        const std::string ent = doc.substr(i, semi - i + 1);
        if (ent != "&amp;" && ent != "&lt;" && ent != "&gt;" &&
            ent != "&quot;" && ent != "&apos;") {
          return fail("unknown entity " + ent);
        }
      }
      if (stack.empty() && doc[i] != '\n' && doc[i] != ' ') {
        return fail("text outside root");
      }
      if (in_lu) lu_text += doc[i];
      ++i;
      continue;
    }
    if (doc.compare(i, 5, "<?xml") == 0) {
      const std::size_t end = doc.find("?>", i);
      if (end == std::string::npos) return fail("unterminated declaration");
      i = end + 2;
      continue;
    }
    if (doc.compare(i, 4, "<!--") == 0) {
      const std::size_t end = doc.find("-->", i);
      if (end == std::string::npos) return fail("unterminated comment");
      i = end + 3;
      continue;
    }
    const std::size_t end = doc.find('>', i);
    if (end == std::string::npos) return fail("unterminated tag");
    std::string tag = doc.substr(i + 1, end - i - 1);
    i = end + 1;
    if (!tag.empty() && tag[0] == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return fail("mismatched </" + name + ">");
      stack.pop_back();
      if (in_lu && name == "text") {
        r.text_of_lu.push_back(lu_text);
        in_lu = false;
      }
      continue;
    }
    const bool self_closing = !tag.empty() && tag.back() == '/';
    if (self_closing) tag.pop_back();
    const std::size_t sp = tag.find_first_of(" \n\t");
    const std::string name = tag.substr(0, sp);
    if (name.empty()) return fail("empty tag name");
    // Attributes: name="value" pairs.
    std::size_t p = sp == std::string::npos ? tag.size() : sp;
    while (p < tag.size()) {
      while (p < tag.size() && std::isspace(static_cast<unsigned char>(tag[p]))) ++p;
      if (p >= tag.size()) break;
      const std::size_t eq = tag.find('=', p);
      if (eq == std::string::npos || eq + 1 >= tag.size() || tag[eq + 1] != '"') {
        return fail("bad attribute in <" + name + ">");
      }
      const std::size_t close = tag.find('"', eq + 2);
      if (close == std::string::npos) return fail("unterminated attribute");
      if (tag.substr(eq + 2, close - eq - 2).find('<') != std::string::npos) {
        return fail("'<' in attribute");
      }
      p = close + 1;
    }
    if (stack.empty()) {
      if (seen_root) return fail("second root element");
      seen_root = true;
    }
    ++r.element_counts[name];
    if (!self_closing) {
      stack.push_back(name);
      if (name == "text" && tag.find("class=\"lu\"") != std::string::npos) {
        in_lu = true;
        lu_text.clear();
      }
    }
  }
  if (!stack.empty()) return fail("unclosed <" + stack.back() + ">");
  if (!seen_root) return fail("no root element");
  r.ok = true;
  return r;
}

// Small hand-built lexicon used across the unit tests.
inline frameforecast::FrameLexicon TinyLexicon() {
  using frameforecast::Frame;
  using frameforecast::LexicalUnit;
  using frameforecast::PartOfSpeech;
  std::vector<Frame> frames = {
      {0, "Kinship",
       {{"father", PartOfSpeech::kNoun, false},
        {"mother", PartOfSpeech::kNoun, false}}},
      {0, "State_continue", {{"remain", PartOfSpeech::kVerb, false}}},
      {0, "Cause_to_start",
       {{"spark", PartOfSpeech::kVerb, false},
        {"bring about", PartOfSpeech::kVerb, true}}},
      {0, "Fire_emanation", {{"spark", PartOfSpeech::kNoun, false}}},
      {0, "Bringing", {{"bring", PartOfSpeech::kVerb, false}}},
  };
  return frameforecast::FrameLexicon(std::move(frames));
}

// One sentence per entry; each sentence evokes the listed frames once.
inline frameforecast::Document MakeDoc(
    const std::string &id, const std::vector<std::vector<int>> &sentences) {
  frameforecast::Document doc;
  doc.id = id;
  for (const auto &frames : sentences) {
    frameforecast::Sentence s;
    s.text = "x";
    for (int f : frames) s.frame_counts[f] += 1.0;
    doc.sentences.push_back(s);
  }
  return doc;
}

// Documents whose sentence t evokes frames (offset + t + j) mod num_frames
// for j < width. Every frame is equally common, so IDF is uniform and the
// cosine of sentences t and t+i is max(0, width - i) / width.
inline std::vector<frameforecast::Document> DriftCorpus(int docs, int sentences,
                                                        int num_frames,
                                                        int width) {
  std::vector<frameforecast::Document> out;
  for (int d = 0; d < docs; ++d) {
    std::vector<std::vector<int>> s;
    for (int t = 0; t < sentences; ++t) {
      std::vector<int> frames;
      for (int j = 0; j < width; ++j) frames.push_back((d * 7 + t + j) % num_frames);
      s.push_back(frames);
    }
    char id[16];
    std::snprintf(id, sizeof(id), "drift%03d", d);
    out.push_back(MakeDoc(id, s));
  }
  return out;
}

// Document d repeats the same two frames (d mod 4, 4 + d mod 3) in every
// sentence, so every document shares its frames with some others.
inline std::vector<frameforecast::Document> ConstantCorpus(int docs,
                                                           int sentences) {
  std::vector<frameforecast::Document> out;
  for (int d = 0; d < docs; ++d) {
    char id[16];
    std::snprintf(id, sizeof(id), "const%03d", d);
    out.push_back(MakeDoc(id, std::vector<std::vector<int>>(
                                  sentences, std::vector<int>{d % 4, 4 + d % 3})));
  }
  return out;
}

}  // namespace testsupport

#endif  // FRAMEFORECAST_TESTS_SUPPORT_H_
