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

#include "frameforecast/representation.h"

#include <cmath>

#include "frameforecast/errors.h"
#include "frameforecast/kernels.h"
#include "json.hpp"

namespace frameforecast {

using nlohmann::json;

IdfModel IdfFromCounts(std::size_t n, std::vector<std::size_t> df) {
  IdfModel model;
  model.n = n;
  model.idf.assign(df.size(), 0.0);
  for (std::size_t t = 0; t < df.size(); ++t) {
    if (df[t] > n) {
      throw ValidationError("df of frame " + std::to_string(t) +
                            " exceeds block count");
    }
    if (df[t] > 0) {
      model.idf[t] =
          std::log(static_cast<double>(n) / static_cast<double>(df[t]));
    }
  }
  model.df = std::move(df);
  return model;
}

IdfModel FitIdf(const std::vector<StoryBlock> &train_blocks,
                std::size_t num_frames) {
  if (train_blocks.empty()) {
    throw ValidationError("cannot fit IDF on an empty training set");
  }
  std::vector<std::size_t> df(num_frames, 0);
  for (const StoryBlock &block : train_blocks) {
    for (const auto &[frame, tf] : block.frame_tf) {
      if (frame < 0 || static_cast<std::size_t>(frame) >= num_frames) {
        throw ValidationError("frame id " + std::to_string(frame) +
                              " out of range");
      }
      if (tf > 0.0) ++df[static_cast<std::size_t>(frame)];
    }
  }
  return IdfFromCounts(train_blocks.size(), std::move(df));
}

FrameVector ZeroVector(std::size_t num_frames, bool normalized) {
  return FrameVector{std::vector<double>(num_frames, 0.0), normalized};
}

double Norm(const std::vector<double> &v) {
  return std::sqrt(kernels::SquaredNorm(v));
}

void NormalizeInPlace(std::vector<double> &weights) {
  const double norm = Norm(weights);
  if (norm > 0.0) {
    for (double &w : weights) w /= norm;
  }
}

FrameVector Vectorize(const StoryBlock &block, const IdfModel &idf,
                      bool normalize) {
  FrameVector v = ZeroVector(idf.num_frames(), normalize);
  for (const auto &[frame, tf] : block.frame_tf) {
    if (frame < 0 || static_cast<std::size_t>(frame) >= idf.num_frames()) {
      throw ValidationError("frame id " + std::to_string(frame) +
                            " out of range");
    }
    v.weights[static_cast<std::size_t>(frame)] =
        tf * idf.idf[static_cast<std::size_t>(frame)];
  }
  if (normalize) NormalizeInPlace(v.weights);
  return v;
}

double Cosine(const std::vector<double> &a, const std::vector<double> &b) {
  if (a.size() != b.size()) {
    throw ValidationError("cosine length mismatch: " +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
  const double na = kernels::SquaredNorm(a);
  const double nb = kernels::SquaredNorm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  // sqrt(na * nb) keeps cosine(a, a) at exactly 1.
  return kernels::Dot(a, b) / std::sqrt(na * nb);
}

double Cosine(const FrameVector &a, const FrameVector &b) {
  return Cosine(a.weights, b.weights);
}

std::vector<Instance> BuildInstances(const BlocksByDoc &blocks_by_doc,
                                     std::size_t w) {
  if (w == 0) throw ValidationError("context window must be positive");
  std::vector<Instance> out;
  for (const auto &[doc_id, blocks] : blocks_by_doc) {
    for (std::size_t i = 0; i + w < blocks.size(); ++i) {
      Instance inst;
      inst.context.assign(blocks.begin() + static_cast<std::ptrdiff_t>(i),
                          blocks.begin() + static_cast<std::ptrdiff_t>(i + w));
      inst.target = blocks[i + w];
      inst.doc_id = doc_id;
      inst.anchor_index = static_cast<int>(i + w - 1);
      out.push_back(std::move(inst));
    }
  }
  return out;
}

std::vector<double> Flatten(const std::vector<FrameVector> &context) {
  std::vector<double> flat;
  for (const FrameVector &v : context) {
    flat.insert(flat.end(), v.weights.begin(), v.weights.end());
  }
  return flat;
}

std::string SerializeSparseVectors(const std::vector<SparseRecord> &records,
                                   const std::string &fingerprint) {
  std::string out;
  for (const SparseRecord &r : records) {
    json weights = json::object();
    for (std::size_t t = 0; t < r.vector.size(); ++t) {
      if (r.vector.weights[t] != 0.0) {
        weights[std::to_string(t)] = r.vector.weights[t];
      }
    }
    json record = {{"doc_id", r.doc_id},
                   {"index", r.index},
                   {"weights", weights},
                   {"normalized", r.vector.normalized}};
    if (!fingerprint.empty()) record["fingerprint"] = fingerprint;
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::vector<SparseRecord> ParseSparseVectors(std::string_view jsonl,
                                             std::size_t num_frames) {
  std::vector<SparseRecord> records;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    ++line_no;
    const std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "line " + std::to_string(line_no);
    try {
      const json j = json::parse(line);
      SparseRecord r;
      r.doc_id = j.at("doc_id").get<std::string>();
      r.index = j.at("index").get<int>();
      r.vector = ZeroVector(num_frames, j.at("normalized").get<bool>());
      for (const auto &[key, value] : j.at("weights").items()) {
        const long id = std::stol(key);
        if (id < 0 || static_cast<std::size_t>(id) >= num_frames) {
          throw ParseError(where + ": frame id " + key + " out of range");
        }
        r.vector.weights[static_cast<std::size_t>(id)] = value.get<double>();
      }
      records.push_back(std::move(r));
    } catch (const json::exception &e) {
      throw ParseError(where + ": " + e.what());
    } catch (const std::logic_error &e) {
      throw ParseError(where + ": bad frame id: " + e.what());
    }
  }
  return records;
}

std::string SerializeIdf(const IdfModel &model, const std::string &fingerprint) {
  json j = {{"n", model.n}, {"df", model.df}};
  if (!fingerprint.empty()) j["fingerprint"] = fingerprint;
  return j.dump() + "\n";
}

IdfModel ParseIdf(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    return IdfFromCounts(j.at("n").get<std::size_t>(),
                         j.at("df").get<std::vector<std::size_t>>());
  } catch (const json::exception &e) {
    throw ParseError(std::string("IDF model: ") + e.what());
  }
}

}  // namespace frameforecast
