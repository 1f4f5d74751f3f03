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

#ifndef FRAMEFORECAST_REPRESENTATION_H_
#define FRAMEFORECAST_REPRESENTATION_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "frameforecast/corpus.h"

namespace frameforecast {

// Block-level inverse document frequency over frames.
// idf[t] = ln(n / df[t]) when df[t] > 0, else 0.
struct IdfModel {
  std::size_t n = 0;
  std::vector<std::size_t> df;
  std::vector<double> idf;

  std::size_t num_frames() const { return df.size(); }
};

// Throws ValidationError on an empty block list or a frame id >= num_frames.
IdfModel FitIdf(const std::vector<StoryBlock> &train_blocks,
                std::size_t num_frames);

// Rebuilds idf from n and df. Throws ValidationError when df[t] > n.
IdfModel IdfFromCounts(std::size_t n, std::vector<std::size_t> df);

// Dense TF-IDF vector over frames.
struct FrameVector {
  std::vector<double> weights;
  bool normalized = false;

  std::size_t size() const { return weights.size(); }
};

FrameVector ZeroVector(std::size_t num_frames, bool normalized = true);

// weights[t] = tf[t] * idf[t], optionally scaled to unit norm.
FrameVector Vectorize(const StoryBlock &block, const IdfModel &idf,
                      bool normalize = true);

// Scales to unit norm in place; a zero vector stays zero.
void NormalizeInPlace(std::vector<double> &weights);

double Norm(const std::vector<double> &v);

// dot(a, b) / (|a| |b|), or 0 when either norm is 0.
// Throws ValidationError on a length mismatch.
double Cosine(const FrameVector &a, const FrameVector &b);
double Cosine(const std::vector<double> &a, const std::vector<double> &b);

struct Instance {
  std::vector<FrameVector> context;  // chronological
  FrameVector target;
  std::string doc_id;
  int anchor_index = 0;  // index of the last context block
};

using BlocksByDoc = std::map<std::string, std::vector<FrameVector>>;

// For each document with B blocks emits B - w instances, ordered by
// (doc id, anchor). Throws ValidationError when w is zero.
std::vector<Instance> BuildInstances(const BlocksByDoc &blocks_by_doc,
                                     std::size_t w);

// Concatenates the context vectors in chronological order.
std::vector<double> Flatten(const std::vector<FrameVector> &context);

// Sparse vector JSONL record.
struct SparseRecord {
  std::string doc_id;
  int index = 0;
  FrameVector vector;
};

// A non-empty fingerprint is added to every record.
std::string SerializeSparseVectors(const std::vector<SparseRecord> &records,
                                   const std::string &fingerprint = "");
// num_frames fixes the dense width; ids >= num_frames are a ParseError.
std::vector<SparseRecord> ParseSparseVectors(std::string_view jsonl,
                                             std::size_t num_frames);

std::string SerializeIdf(const IdfModel &model,
                         const std::string &fingerprint = "");
IdfModel ParseIdf(std::string_view json_text);

}  // namespace frameforecast

#endif  // FRAMEFORECAST_REPRESENTATION_H_
