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

#ifndef FRAMEFORECAST_CLOUD_H_
#define FRAMEFORECAST_CLOUD_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "frameforecast/lexicon.h"
#include "frameforecast/representation.h"

namespace frameforecast {

enum class CloudGroup { kNoun = 0, kVerb = 1, kAdjective = 2 };
inline constexpr std::size_t kNumCloudGroups = 3;
const char *CloudGroupName(CloudGroup group);

struct CloudEntry {
  std::string word;
  FrameId frame = 0;
  double weight = 0.0;
  CloudGroup group = CloudGroup::kNoun;
  int font_px = 0;
  int shade = 0;  // grey level; 0 is black
};

struct CloudOptions {
  std::size_t top_k = 30;
  std::size_t max_lus = 3;
  int min_font = 12;
  int max_font = 48;
  int dark_shade = 0;
  int light_shade = 180;
};

// Ranks frames by weight (descending, ties by id), keeping only frames with
// a positive weight and at least one noun, verb, or adjective LU, and takes
// the first top_k. Each contributes up to max_lus of those LUs, drawn
// without replacement. Font size and shade are linear in weight between the
// lightest and heaviest selected frame; a single weight maps to max_font
// and dark_shade.
// Throws ValidationError("nothing to render") when no frame qualifies.
std::vector<CloudEntry> SelectCloudWords(const FrameVector &v,
                                         const FrameLexicon &lexicon,
                                         uint64_t seed,
                                         const CloudOptions &options = {});

struct PlacedWord {
  CloudEntry entry;
  double x = 0.0;  // top-left corner
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
};

struct CloudLayout {
  int canvas_w = 0;
  int canvas_h = 0;
  std::array<std::vector<PlacedWord>, kNumCloudGroups> groups;
};

// Monospace metrics: 0.6 * font_px per character, 1.2 * font_px tall.
double TextWidth(const std::string &word, int font_px);
double TextHeight(int font_px);

// Places each group on its own canvas, heaviest word first, walking an
// Archimedean spiral out from the centre until the box fits inside the
// canvas without overlapping an earlier box. The seed picks the spiral's
// starting angle.
// Throws ValidationError on empty entries or a word that never fits.
CloudLayout LayoutCloud(const std::vector<CloudEntry> &entries, int canvas_w,
                        int canvas_h, uint64_t seed);

// Three captioned panels side by side. A non-empty fingerprint is written
// as an XML comment.
std::string RenderSvg(const CloudLayout &layout,
                      const std::string &fingerprint = "");
// A single group's panel as a standalone document.
std::string RenderGroupSvg(const CloudLayout &layout, CloudGroup group,
                           const std::string &fingerprint = "");
// [{word, frame, weight, x, y, font_px, shade, group}]
std::string LayoutJson(const CloudLayout &layout, const std::string &fingerprint);

}  // namespace frameforecast

#endif  // FRAMEFORECAST_CLOUD_H_
