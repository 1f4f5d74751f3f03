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

#include "frameforecast/cloud.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "frameforecast/errors.h"
#include "frameforecast/rng.h"
#include "json.hpp"

namespace frameforecast {
namespace {

constexpr int kCaptionHeight = 32;
constexpr int kPanelGap = 16;
// Spiral radius grows by this many pixels per radian.
constexpr double kSpiralPitch = 1.0;
// Largest arc length between successive spiral probes.
constexpr double kSpiralStep = 2.0;

bool GroupOf(PartOfSpeech pos, CloudGroup *group) {
  switch (pos) {
    case PartOfSpeech::kNoun:
      *group = CloudGroup::kNoun;
      return true;
    case PartOfSpeech::kVerb:
      *group = CloudGroup::kVerb;
      return true;
    case PartOfSpeech::kAdjective:
      *group = CloudGroup::kAdjective;
      return true;
    default:
      return false;
  }
}

std::string Num(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

std::string XmlEscape(const std::string &text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

bool Overlaps(const PlacedWord &a, double x, double y, double w, double h) {
  const double ix = std::min(a.x + a.w, x + w) - std::max(a.x, x);
  const double iy = std::min(a.y + a.h, y + h) - std::max(a.y, y);
  return ix > 0.0 && iy > 0.0;
}

std::string Panel(const CloudLayout &layout, CloudGroup group, int offset_x) {
  static const char *const kCaptions[] = {"Nouns", "Verbs", "Adjectives"};
  const auto &words = layout.groups[static_cast<std::size_t>(group)];
  std::string out = "<g class=\"panel\" id=\"" +
                    std::string(CloudGroupName(group)) +
                    "\" transform=\"translate(" + std::to_string(offset_x) +
                    ",0)\">\n";
  out += "<text class=\"caption\" x=\"" + std::to_string(layout.canvas_w / 2) +
         "\" y=\"22\" text-anchor=\"middle\" font-size=\"18\">" +
         kCaptions[static_cast<std::size_t>(group)] + "</text>\n";
  out += "<rect x=\"0\" y=\"" + std::to_string(kCaptionHeight) +
         "\" width=\"" + std::to_string(layout.canvas_w) + "\" height=\"" +
         std::to_string(layout.canvas_h) +
         "\" fill=\"none\" stroke=\"rgb(200,200,200)\"/>\n";
  for (const PlacedWord &p : words) {
    const int s = p.entry.shade;
    // Baseline sits at the bottom of the em box inside the line box.
    const double baseline =
        kCaptionHeight + p.y + p.h - 0.2 * p.entry.font_px;
    out += "<text class=\"lu\" x=\"" + Num(p.x) + "\" y=\"" + Num(baseline) +
           "\" font-size=\"" + std::to_string(p.entry.font_px) +
           "\" fill=\"rgb(" + std::to_string(s) + "," + std::to_string(s) +
           "," + std::to_string(s) + ")\">" + XmlEscape(p.entry.word) +
           "</text>\n";
  }
  out += "</g>\n";
  return out;
}

std::string SvgOpen(int width, int height, const std::string &fingerprint) {
  std::string head = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!fingerprint.empty()) head += "<!-- fingerprint=" + fingerprint + " -->\n";
  return head + "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" font-family=\"monospace\">\n";
}

}  // namespace

const char *CloudGroupName(CloudGroup group) {
  switch (group) {
    case CloudGroup::kNoun: return "noun";
    case CloudGroup::kVerb: return "verb";
    case CloudGroup::kAdjective: return "adjective";
  }
  return "unknown";
}

std::vector<CloudEntry> SelectCloudWords(const FrameVector &v,
                                         const FrameLexicon &lexicon,
                                         uint64_t seed,
                                         const CloudOptions &options) {
  if (v.size() != lexicon.size()) {
    throw ValidationError("vector width " + std::to_string(v.size()) +
                          " does not match lexicon size " +
                          std::to_string(lexicon.size()));
  }
  if (options.min_font <= 0 || options.max_font < options.min_font) {
    throw ValidationError("font range must satisfy 0 < min <= max");
  }
  struct Candidate {
    FrameId frame;
    double weight;
    std::vector<std::size_t> eligible;  // LU indices
  };
  std::vector<Candidate> candidates;
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (!(v.weights[t] > 0.0)) continue;
    const Frame &frame = lexicon.frame(static_cast<FrameId>(t));
    Candidate c{static_cast<FrameId>(t), v.weights[t], {}};
    CloudGroup unused;
    for (std::size_t k = 0; k < frame.lexical_units.size(); ++k) {
      if (GroupOf(frame.lexical_units[k].pos, &unused)) c.eligible.push_back(k);
    }
    if (!c.eligible.empty()) candidates.push_back(std::move(c));
  }
  if (candidates.empty()) throw ValidationError("nothing to render");
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate &a, const Candidate &b) {
                     if (a.weight != b.weight) return a.weight > b.weight;
                     return a.frame < b.frame;
                   });
  if (candidates.size() > options.top_k) candidates.resize(options.top_k);

  const double w_max = candidates.front().weight;
  const double w_min = candidates.back().weight;
  Rng rng(seed);
  std::vector<CloudEntry> entries;
  for (const Candidate &c : candidates) {
    const double frac = w_max > w_min ? (c.weight - w_min) / (w_max - w_min) : 1.0;
    const int font = static_cast<int>(std::lround(
        options.min_font + frac * (options.max_font - options.min_font)));
    const int shade = static_cast<int>(std::lround(
        options.light_shade - frac * (options.light_shade - options.dark_shade)));
    const Frame &frame = lexicon.frame(c.frame);
    const std::size_t take = std::min(options.max_lus, c.eligible.size());
    for (std::size_t pick : rng.SampleWithoutReplacement(c.eligible.size(), take)) {
      const LexicalUnit &lu = frame.lexical_units[c.eligible[pick]];
      CloudEntry entry;
      entry.word = lu.lemma;
      entry.frame = c.frame;
      entry.weight = c.weight;
      GroupOf(lu.pos, &entry.group);
      entry.font_px = font;
      entry.shade = shade;
      entries.push_back(std::move(entry));
    }
  }
  return entries;
}

double TextWidth(const std::string &word, int font_px) {
  std::size_t chars = 0;
  for (unsigned char c : word) {
    if ((c & 0xc0) != 0x80) ++chars;
  }
  return 0.6 * font_px * static_cast<double>(chars);
}

double TextHeight(int font_px) { return 1.2 * font_px; }

CloudLayout LayoutCloud(const std::vector<CloudEntry> &entries, int canvas_w,
                        int canvas_h, uint64_t seed) {
  if (entries.empty()) throw ValidationError("no cloud entries to lay out");
  if (canvas_w <= 0 || canvas_h <= 0) {
    throw ValidationError("canvas size must be positive");
  }
  CloudLayout layout;
  layout.canvas_w = canvas_w;
  layout.canvas_h = canvas_h;
  Rng rng(seed);
  const double start_angle = rng.Uniform(0.0, 2.0 * std::numbers::pi);

  std::vector<const CloudEntry *> order;
  for (const CloudEntry &e : entries) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(),
                   [](const CloudEntry *a, const CloudEntry *b) {
                     if (a->weight != b->weight) return a->weight > b->weight;
                     return a->frame < b->frame;
                   });

  const double cx = canvas_w / 2.0;
  const double cy = canvas_h / 2.0;
  const double max_radius = std::hypot(cx, cy);
  for (const CloudEntry *e : order) {
    auto &placed = layout.groups[static_cast<std::size_t>(e->group)];
    const double w = TextWidth(e->word, e->font_px);
    const double h = TextHeight(e->font_px);
    bool done = false;
    for (double t = 0.0; kSpiralPitch * t <= max_radius;) {
      const double r = kSpiralPitch * t;
      const double x = cx + r * std::cos(start_angle + t) - w / 2.0;
      const double y = cy + r * std::sin(start_angle + t) - h / 2.0;
      if (x >= 0.0 && y >= 0.0 && x + w <= canvas_w && y + h <= canvas_h &&
          std::none_of(placed.begin(), placed.end(), [&](const PlacedWord &p) {
            return Overlaps(p, x, y, w, h);
          })) {
        placed.push_back({*e, x, y, w, h});
        done = true;
        break;
      }
      t += std::min(0.5, kSpiralStep / std::max(r, 1.0));
    }
    if (!done) {
      throw ValidationError("cannot place word \"" + e->word + "\" at " +
                            std::to_string(e->font_px) + "px on a " +
                            std::to_string(canvas_w) + "x" +
                            std::to_string(canvas_h) + " canvas");
    }
  }
  return layout;
}

std::string RenderSvg(const CloudLayout &layout,
                      const std::string &fingerprint) {
  const int width = 3 * layout.canvas_w + 2 * kPanelGap;
  const int height = layout.canvas_h + kCaptionHeight;
  std::string out = SvgOpen(width, height, fingerprint);
  for (std::size_t g = 0; g < kNumCloudGroups; ++g) {
    out += Panel(layout, static_cast<CloudGroup>(g),
                 static_cast<int>(g) * (layout.canvas_w + kPanelGap));
  }
  out += "</svg>\n";
  return out;
}

std::string RenderGroupSvg(const CloudLayout &layout, CloudGroup group,
                           const std::string &fingerprint) {
  std::string out =
      SvgOpen(layout.canvas_w, layout.canvas_h + kCaptionHeight, fingerprint);
  out += Panel(layout, group, 0);
  out += "</svg>\n";
  return out;
}

std::string LayoutJson(const CloudLayout &layout,
                       const std::string &fingerprint) {
  nlohmann::json words = nlohmann::json::array();
  for (std::size_t g = 0; g < kNumCloudGroups; ++g) {
    for (const PlacedWord &p : layout.groups[g]) {
      words.push_back({{"word", p.entry.word},
                       {"frame", p.entry.frame},
                       {"weight", p.entry.weight},
                       {"x", p.x},
                       {"y", p.y},
                       {"w", p.w},
                       {"h", p.h},
                       {"font_px", p.entry.font_px},
                       {"shade", p.entry.shade},
                       {"group", CloudGroupName(p.entry.group)}});
    }
  }
  const nlohmann::json out = {{"fingerprint", fingerprint},
                              {"canvas_w", layout.canvas_w},
                              {"canvas_h", layout.canvas_h},
                              {"words", words}};
  return out.dump(1) + "\n";
}

}  // namespace frameforecast
