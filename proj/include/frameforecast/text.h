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

#ifndef FRAMEFORECAST_TEXT_H_
#define FRAMEFORECAST_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frameforecast {

// Maps UTF-8 text to ASCII with a bundled table (accented Latin letters to
// base letters, typographic quotes and dashes to ASCII punctuation).
// Characters without a mapping and invalid UTF-8 bytes are dropped.
std::string Transliterate(std::string_view text);

inline constexpr std::string_view kChapterTitlesUnlocatable =
    "chapter titles unlocatable";

// Outcome of book cleaning: either the retained text or a rejection reason.
struct CleanedBook {
  std::optional<std::string> text;
  std::string rejection;

  bool accepted() const { return text.has_value(); }
};

// Keeps the text from the first chapter heading up to, but excluding, the
// last chapter heading. This drops front matter, back matter, and the final
// chapter. A heading is a line consisting of optional whitespace, the word
// "chapter" in any case, whitespace, and a number, roman numeral, or word.
// Books with fewer than two headings are rejected.
CleanedBook CleanBook(std::string_view raw);

// Byte offsets of every chapter heading line start, in order.
std::vector<std::size_t> FindChapterHeadings(std::string_view text);

// Rule-based sentence splitter. A sentence ends at '.', '?' or '!' (plus any
// closing quotes or brackets) followed by whitespace and an uppercase letter
// or opening quote, or at the end of the text. Known abbreviations (Mr.,
// Mrs., Dr., St., ...) and single-letter initials do not end a sentence. A
// blank line always ends one. Output sentences are trimmed, have internal
// whitespace collapsed to single spaces, and are never empty.
std::vector<std::string> SplitSentences(std::string_view text);

// Splits a sentence into word and punctuation tokens. Words keep internal
// hyphens and apostrophes; the clitics "'s", "'ll", "'re", "'ve", "'d",
// "'m" and "n't" become separate tokens.
std::vector<std::string> Tokenize(std::string_view sentence);

// True when the text contains something that looks like an HTML tag.
bool LooksLikeHtml(std::string_view text);

}  // namespace frameforecast

#endif  // FRAMEFORECAST_TEXT_H_
