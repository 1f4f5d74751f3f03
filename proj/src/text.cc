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

#include "frameforecast/text.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "frameforecast/lemmatizer.h"

namespace frameforecast {
namespace {

const std::unordered_map<uint32_t, std::string_view> &TransliterationTable() {
  static const auto *table = new std::unordered_map<uint32_t, std::string_view>{
      // Latin-1 supplement
      {0x00A0, " "}, {0x00A1, "!"}, {0x00A2, "c"}, {0x00A3, "GBP"},
      {0x00A5, "JPY"}, {0x00A7, "SS"}, {0x00A9, "(c)"}, {0x00AB, "<<"},
      {0x00AD, "-"}, {0x00AE, "(r)"}, {0x00B0, "deg"}, {0x00B1, "+-"},
      {0x00B2, "2"}, {0x00B3, "3"}, {0x00B4, "'"}, {0x00B5, "u"},
      {0x00B6, "P"}, {0x00B7, "*"}, {0x00B9, "1"}, {0x00BB, ">>"},
      {0x00BC, " 1/4"}, {0x00BD, " 1/2"}, {0x00BE, " 3/4"}, {0x00BF, "?"},
      {0x00C0, "A"}, {0x00C1, "A"}, {0x00C2, "A"}, {0x00C3, "A"},
      {0x00C4, "A"}, {0x00C5, "A"}, {0x00C6, "AE"}, {0x00C7, "C"},
      {0x00C8, "E"}, {0x00C9, "E"}, {0x00CA, "E"}, {0x00CB, "E"},
      {0x00CC, "I"}, {0x00CD, "I"}, {0x00CE, "I"}, {0x00CF, "I"},
      {0x00D0, "D"}, {0x00D1, "N"}, {0x00D2, "O"}, {0x00D3, "O"},
      {0x00D4, "O"}, {0x00D5, "O"}, {0x00D6, "O"}, {0x00D7, "x"},
      {0x00D8, "O"}, {0x00D9, "U"}, {0x00DA, "U"}, {0x00DB, "U"},
      {0x00DC, "U"}, {0x00DD, "Y"}, {0x00DE, "Th"}, {0x00DF, "ss"},
      {0x00E0, "a"}, {0x00E1, "a"}, {0x00E2, "a"}, {0x00E3, "a"},
      {0x00E4, "a"}, {0x00E5, "a"}, {0x00E6, "ae"}, {0x00E7, "c"},
      {0x00E8, "e"}, {0x00E9, "e"}, {0x00EA, "e"}, {0x00EB, "e"},
      {0x00EC, "i"}, {0x00ED, "i"}, {0x00EE, "i"}, {0x00EF, "i"},
      {0x00F0, "d"}, {0x00F1, "n"}, {0x00F2, "o"}, {0x00F3, "o"},
      {0x00F4, "o"}, {0x00F5, "o"}, {0x00F6, "o"}, {0x00F7, "/"},
      {0x00F8, "o"}, {0x00F9, "u"}, {0x00FA, "u"}, {0x00FB, "u"},
      {0x00FC, "u"}, {0x00FD, "y"}, {0x00FE, "th"}, {0x00FF, "y"},
      // Latin extended-A (common letters)
      {0x0100, "A"}, {0x0101, "a"}, {0x0102, "A"}, {0x0103, "a"},
      {0x0104, "A"}, {0x0105, "a"}, {0x0106, "C"}, {0x0107, "c"},
      {0x010C, "C"}, {0x010D, "c"}, {0x010E, "D"}, {0x010F, "d"},
      {0x0110, "D"}, {0x0111, "d"}, {0x0112, "E"}, {0x0113, "e"},
      {0x0116, "E"}, {0x0117, "e"}, {0x0118, "E"}, {0x0119, "e"},
      {0x011A, "E"}, {0x011B, "e"}, {0x011E, "G"}, {0x011F, "g"},
      {0x0122, "G"}, {0x0123, "g"}, {0x012A, "I"}, {0x012B, "i"},
      {0x012E, "I"}, {0x012F, "i"}, {0x0130, "I"}, {0x0131, "i"},
      {0x0136, "K"}, {0x0137, "k"}, {0x0139, "L"}, {0x013A, "l"},
      {0x013B, "L"}, {0x013C, "l"}, {0x013D, "L"}, {0x013E, "l"},
      {0x0141, "L"}, {0x0142, "l"}, {0x0143, "N"}, {0x0144, "n"},
      {0x0145, "N"}, {0x0146, "n"}, {0x0147, "N"}, {0x0148, "n"},
      {0x014C, "O"}, {0x014D, "o"}, {0x0150, "O"}, {0x0151, "o"},
      {0x0152, "OE"}, {0x0153, "oe"}, {0x0154, "R"}, {0x0155, "r"},
      {0x0158, "R"}, {0x0159, "r"}, {0x015A, "S"}, {0x015B, "s"},
      {0x015E, "S"}, {0x015F, "s"}, {0x0160, "S"}, {0x0161, "s"},
      {0x0162, "T"}, {0x0163, "t"}, {0x0164, "T"}, {0x0165, "t"},
      {0x016A, "U"}, {0x016B, "u"}, {0x016E, "U"}, {0x016F, "u"},
      {0x0170, "U"}, {0x0171, "u"}, {0x0172, "U"}, {0x0173, "u"},
      {0x0178, "Y"}, {0x0179, "Z"}, {0x017A, "z"}, {0x017B, "Z"},
      {0x017C, "z"}, {0x017D, "Z"}, {0x017E, "z"}, {0x0192, "f"},
      // general punctuation
      {0x2002, " "}, {0x2003, " "}, {0x2009, " "}, {0x200A, " "},
      {0x2010, "-"}, {0x2011, "-"}, {0x2012, "-"}, {0x2013, "-"},
      {0x2014, "-"}, {0x2015, "-"}, {0x2018, "'"}, {0x2019, "'"},
      {0x201A, ","}, {0x201B, "'"}, {0x201C, "\""}, {0x201D, "\""},
      {0x201E, "\""}, {0x201F, "\""}, {0x2020, "+"}, {0x2022, "*"},
      {0x2026, "..."}, {0x2032, "'"}, {0x2033, "\""}, {0x2039, "<"},
      {0x203A, ">"}, {0x20AC, "EUR"}, {0x2122, "(tm)"}, {0x2212, "-"},
      {0xFEFF, ""},
  };
  return *table;
}

// Decodes one UTF-8 sequence at text[i]; returns the code point and advances
// i, or returns UINT32_MAX (and skips one byte) on an invalid sequence.
uint32_t DecodeUtf8(std::string_view text, std::size_t &i) {
  const auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(text[k]);
  };
  const unsigned char lead = byte(i);
  std::size_t len;
  uint32_t cp;
  if (lead < 0x80) {
    ++i;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++i;
    return UINT32_MAX;
  }
  if (i + len > text.size()) {
    ++i;
    return UINT32_MAX;
  }
  for (std::size_t k = 1; k < len; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) {
      ++i;
      return UINT32_MAX;
    }
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  i += len;
  return cp;
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsAlnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }

bool IsTerminal(char c) { return c == '.' || c == '?' || c == '!'; }

bool IsClosing(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

bool IsOpening(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

const std::unordered_set<std::string_view> &Abbreviations() {
  static const auto *set = new std::unordered_set<std::string_view>{
      "mr",  "mrs",  "ms",   "dr",   "st",     "jr",   "sr",   "prof",
      "capt", "col", "gen",  "lt",   "rev",    "mt",   "vs",   "etc",
      "sgt", "gov",  "messrs", "mme", "mlle",  "cf",   "viz",  "approx",
      "ca",  "ch",   "vol",  "fig",  "esq",    "hon",  "inc",  "ltd",
      "co",  "bros", "corp", "dept", "univ",   "ave",  "jan",  "feb",
      "mar", "apr",  "jun",  "jul",  "aug",    "sep",  "sept", "oct",
      "nov", "dec"};
  return *set;
}

// Whether the '.' at position dot ends an abbreviation or initial.
bool IsAbbreviationDot(std::string_view text, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0 && std::isalpha(static_cast<unsigned char>(text[start - 1]))) {
    --start;
  }
  const std::string_view word = text.substr(start, dot - start);
  if (word.empty()) return false;
  if (word.size() == 1) return true;
  return Abbreviations().count(ToLowerAscii(word)) != 0;
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (IsSpace(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

bool IsHeadingLine(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  constexpr std::string_view kWord = "chapter";
  if (line.size() - i < kWord.size()) return false;
  for (std::size_t k = 0; k < kWord.size(); ++k) {
    if (std::tolower(static_cast<unsigned char>(line[i + k])) != kWord[k]) {
      return false;
    }
  }
  i += kWord.size();
  const std::size_t spaces_start = i;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i == spaces_start) return false;
  return i < line.size() && IsAlnum(line[i]);
}

const std::unordered_set<std::string_view> &HtmlTags() {
  static const auto *set = new std::unordered_set<std::string_view>{
      "html", "head", "body", "div", "p",  "br",     "span", "a",
      "table", "tr",  "td",   "img", "ul", "li",     "h1",   "h2",
      "h3",   "script", "style", "meta", "link", "title", "i", "b", "em"};
  return *set;
}

}  // namespace

std::string Transliterate(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  const auto &table = TransliterationTable();
  std::size_t i = 0;
  while (i < text.size()) {
    const uint32_t cp = DecodeUtf8(text, i);
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
      continue;
    }
    auto it = table.find(cp);
    if (it != table.end()) out.append(it->second);
  }
  return out;
}

std::vector<std::size_t> FindChapterHeadings(std::string_view text) {
  std::vector<std::size_t> starts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    if (IsHeadingLine(text.substr(pos, end - pos))) starts.push_back(pos);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return starts;
}

CleanedBook CleanBook(std::string_view raw) {
  const std::vector<std::size_t> headings = FindChapterHeadings(raw);
  if (headings.size() < 2) {
    return CleanedBook{std::nullopt, std::string(kChapterTitlesUnlocatable)};
  }
  const std::size_t begin = headings.front();
  const std::size_t end = headings.back();
  return CleanedBook{std::string(raw.substr(begin, end - begin)), ""};
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> sentences;
  const std::size_t n = text.size();
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string s = CollapseWhitespace(text.substr(start, end - start));
    if (!s.empty()) sentences.push_back(std::move(s));
    start = end;
  };
  std::size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      std::size_t k = i + 1;
      while (k < n && (text[k] == ' ' || text[k] == '\t' || text[k] == '\r')) {
        ++k;
      }
      if (k < n && text[k] == '\n') {
        emit(i);
        i = k;
        continue;
      }
      ++i;
      continue;
    }
    if (!IsTerminal(c)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && IsTerminal(text[j])) ++j;
    while (j < n && IsClosing(text[j])) ++j;
    if (j >= n) {
      emit(n);
      break;
    }
    if (!IsSpace(text[j])) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < n && IsSpace(text[k])) ++k;
    if (k >= n) {
      emit(n);
      break;
    }
    const bool next_starts_sentence = IsUpper(text[k]) || IsOpening(text[k]);
    const bool abbreviation = c == '.' && j == i + 1 && IsAbbreviationDot(text, i);
    if (next_starts_sentence && !abbreviation) emit(j);
    i = j;
  }
  if (start < n) emit(n);
  return sentences;
}

std::vector<std::string> Tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  const std::size_t n = sentence.size();
  std::size_t i = 0;
  while (i < n) {
    const char c = sentence[i];
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    if (IsAlnum(c)) {
      std::size_t j = i + 1;
      while (j < n) {
        if (IsAlnum(sentence[j])) {
          ++j;
        } else if ((sentence[j] == '-' || sentence[j] == '\'') && j + 1 < n &&
                   IsAlnum(sentence[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      std::string word(sentence.substr(i, j - i));
      std::string lower = ToLowerAscii(word);
      std::string clitic;
      static constexpr std::array<std::string_view, 6> kClitics = {
          "'s", "'ll", "'re", "'ve", "'d", "'m"};
      if (lower.size() > 3 && lower.ends_with("n't")) {
        clitic = word.substr(word.size() - 3);
        word.resize(word.size() - 3);
      } else {
        for (std::string_view suffix : kClitics) {
          if (lower.size() > suffix.size() && lower.ends_with(suffix)) {
            clitic = word.substr(word.size() - suffix.size());
            word.resize(word.size() - suffix.size());
            break;
          }
        }
      }
      tokens.push_back(std::move(word));
      if (!clitic.empty()) tokens.push_back(std::move(clitic));
      i = j;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && sentence[j] == c) ++j;
    tokens.emplace_back(sentence.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool LooksLikeHtml(std::string_view text) {
  const auto &tags = HtmlTags();
  std::size_t pos = 0;
  while ((pos = text.find('<', pos)) != std::string_view::npos) {
    std::size_t i = pos + 1;
    if (i < text.size() && text[i] == '/') ++i;
    const std::size_t name_start = i;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > name_start && i < text.size() &&
        (text[i] == '>' || text[i] == ' ' || text[i] == '/')) {
      if (tags.count(ToLowerAscii(text.substr(name_start, i - name_start)))) {
        return true;
      }
    }
    pos = pos + 1;
  }
  return false;
}

}  // namespace frameforecast
