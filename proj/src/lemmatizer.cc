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

#include "frameforecast/lemmatizer.h"

#include <string>
#include <string_view>
#include <unordered_map>

namespace frameforecast {
namespace {

// Irregular forms and words the suffix rules would damage. Every value must
// itself be stable under the rules (checked by the unit tests).
const std::unordered_map<std::string_view, std::string_view> &Exceptions() {
  static const auto *table =
      new std::unordered_map<std::string_view, std::string_view>{
          // be / have / do
          {"am", "be"}, {"is", "be"}, {"are", "be"}, {"was", "be"},
          {"were", "be"}, {"been", "be"}, {"being", "be"}, {"has", "have"},
          {"had", "have"}, {"having", "have"}, {"does", "do"}, {"did", "do"},
          {"done", "do"}, {"doing", "do"},
          // irregular verbs
          {"went", "go"}, {"gone", "go"}, {"goes", "go"}, {"said", "say"},
          {"says", "say"}, {"made", "make"}, {"took", "take"},
          {"taken", "take"}, {"came", "come"}, {"saw", "see"}, {"seen", "see"},
          {"knew", "know"}, {"known", "know"}, {"thought", "think"},
          {"told", "tell"}, {"found", "find"}, {"gave", "give"},
          {"given", "give"}, {"left", "leave"}, {"felt", "feel"},
          {"brought", "bring"}, {"began", "begin"}, {"begun", "begin"},
          {"kept", "keep"}, {"held", "hold"}, {"stood", "stand"},
          {"heard", "hear"}, {"ran", "run"}, {"sat", "sit"}, {"spoke", "speak"},
          {"spoken", "speak"}, {"wrote", "write"}, {"written", "write"},
          {"got", "get"}, {"gotten", "get"}, {"meant", "mean"},
          {"met", "meet"}, {"paid", "pay"}, {"sent", "send"}, {"spent", "spend"},
          {"built", "build"}, {"lost", "lose"}, {"fell", "fall"},
          {"fallen", "fall"}, {"led", "lead"}, {"lay", "lie"}, {"lain", "lie"},
          {"lying", "lie"}, {"lied", "lie"}, {"lies", "lie"}, {"dying", "die"},
          {"died", "die"}, {"dies", "die"}, {"tying", "tie"}, {"ties", "tie"},
          {"rose", "rise"}, {"risen", "rise"}, {"rising", "rise"},
          {"arose", "arise"}, {"arisen", "arise"}, {"drove", "drive"},
          {"driven", "drive"}, {"rode", "ride"}, {"ridden", "ride"},
          {"ate", "eat"}, {"eaten", "eat"}, {"drank", "drink"},
          {"drunk", "drink"}, {"sang", "sing"}, {"sung", "sing"},
          {"swam", "swim"}, {"swum", "swim"}, {"flew", "fly"}, {"flown", "fly"},
          {"threw", "throw"}, {"thrown", "throw"}, {"grew", "grow"},
          {"grown", "grow"}, {"drew", "draw"}, {"drawn", "draw"},
          {"blew", "blow"}, {"blown", "blow"}, {"broke", "break"},
          {"broken", "break"}, {"chose", "choose"}, {"chosen", "choose"},
          {"froze", "freeze"}, {"frozen", "freeze"}, {"stole", "steal"},
          {"stolen", "steal"}, {"woke", "wake"}, {"woken", "wake"},
          {"wore", "wear"}, {"worn", "wear"}, {"tore", "tear"}, {"torn", "tear"},
          {"swore", "swear"}, {"sworn", "swear"}, {"bore", "bear"},
          {"borne", "bear"}, {"forgot", "forget"}, {"forgotten", "forget"},
          {"hid", "hide"}, {"hidden", "hide"}, {"bit", "bite"},
          {"bitten", "bite"}, {"shook", "shake"}, {"shaken", "shake"},
          {"struck", "strike"}, {"stricken", "strike"}, {"fought", "fight"},
          {"caught", "catch"}, {"taught", "teach"}, {"bought", "buy"},
          {"sought", "seek"}, {"sold", "sell"}, {"slept", "sleep"},
          {"swept", "sweep"}, {"wept", "weep"}, {"crept", "creep"},
          {"dealt", "deal"}, {"knelt", "kneel"}, {"dreamt", "dream"},
          {"understood", "understand"}, {"became", "become"}, {"won", "win"},
          {"hung", "hang"}, {"shone", "shine"}, {"shot", "shoot"},
          {"slid", "slide"}, {"fed", "feed"}, {"fled", "flee"},
          {"bled", "bleed"}, {"sped", "speed"}, {"bred", "breed"},
          {"wound", "wound"}, {"sank", "sink"}, {"sunk", "sink"},
          {"rang", "ring"}, {"rung", "ring"}, {"sprang", "spring"},
          {"sprung", "spring"}, {"strove", "strive"}, {"striven", "strive"},
          {"lit", "light"}, {"heard", "hear"}, {"dug", "dig"}, {"clung", "cling"},
          {"flung", "fling"}, {"stung", "sting"}, {"swung", "swing"},
          {"spun", "spin"}, {"stuck", "stick"}, {"forbade", "forbid"},
          {"forbidden", "forbid"}, {"beheld", "behold"}, {"overtook", "overtake"},
          {"undertook", "undertake"}, {"withdrew", "withdraw"},
          {"agreed", "agree"}, {"freed", "free"}, {"added", "add"},
          {"seized", "seize"}, {"used", "use"}, {"using", "use"},
          {"uses", "use"}, {"focused", "focus"}, {"canoes", "canoe"},
          {"shoes", "shoe"}, {"explored", "explore"}, {"ignored", "ignore"},
          {"adored", "adore"}, {"restored", "restore"}, {"stored", "store"},
          {"implored", "implore"}, {"snored", "snore"}, {"scored", "score"},
          // irregular plurals
          {"men", "man"}, {"women", "woman"}, {"children", "child"},
          {"feet", "foot"}, {"teeth", "tooth"}, {"mice", "mouse"},
          {"geese", "goose"}, {"oxen", "ox"}, {"people", "people"},
          {"wolves", "wolf"}, {"knives", "knife"}, {"wives", "wife"},
          {"lives", "life"}, {"leaves", "leaf"}, {"halves", "half"},
          {"selves", "self"}, {"themselves", "themselves"},
          {"ourselves", "ourselves"}, {"yourselves", "yourselves"},
          {"thieves", "thief"}, {"loaves", "loaf"}, {"shelves", "shelf"},
          {"calves", "calf"}, {"whalemen", "whaleman"},
          {"seamen", "seaman"}, {"fishermen", "fisherman"},
          {"gentlemen", "gentleman"}, {"boatmen", "boatman"},
          // protected words
          {"always", "always"}, {"perhaps", "perhaps"}, {"whereas", "whereas"},
          {"besides", "besides"}, {"towards", "towards"},
          {"afterwards", "afterwards"}, {"upwards", "upwards"},
          {"downwards", "downwards"}, {"backwards", "backwards"},
          {"forwards", "forwards"}, {"sometimes", "sometimes"},
          {"news", "news"}, {"series", "series"}, {"species", "species"},
          {"alas", "alas"}, {"canvas", "canvas"}, {"atlas", "atlas"},
          {"bias", "bias"}, {"thus", "thus"}, {"during", "during"},
          {"morning", "morning"}, {"evening", "evening"},
          {"nothing", "nothing"}, {"something", "something"},
          {"anything", "anything"}, {"everything", "everything"},
          {"ceiling", "ceiling"}, {"hundred", "hundred"}, {"sacred", "sacred"},
          {"naked", "naked"}, {"wicked", "wicked"}, {"kindred", "kindred"},
          {"wretched", "wretched"}, {"ragged", "ragged"}, {"rugged", "rugged"},
          {"beloved", "beloved"}, {"learned", "learned"},
          {"aged", "aged"}, {"tired", "tired"}, {"married", "married"},
          {"dressed", "dressed"}, {"bed", "bed"}, {"red", "red"},
          {"ocean", "ocean"}, {"hoped", "hope"}, {"being", "be"},
      };
  return *table;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool IsConsonant(char c) { return c >= 'a' && c <= 'z' && !IsVowel(c); }

bool HasVowel(std::string_view s) {
  for (char c : s) {
    if (IsVowel(c) || c == 'y') return true;
  }
  return false;
}

int VowelGroups(std::string_view s) {
  int groups = 0;
  bool in_group = false;
  for (char c : s) {
    bool v = IsVowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Restores the stem left after removing "ed" or "ing".
std::string RepairStem(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && IsConsonant(stem[n - 1])) {
    const char c = stem[n - 1];
    if (c == 'l' || c == 's' || c == 'f' || c == 'z') return stem;
    stem.pop_back();
    return stem;
  }
  const char last = stem[n - 1];
  // Single-syllable consonant-vowel-consonant: hop -> hope, mak -> make.
  if (n >= 3 && IsConsonant(stem[n - 3]) && IsVowel(stem[n - 2]) &&
      IsConsonant(last) && last != 'w' && last != 'x' && last != 'y' &&
      VowelGroups(stem) == 1) {
    return stem + "e";
  }
  if (last == 'v' || last == 'c' || last == 'u' || last == 'z') {
    return stem + "e";
  }
  if (last == 's' && n >= 2 && IsVowel(stem[n - 2])) {
    if (n == 2 || !(EndsWith(stem, "us") || EndsWith(stem, "is"))) {
      return stem + "e";
    }
    return stem;
  }
  if (n > 4 && (EndsWith(stem, "rg") || EndsWith(stem, "dg") ||
                EndsWith(stem, "ang"))) {
    return stem + "e";
  }
  if (n >= 4 && EndsWith(stem, "at") && IsConsonant(stem[n - 3]) &&
      VowelGroups(stem) >= 2) {
    return stem + "e";
  }
  if (n >= 3 && last == 'l' && IsConsonant(stem[n - 2]) &&
      std::string_view("bcdfgkptz").find(stem[n - 2]) != std::string_view::npos) {
    return stem + "e";
  }
  if (n >= 3 && last == 'r' && (stem[n - 2] == 'i' || stem[n - 2] == 'u') &&
      IsConsonant(stem[n - 3])) {
    return stem + "e";
  }
  return stem;
}

// One pass of exception lookup plus suffix rules on a lowercase word.
std::string ReduceOnce(const std::string &w) {
  const auto &exceptions = Exceptions();
  if (auto it = exceptions.find(w); it != exceptions.end()) {
    return std::string(it->second);
  }
  const std::size_t n = w.size();
  if (n <= 3) return w;
  for (char c : w) {
    if (c < 'a' || c > 'z') return w;
  }
  if (EndsWith(w, "sses")) return w.substr(0, n - 2);
  if (EndsWith(w, "ies")) {
    return n > 4 ? w.substr(0, n - 3) + "y" : w.substr(0, n - 1);
  }
  if (EndsWith(w, "ss") || EndsWith(w, "us") || EndsWith(w, "is")) return w;
  if (EndsWith(w, "es")) {
    const std::string stem = w.substr(0, n - 2);
    if (EndsWith(stem, "x") || EndsWith(stem, "z") || EndsWith(stem, "ch") ||
        EndsWith(stem, "sh") || (EndsWith(stem, "o") && stem.size() > 3)) {
      return stem;
    }
    return w.substr(0, n - 1);
  }
  if (EndsWith(w, "s")) return w.substr(0, n - 1);
  if (EndsWith(w, "ied")) {
    return n > 4 ? w.substr(0, n - 3) + "y" : w.substr(0, n - 1);
  }
  if (EndsWith(w, "eed")) return w;
  if (EndsWith(w, "ed")) {
    const std::string stem = w.substr(0, n - 2);
    if (stem.size() < 2 || !HasVowel(stem)) return w;
    return RepairStem(stem);
  }
  if (EndsWith(w, "ing")) {
    const std::string stem = w.substr(0, n - 3);
    if (stem.size() < 2 || !HasVowel(stem)) return w;
    if (EndsWith(stem, "e") || EndsWith(stem, "y") || EndsWith(stem, "o")) {
      return stem;
    }
    return RepairStem(stem);
  }
  return w;
}

std::string ReduceWord(const std::string &word) {
  std::string current = word;
  for (int i = 0; i < 8; ++i) {
    std::string next = ReduceOnce(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

}  // namespace

std::string ToLowerAscii(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string Lemmatize(std::string_view token) {
  const std::string lower = ToLowerAscii(token);
  if (Exceptions().count(lower) != 0) return ReduceWord(lower);
  const std::size_t hyphen = lower.rfind('-');
  if (hyphen != std::string::npos && hyphen + 1 < lower.size()) {
    return lower.substr(0, hyphen + 1) + ReduceWord(lower.substr(hyphen + 1));
  }
  return ReduceWord(lower);
}

}  // namespace frameforecast
