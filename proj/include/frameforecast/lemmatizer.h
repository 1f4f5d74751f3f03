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

#ifndef FRAMEFORECAST_LEMMATIZER_H_
#define FRAMEFORECAST_LEMMATIZER_H_

#include <string>
#include <string_view>

namespace frameforecast {

// Rule-based English lemmatizer used for trigger lookup.
//
// The token is lowercased, looked up in a bundled exception table (irregular
// verbs and plurals, protected words such as "always" or "morning"), and
// otherwise reduced by ordered suffix rules: ies->y, sses->ss, es->e or drop,
// s->drop, ed->drop or e, ing->drop or e, with repair of doubled final
// consonants ("running" -> "run"). Rules are re-applied until the result is
// stable, so Lemmatize(Lemmatize(x)) == Lemmatize(x) for every input.
//
// Only ASCII letters are case-folded; other bytes pass through unchanged.
// Hyphenated compounds are reduced on their last segment.
std::string Lemmatize(std::string_view token);

// ASCII lowercase copy.
std::string ToLowerAscii(std::string_view text);

}  // namespace frameforecast

#endif  // FRAMEFORECAST_LEMMATIZER_H_
