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

#ifndef FRAMEFORECAST_APP_H_
#define FRAMEFORECAST_APP_H_

#include <iosfwd>

namespace frameforecast {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

// Command-line entry point. Subcommands: ingest, import, fit-idf,
// vectorize, train, evaluate, sweep, skip-exp, ablate, downsample, cloud.
// `--config path` is read first and explicit flags override it. The output
// directory defaults to $FRAMEFORECAST_OUT, then "out".
int RunMain(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

}  // namespace frameforecast

#endif  // FRAMEFORECAST_APP_H_
