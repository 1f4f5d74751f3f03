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

#ifndef FRAMEFORECAST_ERRORS_H_
#define FRAMEFORECAST_ERRORS_H_

#include <stdexcept>
#include <string>

namespace frameforecast {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that does not conform to a file schema. The message names the line
// and/or field that failed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a semantic constraint (duplicate names,
// unknown frames, empty training sets, bad configuration values).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Numerical failure during optimization (non-finite loss).
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace frameforecast

#endif  // FRAMEFORECAST_ERRORS_H_
