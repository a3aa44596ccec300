// Copyright 2026 The DDGC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DDGC_COMMON_H_
#define DDGC_COMMON_H_

#include <stdexcept>
#include <string>

namespace ddgc {

using StateId = int;
using ActionId = int;

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition or structural invariant of an input was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A linear solve or regression produced an unusable result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration or input files could not be parsed or resolved.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline void CheckArgument(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace ddgc

#endif  // DDGC_COMMON_H_
