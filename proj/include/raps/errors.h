// Copyright 2026 The RAPS Toolkit Authors
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

#ifndef RAPS_ERRORS_H_
#define RAPS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace raps {

// malformed task, experiment config or snapshot
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// caller passed an invalid argument (bad index, wrong length, non-finite)
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// non-finite loss or parameters during optimization
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, std::string diagnostics = {})
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

  const std::string& diagnostics() const { return diagnostics_; }

 private:
  std::string diagnostics_;
};

}  // namespace raps

#endif  // RAPS_ERRORS_H_
