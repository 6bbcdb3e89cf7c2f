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

#ifndef RAPS_PRIMITIVES_LIBRARY_H_
#define RAPS_PRIMITIVES_LIBRARY_H_

#include <string>
#include <vector>

#include "raps/primitives/primitive.h"

namespace raps::primitives {

// the primitive exposing raw delta-position control
inline constexpr const char* kDummyPrimitive = "go-to-pose-delta";

// Ordered primitive set. Action indexing depends on the order, so a library
// is immutable once built.
class PrimitiveLibrary {
 public:
  PrimitiveLibrary() = default;
  explicit PrimitiveLibrary(std::vector<PrimitiveSpec> specs);

  int Size() const { return static_cast<int>(specs_.size()); }
  int TotalArgDim() const { return total_arg_dim_; }
  const PrimitiveSpec& operator[](int k) const;
  const std::vector<PrimitiveSpec>& specs() const { return specs_; }
  std::vector<std::string> Names() const;
  int MaxHorizon() const;

  int IndexOf(const std::string& name) const;  // -1 if absent
  bool Contains(const std::string& name) const { return IndexOf(name) >= 0; }

  // keeps the named primitives in this library's order; ConfigError on an
  // unknown name
  PrimitiveLibrary Subset(const std::vector<std::string>& names) const;
  PrimitiveLibrary Without(const std::string& name) const;

 private:
  std::vector<PrimitiveSpec> specs_;
  int total_arg_dim_ = 0;
};

enum class DofMode { kPositionOnly, kPositionYaw };

PrimitiveLibrary DefaultLibrary(DofMode mode);

}  // namespace raps::primitives

#endif  // RAPS_PRIMITIVES_LIBRARY_H_
