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

#ifndef RAPS_BENCH_STATS_H_
#define RAPS_BENCH_STATS_H_

#include <vector>

namespace raps::bench {

struct MeanInterval {
  int n = 0;
  double mean = 0.0;
  double low = 0.0;   // equal to mean when n < 2
  double high = 0.0;
  double half_width = 0.0;
};

// Two-sided Student-t interval for the mean, sample std with n - 1.
// Throws InputError on an empty sample or a level outside (0, 1).
MeanInterval MeanConfidenceInterval(const std::vector<double>& values,
                                    double level = 0.95);

}  // namespace raps::bench

#endif  // RAPS_BENCH_STATS_H_
