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

#include "raps/bench/stats.h"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>

#include "raps/errors.h"

namespace raps::bench {

MeanInterval MeanConfidenceInterval(const std::vector<double>& values,
                                    double level) {
  if (values.empty()) throw InputError("confidence interval of no values");
  if (!(level > 0.0 && level < 1.0)) {
    throw InputError("confidence level must lie in (0, 1)");
  }
  MeanInterval ci;
  ci.n = static_cast<int>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  ci.mean = sum / ci.n;
  ci.low = ci.high = ci.mean;
  if (ci.n < 2) return ci;
  double squares = 0.0;
  for (double v : values) squares += (v - ci.mean) * (v - ci.mean);
  const double sd = std::sqrt(squares / (ci.n - 1));
  const boost::math::students_t dist(ci.n - 1);
  const double t = boost::math::quantile(dist, 0.5 + 0.5 * level);
  ci.half_width = t * sd / std::sqrt(static_cast<double>(ci.n));
  ci.low = ci.mean - ci.half_width;
  ci.high = ci.mean + ci.half_width;
  return ci;
}

}  // namespace raps::bench
