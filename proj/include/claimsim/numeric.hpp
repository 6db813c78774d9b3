// Copyright 2026 The claimsim Authors
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

#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace claimsim {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> values) noexcept;

/// Sample mean and standard error of the mean, both accumulated with
/// compensated summation in index order.
struct SampleMoments {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};
SampleMoments sample_moments(std::span<const double> values) noexcept;

/// Runs body(i) for i in [0, count) on up to `threads` workers using static
/// contiguous chunks. Results must be written to per-index slots; the caller
/// reduces them afterwards so that output does not depend on thread count.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

/// Worker count to use when the caller passes 0.
unsigned default_thread_count() noexcept;

}  // namespace claimsim
