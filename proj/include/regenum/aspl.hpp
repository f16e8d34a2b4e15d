// Copyright 2026 The regenum Authors.
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

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

namespace regenum {

// Exact average shortest path length: numerator / denominator with the
// denominator kept unreduced (n(n-1) for a measured graph). Ordering and
// equality compare the rational values.
struct AsplValue {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  AsplValue reduced() const {
    const std::uint64_t g = std::gcd(numerator, denominator);
    return g == 0 ? *this : AsplValue{numerator / g, denominator / g};
  }

  double to_double() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }

  std::string to_string() const {
    return std::to_string(numerator) + "/" + std::to_string(denominator);
  }

  friend std::strong_ordering operator<=>(const AsplValue& a, const AsplValue& b) {
    const auto lhs = static_cast<unsigned __int128>(a.numerator) * b.denominator;
    const auto rhs = static_cast<unsigned __int128>(b.numerator) * a.denominator;
    return lhs <=> rhs;
  }

  friend bool operator==(const AsplValue& a, const AsplValue& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  // Same numerator and denominator, not just the same value.
  bool identical(const AsplValue& other) const {
    return numerator == other.numerator && denominator == other.denominator;
  }
};

}  // namespace regenum
