// Copyright 2026 The sqprime Authors
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

#pragma once

// Range verification of additive and interval statements about SP numbers,
// plus gap and twin statistics. Everything reads an immutable SpTable, and
// parallel scans merge their chunks in ascending order so the output does not
// depend on the worker count.

#include <cstdint>
#include <optional>
#include <vector>

#include "sqprime/sieve.hpp"

namespace sqprime {

struct Representation {
  uint64_t n = 0;
  uint64_t s1 = 0;
  uint64_t s2 = 0;

  bool operator==(const Representation&) const = default;
};

struct GapRecord {
  uint64_t g = 0;
  uint64_t first_lo = 0;
  uint64_t count = 0;

  bool operator==(const GapRecord&) const = default;
};

// Defaults used by the CLI to decide whether a scan failed.
inline constexpr uint64_t kGoldbachThreshold = 3931;
inline constexpr uint64_t kSpGoldbachThreshold = 27;
inline constexpr uint64_t kSquaresThreshold = 23;

// n = s1 + s2 with both SP and s1 as small as possible.
std::optional<Representation> find_two_sp_sum(const SpTable& table, uint64_t n);

// Every n in [lo, hi] that is not a sum of two SP numbers, ascending.
std::vector<uint64_t> verify_goldbach_range(const SpTable& table, uint64_t lo, uint64_t hi,
                                            unsigned workers = 1);

// SP values in [lo, hi] that are not a sum of two SP numbers.
std::vector<uint64_t> verify_sp_goldbach_range(const SpTable& table, uint64_t lo, uint64_t hi,
                                               unsigned workers = 1);
// SP values in (27, hi].
std::vector<uint64_t> verify_sp_goldbach(const SpTable& table, uint64_t hi, unsigned workers = 1);

// Smallest SP strictly between k^2 and (k + 1)^2.
std::optional<uint64_t> sp_between_squares(const SpTable& table, uint64_t k);

// Every k in [k_min, k_max] whose square interval holds no SP.
std::vector<uint64_t> verify_squares_range(const SpTable& table, uint64_t k_min, uint64_t k_max,
                                           unsigned workers = 1);

// Gaps between consecutive SP values <= hi, ascending by gap size.
std::vector<GapRecord> gap_histogram(const SpTable& table, uint64_t hi);

// Lower members of SP twins (n, n + 1) with n + 1 <= hi.
std::vector<uint64_t> sp_twins(const SpTable& table, uint64_t hi);

}  // namespace sqprime
