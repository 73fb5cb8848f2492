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

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "sqprime/sieve.hpp"

namespace sqprime {

// zeta(2) - 1, the leading coefficient of SP(n) ~ c * n / ln n.
inline constexpr double kSpDensityConstant = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;

struct DensityRecord {
  uint64_t n = 0;
  uint64_t sp_exact = 0;
  uint64_t pi_n = 0;
  double asymptotic = 0.0;
  double ratio = 0.0;
};

// Number of SP values <= n.
uint64_t sp_count(const SpTable& table, uint64_t n);

// Sum over a = 2 .. floor(sqrt(n / 2)) of pi(floor(n / a^2)). Counts the same
// pairs (p, a) as sp_count, so the two agree exactly.
uint64_t sp_count_via_pi(const SpTable& table, uint64_t n);

// (zeta(2) - 1) * n / ln n, for n >= 3.
double sp_asymptotic(uint64_t n);

std::vector<DensityRecord> density_table(const SpTable& table, std::span<const uint64_t> checkpoints);

// First n in [lo, hi] with sp_count(n) >= prime_count(n). SP(n) only moves at
// SP values, so those are the only places the inequality can break.
std::optional<uint64_t> first_sp_count_exceeding_pi(const SpTable& table, uint64_t lo, uint64_t hi);

void write_density_csv(std::ostream& out, std::span<const DensityRecord> records);
void write_density_json(std::ostream& out, std::span<const DensityRecord> records);

}  // namespace sqprime
