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

// Last decimal digit of SP numbers.
//
// Primes coprime to 10 split evenly over the residues 1, 3, 7, 9, and an SP
// value p * a^2 ending in 1, 3, 7 or 9 needs gcd(a, 10) = 1. Each such a is
// paired with exactly one prime residue per target digit, so every coprime
// digit is predicted the same count
//
//   (1/4) * sum_{a >= 3, gcd(a, 10) = 1} 1/a^2 * n / ln n,
//
// which in Hurwitz zeta values is
// (zeta(2, 1/10) - 100 + zeta(2, 9/10) + zeta(2, 3/10) + zeta(2, 7/10)) / 400.
// The "literal" variant subtracts 4 in place of 100 and is kept for
// comparison.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>

#include "sqprime/sieve.hpp"

namespace sqprime {

struct HurwitzValue {
  double c = 0.0;
  long double value = 0.0L;
  long double abs_error_bound = 0.0L;
};

// zeta(2, c) = sum_{k >= 0} 1/(k + c)^2 for 0 < c <= 2.
HurwitzValue hurwitz_zeta2(double c);

enum class LastDigitVariant { literal, corrected };

// Coefficient of n / ln n in the count of SP numbers ending in 1 (and, by the
// same argument, 3, 7 and 9).
double last_digit_constant(LastDigitVariant variant);

struct DigitDistribution {
  uint64_t limit = 0;
  std::array<uint64_t, 10> counts{};
  uint64_t total = 0;
};

DigitDistribution digit_counts(const SpTable& table);

struct DigitRow {
  int digit = 0;
  uint64_t count = 0;
  double share = 0.0;
  // Present only for digits 1, 3, 7, 9.
  std::optional<double> predicted_share;
  std::optional<double> constant_literal;
  std::optional<double> constant_corrected;
};

struct DigitReport {
  DigitDistribution distribution;
  std::array<DigitRow, 10> rows;
  double coprime_share = 0.0;
  double predicted_coprime_share = 0.0;
  // 4 * literal / (zeta(2) - 1); exceeds 1, so it cannot be a share.
  double literal_coprime_share = 0.0;
};

DigitReport digit_report(const SpTable& table);

void write_digit_report_csv(std::ostream& out, const DigitReport& report);
void write_digit_report_json(std::ostream& out, const DigitReport& report);

}  // namespace sqprime
