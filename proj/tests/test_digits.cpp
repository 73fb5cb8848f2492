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

#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sqprime/density.hpp"
#include "sqprime/digits.hpp"
#include "sqprime/errors.hpp"

using namespace sqprime;

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

long double abs_diff(long double a, long double b) { return a > b ? a - b : b - a; }

}  // namespace

TEST_CASE("hurwitz_zeta2 special values") {
  const auto z1 = hurwitz_zeta2(1.0);
  CHECK(abs_diff(z1.value, kPi * kPi / 6) < 1e-12L);
  CHECK(z1.abs_error_bound <= 1e-12L);
  CHECK(abs_diff(hurwitz_zeta2(2.0).value, kPi * kPi / 6 - 1) < 1e-12L);
  const auto half = hurwitz_zeta2(0.5);
  CHECK(abs_diff(half.value, kPi * kPi / 2) < 1e-12L);
  CHECK(abs_diff(half.value, oracle::hurwitz_direct(0.5L, 10'000'000)) < 1e-10L);
  CHECK_THROWS_AS(hurwitz_zeta2(0.0), InvalidArgument);
  CHECK_THROWS_AS(hurwitz_zeta2(2.5), InvalidArgument);
  CHECK_THROWS_AS(hurwitz_zeta2(-1.0), InvalidArgument);
}

TEST_CASE("hurwitz_zeta2 shift recurrence") {
  for (double c : {0.1, 0.3, 0.7, 0.9}) {
    const long double diff = hurwitz_zeta2(c).value - hurwitz_zeta2(c + 1).value;
    CHECK(abs_diff(diff, 1.0L / (static_cast<long double>(c) * c)) < 1e-11L);
    CHECK(hurwitz_zeta2(c).abs_error_bound <= 1e-12L);
  }
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double c = 1.0 - unit(rng);  // (0, 1]
    const long double diff = hurwitz_zeta2(c).value - hurwitz_zeta2(c + 1).value;
    REQUIRE(abs_diff(diff, 1.0L / (static_cast<long double>(c) * c)) < 1e-11L);
  }
}

TEST_CASE("last-digit constants") {
  const double literal = last_digit_constant(LastDigitVariant::literal);
  const double corrected = last_digit_constant(LastDigitVariant::corrected);
  CHECK(literal == doctest::Approx(0.2861).epsilon(1e-3));
  CHECK(corrected == doctest::Approx(0.04608).epsilon(1e-3));
  CHECK(4 * literal > kSpDensityConstant);

  // sum over a >= 3 coprime to 10 of 1/a^2, directly, with the tail
  // 0.4 / N of the density-0.4 residue classes.
  const uint64_t N = 2'000'000;
  long double direct = 0.0L;
  for (uint64_t a = N; a >= 3; --a) {
    if (a % 2 != 0 && a % 5 != 0) direct += 1.0L / (static_cast<long double>(a) * a);
  }
  direct += 0.4L / N;
  CHECK(std::abs(static_cast<double>(direct) - 4 * corrected) < 1e-8);
}

TEST_CASE("digit counts") {
  const auto t100 = SpTable::build(100);
  const auto d = digit_counts(t100);
  CHECK(d.counts[8] == 6);
  CHECK(d.counts[7] == 1);
  CHECK(d.counts[1] == 0);
  CHECK(d.total == t100.sp_count(100));

  const auto t = SpTable::build(1'000'000);
  const auto big = digit_counts(t);
  uint64_t sum = 0;
  for (uint64_t c : big.counts) sum += c;
  CHECK(sum == big.total);
  CHECK(big.total == t.sp_count(1'000'000));
  for (int digit : {1, 3, 7, 9}) CHECK(big.counts[digit] > 0);
}

TEST_CASE("digit report") {
  const auto t = SpTable::build(1'000'000);
  const auto report = digit_report(t);
  const double corrected = last_digit_constant(LastDigitVariant::corrected);
  for (int digit : {1, 3, 7, 9}) {
    REQUIRE(report.rows[digit].predicted_share);
    CHECK(*report.rows[digit].predicted_share == doctest::Approx(0.07145).epsilon(1e-3));
    CHECK(*report.rows[digit].predicted_share == *report.rows[1].predicted_share);
    CHECK(*report.rows[digit].constant_corrected == corrected);
  }
  for (int digit : {0, 2, 4, 5, 6, 8}) CHECK_FALSE(report.rows[digit].predicted_share);
  CHECK(report.predicted_coprime_share == doctest::Approx(0.2858).epsilon(1e-3));
  CHECK(report.literal_coprime_share > 1.0);

  std::ostringstream csv;
  write_digit_report_csv(csv, report);
  const std::string text = csv.str();
  CHECK(text.rfind("digit,count,share,predicted_share,constant_literal,constant_corrected\n", 0) == 0);
  CHECK(text.find("\n0," + std::to_string(report.rows[0].count) + ",") != std::string::npos);
  CHECK(text.find(",,,\n") != std::string::npos);
}
