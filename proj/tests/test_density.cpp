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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sqprime/density.hpp"
#include "sqprime/errors.hpp"

using namespace sqprime;

namespace {

const SpTable& table_1e6() {
  static const SpTable table = SpTable::build(1'000'000, {.segment_size = 1 << 16, .workers = 2});
  return table;
}

}  // namespace

TEST_CASE("density constant") {
  CHECK(kSpDensityConstant == doctest::Approx(0.6449340668482264).epsilon(1e-15));
}

TEST_CASE("sp_count examples") {
  const auto& t = table_1e6();
  CHECK(sp_count(t, 8) == 1);
  CHECK(sp_count(t, 7) == 0);
  CHECK(sp_count(t, 100) == 21);
  CHECK(sp_count(t, 549) == 100);
  CHECK_THROWS_AS(sp_count(t, 1'000'001), OutOfRange);
}

TEST_CASE("pi-sum identity") {
  const auto& t = table_1e6();
  CHECK(sp_count_via_pi(t, 8) == 1);
  CHECK(sp_count_via_pi(t, 100) == 21);
  for (uint64_t n = 1; n <= 10000; ++n) REQUIRE(sp_count_via_pi(t, n) == sp_count(t, n));
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const uint64_t n = 10000 + rng() % (1'000'000 - 10000);
    REQUIRE(sp_count_via_pi(t, n) == sp_count(t, n));
  }
  // Independent enumeration count at the top of the table.
  const auto sp = oracle::sp_by_enumeration(1'000'000);
  const auto enumerated = static_cast<uint64_t>(std::count(sp.begin(), sp.end(), true));
  CHECK(enumerated == 69179);
  CHECK(sp_count_via_pi(t, 1'000'000) == enumerated);
  CHECK_THROWS_AS(sp_count_via_pi(t, 1'000'001), OutOfRange);
}

TEST_CASE("sp_asymptotic") {
  CHECK(sp_asymptotic(20) == doctest::Approx(0.6449340668482264 * 20 / std::log(20.0)));
  CHECK(sp_asymptotic(20) == doctest::Approx(4.3057).epsilon(1e-4));
  CHECK(sp_asymptotic(1'000'000) == doctest::Approx(46681.88).epsilon(1e-6));
  CHECK_THROWS_AS(sp_asymptotic(2), InvalidArgument);
  for (uint64_t n = 3; n < 100000; n = n * 3 + 1) CHECK(sp_asymptotic(10 * n) / sp_asymptotic(n) < 10.0);
}

TEST_CASE("density_table") {
  const auto& t = table_1e6();
  const std::vector<uint64_t> checkpoints = {1000, 10000, 100000, 1000000};
  const auto records = density_table(t, checkpoints);
  REQUIRE(records.size() == 4);
  // Small n still has more SP numbers than primes.
  CHECK(records[0].sp_exact == 169);
  CHECK(records[0].pi_n == 168);
  CHECK(records[1].sp_exact == 1230);
  CHECK(records[1].pi_n == 1229);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].n == checkpoints[i]);
    if (i > 1) CHECK(records[i].sp_exact < records[i].pi_n);
    CHECK(records[i].ratio > 1.0);
    if (i > 0) CHECK(records[i].ratio < records[i - 1].ratio);
  }
  CHECK(density_table(t, {}).empty());
  const std::vector<uint64_t> bad = {10, 2'000'000};
  try {
    density_table(t, bad);
    FAIL("expected OutOfRange");
  } catch (const OutOfRange& e) {
    CHECK(std::string(e.what()).find("2000000") != std::string::npos);
  }
}

TEST_CASE("SP(n) against pi(n)") {
  const auto& t = table_1e6();
  // Every n checked directly against independent sieves.
  const auto prime = oracle::eratosthenes(1'000'000);
  const auto spset = oracle::sp_by_enumeration(1'000'000);
  uint64_t sp = 0, pi = 0, first_bad = 0, last_bad = 0;
  for (uint64_t n = 2; n <= 1'000'000; ++n) {
    sp += spset[n];
    pi += prime[n];
    if (sp >= pi) {
      if (!first_bad) first_bad = n;
      last_bad = n;
    }
  }
  CHECK(first_bad == 556);
  CHECK(last_bad == 14386);
  CHECK(first_sp_count_exceeding_pi(t, 2, 1'000'000) == first_bad);
  CHECK(first_sp_count_exceeding_pi(t, 600, 1'000'000) == 605);
  CHECK(first_sp_count_exceeding_pi(t, last_bad, 1'000'000) == last_bad);
  CHECK_FALSE(first_sp_count_exceeding_pi(t, last_bad + 1, 1'000'000).has_value());
  CHECK_FALSE(first_sp_count_exceeding_pi(t, 2, 555).has_value());
}

TEST_CASE("density CSV and JSON") {
  const auto& t = table_1e6();
  const std::vector<uint64_t> checkpoints = {1000};
  const auto records = density_table(t, checkpoints);
  std::ostringstream csv;
  write_density_csv(csv, records);
  CHECK(csv.str().rfind("n,sp_exact,pi_n,asymptotic,ratio\n1000,", 0) == 0);
  std::ostringstream json;
  write_density_json(json, records);
  CHECK(json.str().find("\"sp_exact\": " + std::to_string(records[0].sp_exact)) != std::string::npos);
}
