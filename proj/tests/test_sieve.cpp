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

#include <random>
#include <sstream>

#include "doctest.h"
#include "golden.hpp"
#include "oracles.hpp"
#include "sqprime/errors.hpp"
#include "sqprime/sieve.hpp"

using namespace sqprime;

namespace {

std::vector<uint64_t> values(const std::vector<SpDecomposition>& list) {
  std::vector<uint64_t> out;
  for (const auto& d : list) out.push_back(d.n);
  return out;
}

}  // namespace

TEST_CASE("largest_square_divisor") {
  CHECK(largest_square_divisor(1) == 1);
  CHECK(largest_square_divisor(72) == oracle::brute_square_divisor(72));
  CHECK(largest_square_divisor(72) == 6);
  CHECK(largest_square_divisor(32) == 4);
  CHECK_THROWS_AS(largest_square_divisor(0), InvalidArgument);

  for (uint64_t n = 1; n <= 20000; ++n) {
    REQUIRE(largest_square_divisor(n) == oracle::brute_square_divisor(n));
  }
  // Cofactors made of two large primes, a prime square, and a big prime.
  CHECK(largest_square_divisor(999983ULL * 999979ULL) == 1);
  CHECK(largest_square_divisor(999983ULL * 999983ULL) == 999983);
  CHECK(largest_square_divisor(4ULL * 999983ULL * 999983ULL) == 2 * 999983ULL);
  CHECK(largest_square_divisor(999999999989ULL) == 1);
}

TEST_CASE("is_prime agrees with trial division") {
  for (uint64_t n = 0; n < 100000; ++n) REQUIRE(is_prime(n) == oracle::trial_prime(n));
  CHECK(is_prime(999999999989ULL));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("is_sp examples") {
  CHECK(is_sp(27) == SpDecomposition{27, 3, 3});
  CHECK(is_sp(28) == SpDecomposition{28, 7, 2});
  CHECK(is_sp(637) == SpDecomposition{637, 13, 7});
  CHECK_FALSE(is_sp(7));
  CHECK_FALSE(is_sp(4));
  CHECK_FALSE(is_sp(1));
  CHECK_THROWS_AS(is_sp(0), InvalidArgument);
  CHECK_THROWS_AS(is_sp(kStandaloneLimit + 1), OutOfRange);
  CHECK(is_sp(4 * 249999999973ULL) == SpDecomposition{4 * 249999999973ULL, 249999999973ULL, 2});
}

TEST_CASE("decomposition is unique and matches brute force") {
  for (uint64_t n = 1; n <= 100000; ++n) {
    const auto all = oracle::all_decompositions(n);
    REQUIRE(all.size() <= 1);
    const auto got = is_sp(n);
    REQUIRE(got.has_value() == !all.empty());
    if (got) {
      CHECK(got->p == all[0].first);
      CHECK(got->a == all[0].second);
    }
  }
}

TEST_CASE("build_table small examples") {
  const auto t30 = build_table(30, 16);
  CHECK(std::vector<uint64_t>(t30.sp_ordered().begin(), t30.sp_ordered().end()) ==
        std::vector<uint64_t>{8, 12, 18, 20, 27, 28});
  const auto t2 = build_table(2, 2);
  CHECK(t2.sp_ordered().empty());
  CHECK(t2.prime_count(2) == 1);
  CHECK_THROWS_AS(build_table(1, 16), InvalidArgument);
  CHECK_THROWS_AS(build_table(100, 1), InvalidArgument);
}

TEST_CASE("first 100 SP numbers") {
  const auto table = build_table(549, 4096);
  const auto ordered = table.sp_ordered();
  REQUIRE(ordered.size() == 100);
  CHECK(std::vector<uint64_t>(ordered.begin(), ordered.end()) == testdata::kFirst100);
  CHECK(ordered.back() == 549);
}

TEST_CASE("table agrees with independent sieves and with standalone is_sp") {
  const uint64_t limit = 1'000'000;
  const auto table = SpTable::build(limit, {.segment_size = 1 << 14, .workers = 3});
  const auto prime = oracle::eratosthenes(limit);
  const auto sp = oracle::sp_by_enumeration(limit);
  for (uint64_t n = 1; n <= limit; ++n) {
    REQUIRE(table.is_prime(n) == prime[n]);
    REQUIRE(table.is_sp(n) == sp[n]);
    REQUIRE(table.is_sp(n) == is_sp(n).has_value());
  }
}

TEST_CASE("table output does not depend on segment size or workers") {
  const uint64_t limit = 300'007;
  const auto reference = SpTable::build(limit, {.segment_size = uint64_t{1} << 20, .workers = 1});
  for (uint64_t seg : {2ULL, 63ULL, 64ULL, 1000ULL, 65536ULL}) {
    for (unsigned workers : {1u, 2u, 5u}) {
      const auto t = SpTable::build(limit, {.segment_size = seg, .workers = workers});
      CHECK(t == reference);
    }
  }
}

TEST_CASE("prime_count") {
  const auto table = build_table(1000, 128);
  CHECK(prime_count(table, 1) == 0);
  CHECK(prime_count(table, 2) == 1);
  const auto prime = oracle::eratosthenes(100);
  CHECK(prime_count(table, 100) == static_cast<uint64_t>(std::count(prime.begin(), prime.end(), true)));
  CHECK(prime_count(table, 100) == 25);
  CHECK_THROWS_AS(prime_count(table, 1001), OutOfRange);
}

TEST_CASE("sp_list") {
  const auto table = build_table(1000, 256);
  CHECK(sp_list(table, 90, 100) == std::vector<SpDecomposition>{{92, 23, 2}, {98, 2, 7}, {99, 11, 3}});
  CHECK(sp_list(table, 93, 100) == std::vector<SpDecomposition>{{98, 2, 7}, {99, 11, 3}});
  CHECK(sp_list(table, 9, 11).empty());
  CHECK(values(sp_list(table, 500, 512)) == std::vector<uint64_t>{500, 507, 508, 512});
  CHECK_THROWS_AS(sp_list(table, 1, 1001), OutOfRange);
  CHECK_THROWS_AS(sp_list(table, 20, 10), InvalidArgument);
}

TEST_CASE("product of two SP numbers is never SP") {
  const auto table = build_table(2000, 512);
  const auto sp = table.sp_ordered();
  for (std::size_t i = 0; i < sp.size(); ++i) {
    for (std::size_t j = i; j < sp.size(); ++j) REQUIRE_FALSE(is_sp(sp[i] * sp[j]));
  }
}

TEST_CASE("memory cap") {
  TableOptions options;
  options.memory_cap_bytes = 1024;
  try {
    SpTable::build(1'000'000, options);
    FAIL("expected ResourceLimit");
  } catch (const ResourceLimit& e) {
    CHECK(std::string(e.what()).find("1024") != std::string::npos);
  }
}

TEST_CASE("save and load round trip byte for byte") {
  for (uint64_t limit : {2ULL, 63ULL, 64ULL, 100ULL, 12345ULL}) {
    const auto table = build_table(limit, 64);
    std::stringstream first;
    table.save(first);
    const std::string bytes = first.str();
    CHECK(bytes.size() == 12 + 2 * (limit / 8 + 1));
    CHECK(bytes.substr(0, 4) == "SPT1");
    CHECK(static_cast<unsigned char>(bytes[4]) == (limit & 0xff));
    std::stringstream in(bytes);
    const auto loaded = SpTable::load(in);
    CHECK(loaded == table);
    std::stringstream second;
    loaded.save(second);
    CHECK(second.str() == bytes);
    CHECK(loaded.sp_count(limit) == table.sp_count(limit));
  }
  std::stringstream bad("SPT0........");
  CHECK_THROWS_AS(SpTable::load(bad), InvalidArgument);
  std::stringstream truncated(std::string("SPT1") + std::string("\x64\0\0\0\0\0\0\0", 8) + "abc");
  CHECK_THROWS_AS(SpTable::load(truncated), InvalidArgument);
}

TEST_CASE("next_sp and counts are consistent") {
  const auto table = build_table(5000, 512);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const uint64_t n = rng() % 5000 + 1;
    uint64_t expected = 0;
    for (uint64_t v : table.sp_ordered()) expected += v <= n;
    REQUIRE(table.sp_count(n) == expected);
    const auto next = table.next_sp(n);
    if (next) {
      REQUIRE(table.is_sp(*next));
      for (uint64_t m = n; m < *next; ++m) REQUIRE_FALSE(table.is_sp(m));
    }
  }
  CHECK_FALSE(table.next_sp(5001).has_value());
  CHECK_FALSE(table.next_sp(table.sp_ordered().back() + 1).has_value());
}
