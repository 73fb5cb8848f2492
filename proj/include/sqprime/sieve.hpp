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

// Square-prime (SP) numbers: integers n = p * a^2 with p prime and a >= 2.
//
// The decomposition of an SP number is unique. If n = p * a^2 then a^2 is the
// largest square dividing n and p is the squarefree part, so membership can be
// decided by extracting the largest square divisor s^2 and testing whether
// n / s^2 is prime.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace sqprime {

// Upper bound accepted by the standalone (table-free) is_sp.
inline constexpr uint64_t kStandaloneLimit = 1'000'000'000'000ULL;

struct SpDecomposition {
  uint64_t n = 0;
  uint64_t p = 0;
  uint64_t a = 0;

  bool operator==(const SpDecomposition&) const = default;
};

// Largest s with s^2 | n. Trial division up to cbrt(n); whatever cofactor
// remains has at most two prime factors and is checked for being a square.
uint64_t largest_square_divisor(uint64_t n);

// floor(sqrt(n)), exact for all 64-bit n.
uint64_t isqrt(uint64_t n);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(uint64_t n);

// Standalone membership test for 1 <= n <= kStandaloneLimit.
std::optional<SpDecomposition> is_sp(uint64_t n);

struct TableOptions {
  uint64_t segment_size = uint64_t{1} << 20;
  unsigned workers = 1;
  // 0 disables the cap.
  uint64_t memory_cap_bytes = 0;
};

// Bytes held by the bit arrays and rank directories of a table over [0, limit].
uint64_t estimate_table_bytes(uint64_t limit);

// Bit vector over [0, limit] with a rank directory every 512 bits.
class RankedBits {
 public:
  RankedBits() = default;
  explicit RankedBits(uint64_t limit);

  bool test(uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  // Number of set bits in [0, i].
  uint64_t rank(uint64_t i) const;
  // Smallest set bit >= i, if any within [0, limit].
  std::optional<uint64_t> next(uint64_t i) const;

  std::span<uint64_t> words() { return words_; }
  std::span<const uint64_t> words() const { return words_; }
  void build_directory();

  bool operator==(const RankedBits& o) const { return words_ == o.words_; }

 private:
  uint64_t limit_ = 0;
  std::vector<uint64_t> words_;
  std::vector<uint64_t> directory_;
};

// Immutable sieve product over [2, limit]: prime and SP membership with
// constant-time counting. Safe for concurrent reads after construction.
class SpTable {
 public:
  static SpTable build(uint64_t limit, const TableOptions& options = {});

  SpTable(SpTable&&) noexcept;
  SpTable& operator=(SpTable&&) noexcept;
  ~SpTable();

  uint64_t limit() const { return limit_; }

  bool is_prime(uint64_t n) const;
  bool is_sp(uint64_t n) const;
  std::optional<SpDecomposition> decompose(uint64_t n) const;

  // pi(n) and SP(n), both counting values <= n.
  uint64_t prime_count(uint64_t n) const;
  uint64_t sp_count(uint64_t n) const;

  // Smallest SP value >= from, or empty if none <= limit.
  std::optional<uint64_t> next_sp(uint64_t from) const;

  // Every SP value <= limit in ascending order; materialized on first use.
  std::span<const uint64_t> sp_ordered() const;

  const RankedBits& prime_bits() const { return primes_; }
  const RankedBits& sp_bits() const { return sp_; }

  // Binary form: "SPT1", limit as 8-byte little endian, then the prime and SP
  // bit arrays, each ceil((limit + 1) / 8) bytes with bit i of byte j standing
  // for the integer 8j + i.
  void save(std::ostream& out) const;
  static SpTable load(std::istream& in);

  bool operator==(const SpTable& o) const {
    return limit_ == o.limit_ && primes_ == o.primes_ && sp_ == o.sp_;
  }

 private:
  struct OrderedCache;

  SpTable(uint64_t limit, RankedBits primes, RankedBits sp);
  void check_bound(uint64_t n) const;

  uint64_t limit_ = 0;
  RankedBits primes_;
  RankedBits sp_;
  std::unique_ptr<OrderedCache> ordered_;
};

SpTable build_table(uint64_t limit, uint64_t segment_size);

uint64_t prime_count(const SpTable& table, uint64_t n);

// SP numbers in [lo, hi] with their decompositions.
std::vector<SpDecomposition> sp_list(const SpTable& table, uint64_t lo, uint64_t hi);

}  // namespace sqprime
