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

#include "sqprime/sieve.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>

#include "parallel.hpp"
#include "sqprime/errors.hpp"

namespace sqprime {

namespace {

constexpr uint64_t kWordsPerBlock = 8;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

uint64_t word_count(uint64_t limit) { return limit / 64 + 1; }

// Calls f(i) for every set bit i in [lo, hi] of `words`.
template <typename F>
void for_each_set(std::span<const uint64_t> words, uint64_t lo, uint64_t hi, F&& f) {
  if (lo > hi) return;
  uint64_t w = lo >> 6;
  const uint64_t last = hi >> 6;
  uint64_t bits = words[w] & (~uint64_t{0} << (lo & 63));
  for (;;) {
    if (w == last) {
      const unsigned top = hi & 63;
      if (top != 63) bits &= (uint64_t{2} << top) - 1;
    }
    while (bits) {
      f((w << 6) | static_cast<uint64_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
    if (w == last) return;
    bits = words[++w];
  }
}

std::vector<uint32_t> small_primes(uint64_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<uint32_t> primes;
  for (uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<uint32_t>(i));
    for (uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

void write_bits(std::ostream& out, const RankedBits& bits, uint64_t limit) {
  const uint64_t bytes = limit / 8 + 1;
  std::string buffer(bytes, '\0');
  auto words = bits.words();
  for (uint64_t j = 0; j < bytes; ++j) {
    buffer[j] = static_cast<char>((words[j >> 3] >> ((j & 7) * 8)) & 0xff);
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
}

void read_bits(std::istream& in, RankedBits& bits, uint64_t limit) {
  const uint64_t bytes = limit / 8 + 1;
  std::string buffer(bytes, '\0');
  in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (static_cast<uint64_t>(in.gcount()) != bytes) {
    throw InvalidArgument("table file truncated");
  }
  auto words = bits.words();
  for (uint64_t j = 0; j < bytes; ++j) {
    words[j >> 3] |= uint64_t{static_cast<unsigned char>(buffer[j])} << ((j & 7) * 8);
  }
  // Bits past the limit in the last byte are not part of the table.
  const unsigned used = (limit & 63) + 1;
  if (used != 64) words.back() &= (uint64_t{1} << used) - 1;
}

}  // namespace

uint64_t isqrt(uint64_t n) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (uint64_t q : kBases) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (uint64_t base : kBases) {
    uint64_t x = powmod(base, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t largest_square_divisor(uint64_t n) {
  if (n == 0) throw InvalidArgument("largest_square_divisor: n must be positive");
  uint64_t s = 1;
  uint64_t m = n;
  auto strip = [&](uint64_t d) {
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) s *= d;
  };
  strip(2);
  for (uint64_t d = 3; d * d * d <= n; d += 2) {
    if (d * d > m) break;
    if (m % d == 0) strip(d);
  }
  // Every prime factor of m now exceeds cbrt(n), so m is 1, a prime, a
  // product of two distinct primes, or the square of a prime.
  if (m > 1) {
    const uint64_t r = isqrt(m);
    if (r * r == m) s *= r;
  }
  return s;
}

std::optional<SpDecomposition> is_sp(uint64_t n) {
  if (n == 0) throw InvalidArgument("is_sp: n must be positive");
  if (n > kStandaloneLimit) {
    throw OutOfRange("is_sp: n = " + std::to_string(n) + " exceeds the standalone bound " +
                     std::to_string(kStandaloneLimit));
  }
  const uint64_t s = largest_square_divisor(n);
  if (s < 2) return std::nullopt;
  const uint64_t p = n / (s * s);
  if (!is_prime(p)) return std::nullopt;
  return SpDecomposition{n, p, s};
}

uint64_t estimate_table_bytes(uint64_t limit) {
  const uint64_t words = word_count(limit);
  const uint64_t blocks = words / kWordsPerBlock + 1;
  return 2 * 8 * (words + blocks);
}

// RankedBits -----------------------------------------------------------------

RankedBits::RankedBits(uint64_t limit) : limit_(limit), words_(word_count(limit), 0) {}

void RankedBits::build_directory() {
  directory_.assign(words_.size() / kWordsPerBlock + 1, 0);
  uint64_t running = 0;
  for (uint64_t w = 0; w < words_.size(); ++w) {
    if (w % kWordsPerBlock == 0) directory_[w / kWordsPerBlock] = running;
    running += static_cast<uint64_t>(std::popcount(words_[w]));
  }
}

uint64_t RankedBits::rank(uint64_t i) const {
  const uint64_t w = i >> 6;
  const uint64_t block = w / kWordsPerBlock;
  uint64_t count = directory_[block];
  for (uint64_t k = block * kWordsPerBlock; k < w; ++k) {
    count += static_cast<uint64_t>(std::popcount(words_[k]));
  }
  const unsigned top = i & 63;
  const uint64_t mask = top == 63 ? ~uint64_t{0} : (uint64_t{2} << top) - 1;
  return count + static_cast<uint64_t>(std::popcount(words_[w] & mask));
}

std::optional<uint64_t> RankedBits::next(uint64_t i) const {
  if (i > limit_) return std::nullopt;
  uint64_t w = i >> 6;
  uint64_t bits = words_[w] & (~uint64_t{0} << (i & 63));
  while (bits == 0) {
    if (++w == words_.size()) return std::nullopt;
    bits = words_[w];
  }
  const uint64_t found = (w << 6) | static_cast<uint64_t>(std::countr_zero(bits));
  if (found > limit_) return std::nullopt;
  return found;
}

// SpTable --------------------------------------------------------------------

struct SpTable::OrderedCache {
  std::once_flag once;
  std::vector<uint64_t> values;
};

SpTable::SpTable(uint64_t limit, RankedBits primes, RankedBits sp)
    : limit_(limit),
      primes_(std::move(primes)),
      sp_(std::move(sp)),
      ordered_(std::make_unique<OrderedCache>()) {}

SpTable::SpTable(SpTable&&) noexcept = default;
SpTable& SpTable::operator=(SpTable&&) noexcept = default;
SpTable::~SpTable() = default;

SpTable SpTable::build(uint64_t limit, const TableOptions& options) {
  if (limit < 2) throw InvalidArgument("build_table: limit must be at least 2");
  if (options.segment_size < 2) throw InvalidArgument("build_table: segment_size must be at least 2");
  if (options.memory_cap_bytes != 0 && estimate_table_bytes(limit) > options.memory_cap_bytes) {
    throw ResourceLimit("build_table: limit " + std::to_string(limit) + " needs " +
                        std::to_string(estimate_table_bytes(limit)) + " bytes, over the cap of " +
                        std::to_string(options.memory_cap_bytes) + " bytes");
  }

  RankedBits primes(limit);
  RankedBits sp(limit);
  const uint64_t total_words = word_count(limit);
  // Segments are whole words so concurrent segments never share a word.
  const uint64_t seg_words = (options.segment_size + 63) / 64;
  const uint64_t segments = (total_words + seg_words - 1) / seg_words;
  const std::vector<uint32_t> base = small_primes(isqrt(limit));

  auto prime_words = primes.words();
  detail::parallel_for(segments, options.workers, [&](std::size_t s) {
    const uint64_t w0 = s * seg_words;
    const uint64_t w1 = std::min(total_words, w0 + seg_words);
    const uint64_t lo = w0 * 64;
    const uint64_t hi = std::min(w1 * 64 - 1, limit);
    // Odd positions only; 2 is restored below.
    for (uint64_t w = w0; w < w1; ++w) prime_words[w] = 0xAAAAAAAAAAAAAAAAULL;
    if (w0 == 0) prime_words[0] = (prime_words[0] & ~uint64_t{2}) | uint64_t{4};
    for (uint64_t q : base) {
      if (q == 2) continue;
      if (q * q > hi) break;
      uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
      if ((start & 1) == 0) start += q;
      for (uint64_t m = start; m <= hi; m += 2 * q) prime_words[m >> 6] &= ~(uint64_t{1} << (m & 63));
    }
    if (w1 == total_words) {
      const unsigned used = (limit & 63) + 1;
      if (used != 64) prime_words[w1 - 1] &= (uint64_t{1} << used) - 1;
    }
  });

  // n = p * a^2 lands in this segment for primes p in [lo / a^2, hi / a^2].
  auto sp_words = sp.words();
  std::span<const uint64_t> prime_view = primes.words();
  detail::parallel_for(segments, options.workers, [&](std::size_t s) {
    const uint64_t w0 = s * seg_words;
    const uint64_t w1 = std::min(total_words, w0 + seg_words);
    const uint64_t lo = w0 * 64;
    const uint64_t hi = std::min(w1 * 64 - 1, limit);
    for (uint64_t a = 2; 2 * a * a <= hi; ++a) {
      const uint64_t sq = a * a;
      const uint64_t p_lo = std::max<uint64_t>(2, (lo + sq - 1) / sq);
      const uint64_t p_hi = hi / sq;
      for_each_set(prime_view, p_lo, p_hi, [&](uint64_t p) {
        const uint64_t n = p * sq;
        sp_words[n >> 6] |= uint64_t{1} << (n & 63);
      });
    }
  });

  primes.build_directory();
  sp.build_directory();
  return SpTable(limit, std::move(primes), std::move(sp));
}

void SpTable::check_bound(uint64_t n) const {
  if (n > limit_) {
    throw OutOfRange("value " + std::to_string(n) + " exceeds table limit " + std::to_string(limit_));
  }
}

bool SpTable::is_prime(uint64_t n) const {
  check_bound(n);
  return primes_.test(n);
}

bool SpTable::is_sp(uint64_t n) const {
  check_bound(n);
  return sp_.test(n);
}

std::optional<SpDecomposition> SpTable::decompose(uint64_t n) const {
  if (n == 0) throw InvalidArgument("decompose: n must be positive");
  if (!is_sp(n)) return std::nullopt;
  for (uint64_t a = 2; 2 * a * a <= n; ++a) {
    const uint64_t sq = a * a;
    if (n % sq == 0 && primes_.test(n / sq)) return SpDecomposition{n, n / sq, a};
  }
  throw InternalError("decompose: SP bit set for " + std::to_string(n) + " without a decomposition");
}

uint64_t SpTable::prime_count(uint64_t n) const {
  check_bound(n);
  return primes_.rank(n);
}

uint64_t SpTable::sp_count(uint64_t n) const {
  check_bound(n);
  return sp_.rank(n);
}

std::optional<uint64_t> SpTable::next_sp(uint64_t from) const { return sp_.next(from); }

std::span<const uint64_t> SpTable::sp_ordered() const {
  std::call_once(ordered_->once, [this] {
    auto& values = ordered_->values;
    values.reserve(sp_.rank(limit_));
    for_each_set(sp_.words(), 0, limit_, [&](uint64_t n) { values.push_back(n); });
  });
  return ordered_->values;
}

void SpTable::save(std::ostream& out) const {
  out.write("SPT1", 4);
  std::array<char, 8> header{};
  for (int i = 0; i < 8; ++i) header[i] = static_cast<char>((limit_ >> (8 * i)) & 0xff);
  out.write(header.data(), header.size());
  write_bits(out, primes_, limit_);
  write_bits(out, sp_, limit_);
}

SpTable SpTable::load(std::istream& in) {
  std::array<char, 12> header{};
  in.read(header.data(), header.size());
  if (in.gcount() != static_cast<std::streamsize>(header.size()) ||
      std::string(header.data(), 4) != "SPT1") {
    throw InvalidArgument("table file: missing SPT1 header");
  }
  uint64_t limit = 0;
  for (int i = 0; i < 8; ++i) limit |= uint64_t{static_cast<unsigned char>(header[4 + i])} << (8 * i);
  if (limit < 2) throw InvalidArgument("table file: limit below 2");
  RankedBits primes(limit);
  RankedBits sp(limit);
  read_bits(in, primes, limit);
  read_bits(in, sp, limit);
  primes.build_directory();
  sp.build_directory();
  return SpTable(limit, std::move(primes), std::move(sp));
}

// Free functions -------------------------------------------------------------

SpTable build_table(uint64_t limit, uint64_t segment_size) {
  return SpTable::build(limit, TableOptions{.segment_size = segment_size});
}

uint64_t prime_count(const SpTable& table, uint64_t n) { return table.prime_count(n); }

std::vector<SpDecomposition> sp_list(const SpTable& table, uint64_t lo, uint64_t hi) {
  if (lo > hi) throw InvalidArgument("sp_list: lo exceeds hi");
  if (hi > table.limit()) {
    throw OutOfRange("sp_list: hi = " + std::to_string(hi) + " exceeds table limit " +
                     std::to_string(table.limit()));
  }
  std::vector<SpDecomposition> out;
  for (auto n = table.next_sp(lo); n && *n <= hi; n = table.next_sp(*n + 1)) {
    out.push_back(*table.decompose(*n));
  }
  return out;
}

}  // namespace sqprime
