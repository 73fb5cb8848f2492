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

#include "sqprime/conjectures.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "parallel.hpp"
#include "sqprime/errors.hpp"

namespace sqprime {

namespace {

constexpr uint64_t kChunk = uint64_t{1} << 16;

void require_within(const SpTable& table, uint64_t value, const char* what) {
  if (value > table.limit()) {
    throw OutOfRange(std::string(what) + " = " + std::to_string(value) + " exceeds table limit " +
                     std::to_string(table.limit()));
  }
}

bool has_two_sp_sum(const SpTable& table, std::span<const uint64_t> sp, uint64_t n) {
  const auto& bits = table.sp_bits();
  for (uint64_t s1 : sp) {
    if (2 * s1 > n) return false;
    if (bits.test(n - s1)) return true;
  }
  return false;
}

// Applies `keep` to every value in [lo, hi] in parallel chunks and returns the
// kept values in ascending order.
template <typename Keep>
std::vector<uint64_t> chunked_filter(uint64_t lo, uint64_t hi, unsigned workers, Keep&& keep) {
  if (lo > hi) return {};
  const uint64_t chunks = (hi - lo) / kChunk + 1;
  std::vector<std::vector<uint64_t>> found(chunks);
  detail::parallel_for(chunks, workers, [&](std::size_t c) {
    const uint64_t first = lo + c * kChunk;
    const uint64_t last = std::min(hi, first + (kChunk - 1));
    for (uint64_t v = first;; ++v) {
      if (keep(v)) found[c].push_back(v);
      if (v == last) break;
    }
  });
  std::vector<uint64_t> merged;
  for (auto& part : found) merged.insert(merged.end(), part.begin(), part.end());
  return merged;
}

}  // namespace

std::optional<Representation> find_two_sp_sum(const SpTable& table, uint64_t n) {
  if (n == 0) throw InvalidArgument("find_two_sp_sum: n must be positive");
  require_within(table, n, "find_two_sp_sum: n");
  for (uint64_t s1 : table.sp_ordered()) {
    if (2 * s1 > n) break;
    if (table.sp_bits().test(n - s1)) return Representation{n, s1, n - s1};
  }
  return std::nullopt;
}

std::vector<uint64_t> verify_goldbach_range(const SpTable& table, uint64_t lo, uint64_t hi,
                                            unsigned workers) {
  require_within(table, hi, "verify_goldbach_range: hi");
  lo = std::max<uint64_t>(lo, 1);
  const auto sp = table.sp_ordered();
  return chunked_filter(lo, hi, workers, [&](uint64_t n) { return !has_two_sp_sum(table, sp, n); });
}

std::vector<uint64_t> verify_sp_goldbach_range(const SpTable& table, uint64_t lo, uint64_t hi,
                                               unsigned workers) {
  require_within(table, hi, "verify_sp_goldbach: hi");
  lo = std::max<uint64_t>(lo, 1);
  const auto sp = table.sp_ordered();
  const auto& bits = table.sp_bits();
  return chunked_filter(lo, hi, workers,
                        [&](uint64_t n) { return bits.test(n) && !has_two_sp_sum(table, sp, n); });
}

std::vector<uint64_t> verify_sp_goldbach(const SpTable& table, uint64_t hi, unsigned workers) {
  return verify_sp_goldbach_range(table, kSpGoldbachThreshold + 1, hi, workers);
}

std::optional<uint64_t> sp_between_squares(const SpTable& table, uint64_t k) {
  if (k < 2) throw InvalidArgument("sp_between_squares: k must be at least 2");
  require_within(table, (k + 1) * (k + 1), "sp_between_squares: (k + 1)^2");
  const auto next = table.next_sp(k * k + 1);
  if (next && *next < (k + 1) * (k + 1)) return next;
  return std::nullopt;
}

std::vector<uint64_t> verify_squares_range(const SpTable& table, uint64_t k_min, uint64_t k_max,
                                           unsigned workers) {
  if (k_min > k_max) throw InvalidArgument("verify_squares_range: k_min exceeds k_max");
  if (k_min < 2) throw InvalidArgument("verify_squares_range: k_min must be at least 2");
  require_within(table, (k_max + 1) * (k_max + 1), "verify_squares_range: (k_max + 1)^2");
  return chunked_filter(k_min, k_max, workers,
                        [&](uint64_t k) { return !sp_between_squares(table, k).has_value(); });
}

std::vector<GapRecord> gap_histogram(const SpTable& table, uint64_t hi) {
  require_within(table, hi, "gap_histogram: hi");
  std::map<uint64_t, GapRecord> by_gap;
  auto prev = table.next_sp(1);
  if (!prev || *prev > hi) return {};
  for (auto n = table.next_sp(*prev + 1); n && *n <= hi; n = table.next_sp(*n + 1)) {
    const uint64_t g = *n - *prev;
    auto [it, inserted] = by_gap.try_emplace(g, GapRecord{g, *prev, 0});
    ++it->second.count;
    prev = n;
  }
  std::vector<GapRecord> out;
  out.reserve(by_gap.size());
  for (const auto& [g, record] : by_gap) out.push_back(record);
  return out;
}

std::vector<uint64_t> sp_twins(const SpTable& table, uint64_t hi) {
  require_within(table, hi, "sp_twins: hi");
  std::vector<uint64_t> out;
  const auto& bits = table.sp_bits();
  for (auto n = table.next_sp(1); n && *n + 1 <= hi; n = table.next_sp(*n + 1)) {
    if (bits.test(*n + 1)) out.push_back(*n);
  }
  return out;
}

}  // namespace sqprime
