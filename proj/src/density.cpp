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

#include "sqprime/density.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "json.hpp"

#include "format.hpp"
#include "sqprime/errors.hpp"

namespace sqprime {

uint64_t sp_count(const SpTable& table, uint64_t n) { return table.sp_count(n); }

uint64_t sp_count_via_pi(const SpTable& table, uint64_t n) {
  if (n > table.limit()) {
    throw OutOfRange("sp_count_via_pi: n = " + std::to_string(n) + " exceeds table limit " +
                     std::to_string(table.limit()));
  }
  uint64_t total = 0;
  for (uint64_t a = 2; 2 * a * a <= n; ++a) total += table.prime_count(n / (a * a));
  return total;
}

double sp_asymptotic(uint64_t n) {
  if (n < 3) throw InvalidArgument("sp_asymptotic: n must be at least 3");
  const double x = static_cast<double>(n);
  return kSpDensityConstant * x / std::log(x);
}

std::vector<DensityRecord> density_table(const SpTable& table, std::span<const uint64_t> checkpoints) {
  std::vector<DensityRecord> records;
  records.reserve(checkpoints.size());
  for (uint64_t n : checkpoints) {
    if (n > table.limit()) {
      throw OutOfRange("density_table: checkpoint " + std::to_string(n) + " exceeds table limit " +
                       std::to_string(table.limit()));
    }
    DensityRecord r;
    r.n = n;
    r.sp_exact = table.sp_count(n);
    r.pi_n = table.prime_count(n);
    r.asymptotic = sp_asymptotic(n);
    r.ratio = static_cast<double>(r.sp_exact) / r.asymptotic;
    records.push_back(r);
  }
  return records;
}

std::optional<uint64_t> first_sp_count_exceeding_pi(const SpTable& table, uint64_t lo, uint64_t hi) {
  if (hi > table.limit()) {
    throw OutOfRange("corollary scan: hi exceeds table limit " + std::to_string(table.limit()));
  }
  if (lo > hi) return std::nullopt;
  uint64_t start = std::max<uint64_t>(lo, 2);
  if (table.sp_count(start) >= table.prime_count(start)) return start;
  for (auto n = table.next_sp(start + 1); n && *n <= hi; n = table.next_sp(*n + 1)) {
    if (table.sp_count(*n) >= table.prime_count(*n)) return *n;
  }
  return std::nullopt;
}

void write_density_csv(std::ostream& out, std::span<const DensityRecord> records) {
  out << "n,sp_exact,pi_n,asymptotic,ratio\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.sp_exact << ',' << r.pi_n << ',' << detail::format_real(r.asymptotic) << ','
        << detail::format_real(r.ratio) << '\n';
  }
}

void write_density_json(std::ostream& out, std::span<const DensityRecord> records) {
  nlohmann::json array = nlohmann::json::array();
  for (const auto& r : records) {
    array.push_back({{"n", r.n},
                     {"sp_exact", r.sp_exact},
                     {"pi_n", r.pi_n},
                     {"asymptotic", detail::json_real(r.asymptotic)},
                     {"ratio", detail::json_real(r.ratio)}});
  }
  out << array.dump(2) << '\n';
}

}  // namespace sqprime
