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

#include "sqprime/digits.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "format.hpp"
#include "json.hpp"
#include "sqprime/density.hpp"
#include "sqprime/errors.hpp"

namespace sqprime {

namespace {

// Terms summed directly before the Euler-Maclaurin tail.
constexpr int kDirectTerms = 256;

bool coprime_digit(int d) { return d == 1 || d == 3 || d == 7 || d == 9; }

double coprime_zeta_sum() {
  return static_cast<double>(hurwitz_zeta2(0.1).value + hurwitz_zeta2(0.9).value +
                             hurwitz_zeta2(0.3).value + hurwitz_zeta2(0.7).value);
}

}  // namespace

HurwitzValue hurwitz_zeta2(double c) {
  if (!(c > 0.0 && c <= 2.0)) {
    throw InvalidArgument("hurwitz_zeta2: c = " + std::to_string(c) + " outside (0, 2]");
  }
  const long double cl = c;
  // Smallest terms first.
  long double sum = 0.0L;
  for (int k = kDirectTerms - 1; k >= 0; --k) {
    const long double x = k + cl;
    sum += 1.0L / (x * x);
  }
  // sum_{k >= K} f(K + c) = integral + f/2 - f'/12 + ..., f(x) = 1/x^2.
  const long double x = kDirectTerms + cl;
  const long double tail = 1.0L / x + 1.0L / (2.0L * x * x) + 1.0L / (6.0L * x * x * x);
  const long double value = tail + sum;
  // f is completely monotone, so the remainder is bounded by the first omitted
  // term 1/(30 x^5).
  const long double truncation = 1.0L / (30.0L * x * x * x * x * x);
  const long double rounding = 4.0L * (kDirectTerms + 4) * std::numeric_limits<long double>::epsilon() * value;
  return HurwitzValue{c, value, truncation + rounding};
}

double last_digit_constant(LastDigitVariant variant) {
  const double zetas = coprime_zeta_sum();
  switch (variant) {
    case LastDigitVariant::literal:
      return (zetas - 4.0) / 400.0;
    case LastDigitVariant::corrected:
      // a = 1 is not admissible; the other three classes start at a = 3, 7, 9.
      return (zetas - 100.0) / 400.0;
  }
  throw InvalidArgument("last_digit_constant: unknown variant");
}

DigitDistribution digit_counts(const SpTable& table) {
  DigitDistribution dist;
  dist.limit = table.limit();
  for (uint64_t n : table.sp_ordered()) ++dist.counts[n % 10];
  for (uint64_t c : dist.counts) dist.total += c;
  return dist;
}

DigitReport digit_report(const SpTable& table) {
  DigitReport report;
  report.distribution = digit_counts(table);
  const double literal = last_digit_constant(LastDigitVariant::literal);
  const double corrected = last_digit_constant(LastDigitVariant::corrected);
  const double total = static_cast<double>(report.distribution.total);
  uint64_t coprime = 0;
  for (int d = 0; d < 10; ++d) {
    DigitRow& row = report.rows[d];
    row.digit = d;
    row.count = report.distribution.counts[d];
    row.share = total > 0 ? static_cast<double>(row.count) / total : 0.0;
    if (coprime_digit(d)) {
      coprime += row.count;
      row.predicted_share = corrected / kSpDensityConstant;
      row.constant_literal = literal;
      row.constant_corrected = corrected;
    }
  }
  report.coprime_share = total > 0 ? static_cast<double>(coprime) / total : 0.0;
  report.predicted_coprime_share = 4.0 * corrected / kSpDensityConstant;
  report.literal_coprime_share = 4.0 * literal / kSpDensityConstant;
  return report;
}

void write_digit_report_csv(std::ostream& out, const DigitReport& report) {
  auto opt = [](const std::optional<double>& v) { return v ? detail::format_real(*v) : std::string(); };
  out << "digit,count,share,predicted_share,constant_literal,constant_corrected\n";
  for (const auto& row : report.rows) {
    out << row.digit << ',' << row.count << ',' << detail::format_real(row.share) << ','
        << opt(row.predicted_share) << ',' << opt(row.constant_literal) << ','
        << opt(row.constant_corrected) << '\n';
  }
}

void write_digit_report_json(std::ostream& out, const DigitReport& report) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(detail::json_real(*v)) : nlohmann::json(nullptr);
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"digit", row.digit},
                    {"count", row.count},
                    {"share", detail::json_real(row.share)},
                    {"predicted_share", opt(row.predicted_share)},
                    {"constant_literal", opt(row.constant_literal)},
                    {"constant_corrected", opt(row.constant_corrected)}});
  }
  nlohmann::json doc = {{"limit", report.distribution.limit},
                        {"total", report.distribution.total},
                        {"digits", rows},
                        {"coprime_share", detail::json_real(report.coprime_share)},
                        {"predicted_coprime_share", detail::json_real(report.predicted_coprime_share)},
                        {"literal_coprime_share", detail::json_real(report.literal_coprime_share)}};
  out << doc.dump(2) << '\n';
}

}  // namespace sqprime
