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

#include "sqprime/cli.hpp"

#include <charconv>
#include <cstring>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "format.hpp"
#include "json.hpp"
#include "sqprime/conjectures.hpp"
#include "sqprime/density.hpp"
#include "sqprime/digits.hpp"
#include "sqprime/errors.hpp"
#include "sqprime/pell.hpp"
#include "sqprime/sieve.hpp"

namespace sqprime::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  uint64_t limit = 1'000'000;
  uint64_t segment_size = uint64_t{1} << 20;
  std::string format = "csv";
  std::string output;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string table_path;
};

struct Range {
  std::optional<uint64_t> from;
  std::optional<uint64_t> to;
  std::optional<uint64_t> threshold;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--limit", cfg.limit, "Table limit (inclusive)")->check(CLI::Range(uint64_t{2}, uint64_t{10'000'000'000}));
  sub->add_option("--segment-size", cfg.segment_size, "Sieve segment size")->check(CLI::Range(uint64_t{2}, UINT64_MAX));
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", cfg.output, "Output file (default: standard output)");
  sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1u, 4096u));
  sub->add_option("--table", cfg.table_path, "Load a saved table instead of sieving");
}

uint64_t memory_cap_from_env() {
  const char* text = std::getenv("SP_MEMORY_CAP_MB");
  if (!text || !*text) return 0;
  uint64_t mb = 0;
  const auto [ptr, ec] = std::from_chars(text, text + std::strlen(text), mb);
  if (ec != std::errc() || *ptr != '\0') throw InvalidArgument("SP_MEMORY_CAP_MB is not an integer");
  return mb * 1024 * 1024;
}

SpTable make_table(const RunConfig& cfg) {
  if (!cfg.table_path.empty()) {
    std::ifstream in(cfg.table_path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open table file " + cfg.table_path);
    return SpTable::load(in);
  }
  TableOptions options;
  options.segment_size = cfg.segment_size;
  options.workers = cfg.workers;
  options.memory_cap_bytes = memory_cap_from_env();
  return SpTable::build(cfg.limit, options);
}

bool as_json(const RunConfig& cfg) { return cfg.format == "json"; }

void write_column(std::ostream& out, const RunConfig& cfg, const char* name,
                  const std::vector<uint64_t>& values) {
  if (as_json(cfg)) {
    out << json(values).dump() << '\n';
    return;
  }
  out << name << '\n';
  for (uint64_t v : values) out << v << '\n';
}

// Returns true when any value is at or above the threshold.
bool any_at_or_above(const std::vector<uint64_t>& values, uint64_t threshold) {
  return !values.empty() && values.back() >= threshold;
}

int cmd_sieve(const RunConfig& cfg, const Range& r, const std::string& dump, std::ostream& out) {
  const SpTable table = make_table(cfg);
  if (!dump.empty()) {
    std::ofstream file(dump, std::ios::binary);
    if (!file) throw InvalidArgument("cannot open " + dump + " for writing");
    table.save(file);
  }
  const auto list = sp_list(table, r.from.value_or(1), r.to.value_or(table.limit()));
  if (as_json(cfg)) {
    json rows = json::array();
    for (const auto& d : list) rows.push_back({{"n", d.n}, {"p", d.p}, {"a", d.a}});
    out << rows.dump() << '\n';
  } else {
    out << "n,p,a\n";
    for (const auto& d : list) out << d.n << ',' << d.p << ',' << d.a << '\n';
  }
  return kSuccess;
}

int cmd_count(const RunConfig& cfg, const Range& r, std::ostream& out) {
  const SpTable table = make_table(cfg);
  const uint64_t n = r.to.value_or(table.limit());
  const uint64_t direct = sp_count(table, n);
  const uint64_t via_pi = sp_count_via_pi(table, n);
  const uint64_t pi = prime_count(table, n);
  if (as_json(cfg)) {
    out << json{{"n", n}, {"sp_count", direct}, {"sp_count_via_pi", via_pi}, {"pi_n", pi}}.dump() << '\n';
  } else {
    out << "n,sp_count,sp_count_via_pi,pi_n\n" << n << ',' << direct << ',' << via_pi << ',' << pi << '\n';
  }
  return direct == via_pi ? kSuccess : kVerificationFailed;
}

int cmd_density(const RunConfig& cfg, std::vector<uint64_t> checkpoints, std::ostream& out) {
  const SpTable table = make_table(cfg);
  if (checkpoints.empty()) {
    for (uint64_t n = 10; n <= table.limit(); n *= 10) {
      checkpoints.push_back(n);
      if (n > table.limit() / 10) break;
    }
    if (checkpoints.empty() || checkpoints.back() != table.limit()) {
      if (table.limit() >= 3) checkpoints.push_back(table.limit());
    }
  }
  const auto records = density_table(table, checkpoints);
  if (as_json(cfg)) {
    write_density_json(out, records);
  } else {
    write_density_csv(out, records);
  }
  for (const auto& rec : records) {
    if (rec.sp_exact >= rec.pi_n) return kVerificationFailed;
  }
  return kSuccess;
}

int cmd_goldbach(const RunConfig& cfg, const Range& r, std::ostream& out) {
  const SpTable table = make_table(cfg);
  const auto exceptions =
      verify_goldbach_range(table, r.from.value_or(1), r.to.value_or(table.limit()), cfg.workers);
  write_column(out, cfg, "n", exceptions);
  return any_at_or_above(exceptions, r.threshold.value_or(kGoldbachThreshold)) ? kVerificationFailed
                                                                                  : kSuccess;
}

int cmd_sp_goldbach(const RunConfig& cfg, const Range& r, std::ostream& out) {
  const SpTable table = make_table(cfg);
  const auto exceptions =
      verify_sp_goldbach_range(table, r.from.value_or(1), r.to.value_or(table.limit()), cfg.workers);
  write_column(out, cfg, "n", exceptions);
  return any_at_or_above(exceptions, r.threshold.value_or(kSpGoldbachThreshold) + 1) ? kVerificationFailed
                                                                                       : kSuccess;
}

int cmd_squares(const RunConfig& cfg, const Range& r, std::ostream& out) {
  const SpTable table = make_table(cfg);
  const uint64_t k_max = r.to.value_or(isqrt(table.limit()) - 1);
  const auto failures = verify_squares_range(table, r.from.value_or(2), k_max, cfg.workers);
  write_column(out, cfg, "k", failures);
  return any_at_or_above(failures, r.threshold.value_or(kSquaresThreshold)) ? kVerificationFailed : kSuccess;
}

int cmd_gaps(const RunConfig& cfg, const Range& r, std::ostream& out) {
  const SpTable table = make_table(cfg);
  const auto records = gap_histogram(table, r.to.value_or(table.limit()));
  if (as_json(cfg)) {
    json rows = json::array();
    for (const auto& g : records) rows.push_back({{"g", g.g}, {"first_lo", g.first_lo}, {"count", g.count}});
    out << rows.dump() << '\n';
  } else {
    out << "g,first_lo,count\n";
    for (const auto& g : records) out << g.g << ',' << g.first_lo << ',' << g.count << '\n';
  }
  return kSuccess;
}

int cmd_twins(const RunConfig& cfg, const Range& r, std::ostream& out) {
  const SpTable table = make_table(cfg);
  const auto twins = sp_twins(table, r.to.value_or(table.limit()));
  json rows = json::array();
  if (!as_json(cfg)) out << "lo,p_lo,a_lo,hi,p_hi,a_hi\n";
  for (uint64_t lo : twins) {
    const auto a = *table.decompose(lo);
    const auto b = *table.decompose(lo + 1);
    if (as_json(cfg)) {
      rows.push_back({{"lo", a.n}, {"p_lo", a.p}, {"a_lo", a.a}, {"hi", b.n}, {"p_hi", b.p}, {"a_hi", b.a}});
    } else {
      out << a.n << ',' << a.p << ',' << a.a << ',' << b.n << ',' << b.p << ',' << b.a << '\n';
    }
  }
  if (as_json(cfg)) out << rows.dump() << '\n';
  return kSuccess;
}

int cmd_pell(const RunConfig& cfg, uint64_t gap, std::size_t count, std::ostream& out, std::ostream& err) {
  const SpTable table = make_table(cfg);
  const auto witness = find_witness(table, gap);
  if (!witness) {
    err << "no distinct-prime witness for gap " << gap << " up to " << table.limit() << '\n';
    return kVerificationFailed;
  }
  const auto pairs = generate_gap_pairs(*witness, count);
  if (as_json(cfg)) {
    json rows = json::array();
    for (const auto& pr : pairs) {
      rows.push_back({{"g", gap},
                      {"u", pr.small.n.get_str()},
                      {"p_u", pr.small.p},
                      {"a_u", pr.small.a.get_str()},
                      {"v", pr.large.n.get_str()},
                      {"p_v", pr.large.p},
                      {"a_v", pr.large.a.get_str()}});
    }
    out << rows.dump() << '\n';
  } else {
    out << "g,u,p_u,a_u,v,p_v,a_v\n";
    for (const auto& pr : pairs) {
      out << gap << ',' << pr.small.n.get_str() << ',' << pr.small.p << ',' << pr.small.a.get_str() << ','
          << pr.large.n.get_str() << ',' << pr.large.p << ',' << pr.large.a.get_str() << '\n';
    }
  }
  return kSuccess;
}

int cmd_digits(const RunConfig& cfg, std::ostream& out) {
  const SpTable table = make_table(cfg);
  const auto report = digit_report(table);
  if (as_json(cfg)) {
    write_digit_report_json(out, report);
  } else {
    write_digit_report_csv(out, report);
  }
  return kSuccess;
}

int cmd_zeta(const RunConfig& cfg, const std::string& c_text, std::ostream& out) {
  const auto hv = hurwitz_zeta2(parse_rational(c_text));
  const double value = static_cast<double>(hv.value);
  const double bound = static_cast<double>(hv.abs_error_bound);
  if (as_json(cfg)) {
    out << json{{"c", detail::json_real(hv.c)},
                {"value", detail::json_real(value)},
                {"abs_error_bound", detail::json_real(bound)}}
               .dump()
        << '\n';
  } else {
    out << "c,value,abs_error_bound\n"
        << detail::format_real(hv.c) << ',' << detail::format_real(value) << ','
        << detail::format_real(bound) << '\n';
  }
  return kSuccess;
}

}  // namespace

double parse_rational(const std::string& text) {
  auto parse_int = [&](std::string_view part) {
    uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw InvalidArgument("not a rational: " + text);
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string_view view(text);
    const uint64_t p = parse_int(view.substr(0, slash));
    const uint64_t q = parse_int(view.substr(slash + 1));
    if (q == 0) throw InvalidArgument("zero denominator: " + text);
    return static_cast<double>(p) / static_cast<double>(q);
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a rational: " + text);
  }
  if (used != text.size()) throw InvalidArgument("not a rational: " + text);
  return value;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Square-prime number toolkit", "sqprime"};
  app.require_subcommand(1, 1);
  app.failure_message(CLI::FailureMessage::help);

  RunConfig cfg;
  Range range;
  std::string dump_path;
  std::vector<uint64_t> checkpoints;
  uint64_t gap = 1;
  std::size_t count = 5;
  std::string c_text;

  auto with_range = [&](CLI::App* sub, const char* from_help, const char* to_help) {
    sub->add_option("--from", range.from, from_help);
    sub->add_option("--to", range.to, to_help);
  };
  auto with_threshold = [&](CLI::App* sub, uint64_t dflt) {
    sub->add_option("--threshold", range.threshold,
                    "Values at or past this are expected to pass (default " + std::to_string(dflt) + ")");
  };

  std::function<int()> action;
  auto sub = [&](const char* name, const char* help, std::function<int()> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, cfg);
    s->callback([&action, fn] { action = fn; });
    return s;
  };

  std::ostringstream data;

  auto* sieve = sub("sieve", "List SP numbers with their decompositions",
                    [&] { return cmd_sieve(cfg, range, dump_path, data); });
  with_range(sieve, "Lowest value", "Highest value");
  sieve->add_option("--dump", dump_path, "Write the binary table to this path");

  auto* count_cmd = sub("count", "SP(n) directly and through the pi sum", [&] { return cmd_count(cfg, range, data); });
  count_cmd->add_option("--to", range.to, "n (default: limit)");

  auto* density = sub("density", "SP(n) against (zeta(2) - 1) n / ln n",
                      [&] { return cmd_density(cfg, checkpoints, data); });
  density->add_option("--checkpoints", checkpoints, "Checkpoints (default: powers of ten and the limit)")
      ->delimiter(',');

  auto* goldbach = sub("goldbach", "Integers that are not a sum of two SP numbers",
                       [&] { return cmd_goldbach(cfg, range, data); });
  with_range(goldbach, "Lowest n", "Highest n");
  with_threshold(goldbach, kGoldbachThreshold);

  auto* sp_goldbach = sub("sp-goldbach", "SP numbers that are not a sum of two SP numbers",
                          [&] { return cmd_sp_goldbach(cfg, range, data); });
  with_range(sp_goldbach, "Lowest n", "Highest n");
  sp_goldbach->add_option("--threshold", range.threshold,
                          "SP values above this are expected to pass (default 27)");

  auto* squares = sub("squares", "Square intervals (k^2, (k+1)^2) without an SP number",
                      [&] { return cmd_squares(cfg, range, data); });
  with_range(squares, "Lowest k", "Highest k");
  with_threshold(squares, kSquaresThreshold);

  auto* gaps = sub("gaps", "Gap histogram of consecutive SP numbers", [&] { return cmd_gaps(cfg, range, data); });
  gaps->add_option("--to", range.to, "Highest value (default: limit)");

  auto* twins = sub("twins", "SP twins (n, n + 1)", [&] { return cmd_twins(cfg, range, data); });
  twins->add_option("--to", range.to, "Highest value (default: limit)");

  auto* pell = sub("pell", "Same-gap SP pairs from the Pell equation",
                   [&] { return cmd_pell(cfg, gap, count, data, err); });
  pell->add_option("--gap", gap, "Gap size")->check(CLI::PositiveNumber);
  pell->add_option("--count", count, "Pairs to generate")->check(CLI::PositiveNumber);

  sub("digits", "Last-digit distribution against predicted shares", [&] { return cmd_digits(cfg, data); });

  auto* zeta = sub("zeta", "Hurwitz zeta(2, c)", [&] { return cmd_zeta(cfg, c_text, data); });
  zeta->add_option("--c", c_text, "c as p/q or decimal, 0 < c <= 2")->required();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  int code = kSuccess;
  try {
    code = action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  if (cfg.output.empty()) {
    out << data.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.output << " for writing\n";
      return kUsageError;
    }
    file << data.str();
  }
  return code;
}

}  // namespace sqprime::cli
