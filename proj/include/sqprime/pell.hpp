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

// Same-gap SP pairs from the general Pell equation.
//
// A gap g = P1 * a^2 - P2 * b^2 with primes P1 != P2 gives the solution
// (P1 * a, b) of x^2 - (P1 * P2) * y^2 = P1 * g. Composing with powers of the
// fundamental unit of D = P1 * P2 yields infinitely many further solutions,
// and because P1 divides x^2 it divides x, so x = P1 * k recovers a pair
// P1 * k^2 - P2 * y^2 = g.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "sqprime/sieve.hpp"

namespace sqprime {

// The larger SP number is p1 * a^2 and the smaller p2 * b^2.
struct GapWitness {
  uint64_t g = 0;
  uint64_t p1 = 0;
  uint64_t a = 0;
  uint64_t p2 = 0;
  uint64_t b = 0;

  bool operator==(const GapWitness&) const = default;
};

struct PellSolution {
  mpz_class x;
  mpz_class y;

  bool operator==(const PellSolution& o) const { return x == o.x && y == o.y; }
};

// SP decomposition whose value and square root may exceed 64 bits.
struct BigSpDecomposition {
  mpz_class n;
  uint64_t p = 0;
  mpz_class a;
};

struct GapPair {
  BigSpDecomposition small;
  BigSpDecomposition large;
};

GapWitness witness_from_pair(uint64_t n_small, uint64_t n_large);

// First SP pair (by larger element) with difference g and distinct primes.
std::optional<GapWitness> find_witness(const SpTable& table, uint64_t g);

// x^2 - D * y^2.
mpz_class pell_norm(const PellSolution& s, uint64_t D);

// Minimal positive solution of x^2 - D * y^2 = 1 from the convergents of the
// continued fraction of sqrt(D).
PellSolution pell_fundamental_unit(uint64_t D);

// Brahmagupta composition of a solution of norm m with a unit; the result has
// norm m again.
PellSolution pell_compose(const PellSolution& s, const PellSolution& unit, uint64_t D);

// Arithmetic check: p prime, a >= 2 and n = p * a^2.
bool verify_sp(const BigSpDecomposition& d);

// First `count` pairs on the orbit of the witness's base solution with both
// square roots at least 2, ascending. The first pair is the witness itself.
std::vector<GapPair> generate_gap_pairs(const GapWitness& w, std::size_t count);

// Composition budget of generate_gap_pairs.
inline constexpr std::size_t kMaxCompositions = 10'000;

}  // namespace sqprime
