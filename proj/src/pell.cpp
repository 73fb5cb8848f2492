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

#include "sqprime/pell.hpp"

#include <string>

#include "sqprime/errors.hpp"

namespace sqprime {

namespace {

std::string describe(const GapWitness& w) {
  return "witness (g=" + std::to_string(w.g) + ", P1=" + std::to_string(w.p1) +
         ", a=" + std::to_string(w.a) + ", P2=" + std::to_string(w.p2) + ", b=" + std::to_string(w.b) +
         ")";
}

mpz_class to_mpz(uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return z;
}

uint64_t discriminant(const GapWitness& w) {
  uint64_t D = 0;
  if (__builtin_mul_overflow(w.p1, w.p2, &D)) {
    throw InvalidArgument("P1 * P2 overflows 64 bits for " + describe(w));
  }
  return D;
}

void validate(const GapWitness& w) {
  if (w.g == 0) throw InvalidArgument("gap must be positive in " + describe(w));
  if (!is_prime(w.p1) || !is_prime(w.p2)) throw InvalidArgument("non-prime factor in " + describe(w));
  if (w.a < 2 || w.b < 2) throw InvalidArgument("square root below 2 in " + describe(w));
  if (w.p1 == w.p2) throw DistinctPrimeRequired("equal primes in " + describe(w));
  const mpz_class a = to_mpz(w.a);
  const mpz_class b = to_mpz(w.b);
  if (to_mpz(w.p1) * a * a - to_mpz(w.p2) * b * b != to_mpz(w.g)) {
    throw InvalidArgument("P1*a^2 - P2*b^2 != g for " + describe(w));
  }
}

}  // namespace

GapWitness witness_from_pair(uint64_t n_small, uint64_t n_large) {
  if (n_small >= n_large) throw InvalidArgument("witness_from_pair: n_small must be below n_large");
  const auto small = is_sp(n_small);
  const auto large = is_sp(n_large);
  if (!small) throw InvalidArgument("witness_from_pair: " + std::to_string(n_small) + " is not SP");
  if (!large) throw InvalidArgument("witness_from_pair: " + std::to_string(n_large) + " is not SP");
  GapWitness w{n_large - n_small, large->p, large->a, small->p, small->a};
  if (w.p1 == w.p2) {
    throw DistinctPrimeRequired("witness_from_pair: " + std::to_string(n_small) + " and " +
                                std::to_string(n_large) + " share the prime " + std::to_string(w.p1));
  }
  return w;
}

std::optional<GapWitness> find_witness(const SpTable& table, uint64_t g) {
  if (g == 0) throw InvalidArgument("find_witness: gap must be positive");
  const auto& bits = table.sp_bits();
  for (uint64_t v : table.sp_ordered()) {
    if (v <= g || !bits.test(v - g)) continue;
    const auto large = table.decompose(v);
    const auto small = table.decompose(v - g);
    if (large->p != small->p) return GapWitness{g, large->p, large->a, small->p, small->a};
  }
  return std::nullopt;
}

mpz_class pell_norm(const PellSolution& s, uint64_t D) { return s.x * s.x - to_mpz(D) * s.y * s.y; }

PellSolution pell_fundamental_unit(uint64_t D) {
  if (D < 2) throw InvalidArgument("pell_fundamental_unit: D must be at least 2");
  const uint64_t root = isqrt(D);
  if (root * root == D) {
    throw InvalidArgument("pell_fundamental_unit: D = " + std::to_string(D) + " is a perfect square");
  }
  // sqrt(D) = [a0; a1, a2, ...] with (m + sqrt(D)) / d complete quotients.
  uint64_t m = 0;
  uint64_t d = 1;
  uint64_t term = root;
  mpz_class h_prev = 1, h = to_mpz(root);
  mpz_class k_prev = 0, k = 1;
  for (;;) {
    PellSolution candidate{h, k};
    if (pell_norm(candidate, D) == 1) return candidate;
    m = d * term - m;
    d = (D - m * m) / d;
    term = (root + m) / d;
    const mpz_class t = to_mpz(term);
    mpz_class h_next = t * h + h_prev;
    mpz_class k_next = t * k + k_prev;
    h_prev = std::move(h);
    k_prev = std::move(k);
    h = std::move(h_next);
    k = std::move(k_next);
  }
}

PellSolution pell_compose(const PellSolution& s, const PellSolution& unit, uint64_t D) {
  if (pell_norm(unit, D) != 1) throw InvalidArgument("pell_compose: second argument is not a unit");
  const mpz_class dz = to_mpz(D);
  PellSolution r{s.x * unit.x + dz * s.y * unit.y, s.x * unit.y + s.y * unit.x};
  if (pell_norm(r, D) != pell_norm(s, D)) {
    throw InternalError("pell_compose: composition changed the norm");
  }
  return r;
}

bool verify_sp(const BigSpDecomposition& d) {
  return is_prime(d.p) && d.a >= 2 && d.n == to_mpz(d.p) * d.a * d.a;
}

std::vector<GapPair> generate_gap_pairs(const GapWitness& w, std::size_t count) {
  if (count == 0) throw InvalidArgument("generate_gap_pairs: count must be positive");
  validate(w);
  const uint64_t D = discriminant(w);
  const mpz_class p1 = to_mpz(w.p1);
  const mpz_class p2 = to_mpz(w.p2);
  const mpz_class norm = p1 * to_mpz(w.g);
  const PellSolution unit = pell_fundamental_unit(D);

  std::vector<GapPair> pairs;
  PellSolution sol{p1 * to_mpz(w.a), to_mpz(w.b)};
  for (std::size_t compositions = 0;; ++compositions) {
    if (pell_norm(sol, D) != norm) throw InternalError("norm drift on orbit of " + describe(w));
    if (!mpz_divisible_p(sol.x.get_mpz_t(), p1.get_mpz_t())) {
      throw InternalError("P1 does not divide x on orbit of " + describe(w));
    }
    const mpz_class k = sol.x / p1;
    if (k >= 2 && sol.y >= 2) {
      GapPair pair{{p2 * sol.y * sol.y, w.p2, sol.y}, {p1 * k * k, w.p1, k}};
      if (pair.large.n - pair.small.n != to_mpz(w.g) || !verify_sp(pair.small) || !verify_sp(pair.large)) {
        throw InternalError("generated pair failed verification on orbit of " + describe(w));
      }
      pairs.push_back(std::move(pair));
      if (pairs.size() == count) return pairs;
    }
    if (compositions == kMaxCompositions) {
      throw InternalError("composition cap reached on orbit of " + describe(w));
    }
    sol = pell_compose(sol, unit, D);
  }
}

}  // namespace sqprime
