#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "multwalk/ntkernel.hpp"
#include "multwalk/rational.hpp"

namespace multwalk {

// Expected absorption time a(n) of the mod-n multiplication walk, exactly.
//
// The walk starts at 1 and repeatedly multiplies by a uniform residue mod n;
// a(n) is the expected number of multiplications until the state hits 0.
// a(1) = 0 (already absorbed), a(p) = p, and for prime powers
// a(p^k) = k(p-1) + 1.

// Closed form a(p^k) = k(p-1) + 1.  p must be prime, k >= 1.
Rational a_prime_power(std::uint64_t p, std::uint32_t k);

// Divisor recursion  a(n) = (n + sum_{d|n, d<n} phi(d) a(d)) / (n - phi(n)),
// memoized in a process-wide thread-safe cache shared with the table builder.
Rational a_recursive(std::uint64_t n);

// Inclusion-exclusion for squarefree n:
//   a(n) = sum_{d|n, d>1} (-1)^{omega(d)+1} d / (d - phi(d)).
// Throws DomainError when n is not squarefree.
Rational a_squarefree(std::uint64_t n);

// Two distinct primes: a(pq) = p + q - pq/(p+q-1).
Rational a_two_primes(std::uint64_t p, std::uint64_t q);

// Expected extra wait beyond p for n = pq, q < p:  q(q-1)/(p+q-1).
// Monotone in q and always less than q.
Rational residual_wait(std::uint64_t p, std::uint64_t q);

// Two-term approximation P1 + P2^2/(P1+P2) (just P1 when omega(n) <= 1).
double approx_top2(std::uint64_t n);
double approx_top2(const Factorization& f);

inline constexpr std::uint64_t kDefaultDivisorCap = 1024;

// Independent oracle: builds the divisor-class absorbing chain of the walk by
// direct enumeration of all n transitions per class and solves the expected-
// absorption system exactly.  O(n * d(n)) counting plus an O(d(n)^3) rational
// solve; refuses d(n) > divisor_cap.  Shares no code with the formulas above.
Rational a_markov(std::uint64_t n, std::uint64_t divisor_cap = kDefaultDivisorCap);

inline constexpr std::uint64_t kDefaultExactLimit = 100'000;

struct AValueTable {
  std::uint64_t limit = 0;
  std::vector<Rational> values;  // values[n] = a(n); values[0] unused (= 0)
};

// Exact a(n) for all n <= limit via the shared memoized recursion.
// CapacityError when limit exceeds `guard`.
AValueTable build_exact_table(std::uint64_t limit,
                              std::uint64_t guard = kDefaultExactLimit);

// Double-precision a(n) for all n <= limit in O(limit log limit):
// an in-place phi sieve plus a single forward "scatter" pass that adds
// phi(d) a(d) into every proper multiple of d with compensated summation.
// Primes come out exactly (a[p] == p as a double).  CapacityError when limit
// exceeds `cap`.
std::vector<double> build_float_table(std::uint64_t limit,
                                      std::uint64_t cap = kDefaultSieveCap);

// All n <= limit with omega(n) >= 2 and a(n) an integer (exact test).
// Expected empty at desk scale.  CapacityError when limit exceeds `guard`.
std::vector<std::uint64_t> search_integer_values(
    std::uint64_t limit, std::uint64_t guard = kDefaultExactLimit);

struct NearInteger {
  std::uint64_t n;
  Rational value;
  Rational distance;  // exact distance to the nearest integer
};

// The `count` composites (omega >= 2) with a(n) closest to an integer,
// sorted by distance then n.  Companion diagnostic to search_integer_values.
std::vector<NearInteger> nearest_integer_candidates(
    std::uint64_t limit, std::size_t count,
    std::uint64_t guard = kDefaultExactLimit);

// Shared-memo introspection (the cache backs a_recursive and the tables).
std::size_t exact_cache_size();
void exact_cache_clear();

}  // namespace multwalk
