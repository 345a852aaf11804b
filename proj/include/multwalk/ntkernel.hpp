#pragma once

#include <cstdint>
#include <vector>

#include "multwalk/errors.hpp"

namespace multwalk {

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;
};

// Prime factorization of n >= 1, primes in strictly decreasing order
// (largest first, so factors[0].prime is P1 when it exists).
struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;
};

// Trial division (2,3 then a 2-3 wheel).  Fine for desk-scale n; worst case
// is O(sqrt(n)) for n prime.  Throws DomainError on n == 0.
Factorization factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);
bool is_squarefree(const Factorization& f);

std::uint64_t euler_phi(const Factorization& f);
std::uint32_t omega(const Factorization& f);

// i-th largest distinct prime factor (rank 1 = largest); returns 1 when n has
// fewer than `rank` distinct primes, so P1(1) = P2(p) = 1.  rank >= 1.
std::uint64_t nth_largest_prime_factor(const Factorization& f, std::uint32_t rank);

// Sum of prime factors with multiplicity; B(1) = 0.
std::uint64_t sopfr(const Factorization& f);

struct DivisorInfo {
  std::uint64_t d;
  std::uint64_t phi;     // Euler phi of d
  std::uint32_t omega;   // distinct primes of d
};

// All divisors of n with phi and omega attached.  No particular order.
std::vector<DivisorInfo> divisors_with_phi(const Factorization& f);

inline constexpr std::uint64_t kDefaultSieveCap = 100'000'000;

// Smallest-prime-factor table for 2..limit (spf[0] = spf[1] = 0).
class SpfTable {
 public:
  explicit SpfTable(std::uint64_t limit,
                    std::uint64_t cap = kDefaultSieveCap);

  std::uint64_t limit() const { return limit_; }
  std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

struct BoundsRow {
  std::uint64_t n;
  std::uint64_t p1;  // largest distinct prime factor, 1 if none
  std::uint64_t p2;  // second largest distinct prime factor, 1 if none
  std::uint64_t b;   // sum of prime factors with multiplicity
};

BoundsRow p1_p2_b(const SpfTable& table, std::uint32_t n);

// Streams p1_p2_b rows for n = 2..limit without building per-n vectors.
template <typename Visit>
void for_each_p1_p2_b(const SpfTable& table, Visit&& visit) {
  for (std::uint32_t n = 2; n <= table.limit(); ++n) {
    visit(p1_p2_b(table, n));
  }
}

}  // namespace multwalk
