#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

#include "multwalk/ntkernel.hpp"

using namespace multwalk;

TEST_CASE("factorize basics") {
  CHECK_THROWS_AS(factorize(0), DomainError);

  auto f1 = factorize(1);
  CHECK(f1.n == 1);
  CHECK(f1.factors.empty());

  auto f60 = factorize(60);
  REQUIRE(f60.factors.size() == 3);
  CHECK(f60.factors[0].prime == 5);
  CHECK(f60.factors[0].exponent == 1);
  CHECK(f60.factors[1].prime == 3);
  CHECK(f60.factors[1].exponent == 1);
  CHECK(f60.factors[2].prime == 2);
  CHECK(f60.factors[2].exponent == 2);

  auto fp = factorize(997);
  REQUIRE(fp.factors.size() == 1);
  CHECK(fp.factors[0].prime == 997);
  CHECK(fp.factors[0].exponent == 1);

  // larger composite with a big prime factor
  auto fbig = factorize(2ULL * 3 * 1000003);
  REQUIRE(fbig.factors.size() == 3);
  CHECK(fbig.factors[0].prime == 1000003);
}

TEST_CASE("factorize: primes strictly decreasing, product reconstructs n") {
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    auto f = factorize(n);
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      if (i > 0) CHECK(f.factors[i].prime < f.factors[i - 1].prime);
      for (std::uint32_t e = 0; e < f.factors[i].exponent; ++e) {
        prod *= f.factors[i].prime;
      }
    }
    CHECK(prod == n);
  }
}

TEST_CASE("is_prime and is_squarefree") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));  // 7 * 13
  CHECK(is_squarefree(factorize(30)));
  CHECK(is_squarefree(factorize(1)));
  CHECK_FALSE(is_squarefree(factorize(12)));
}

TEST_CASE("euler_phi values and multiplicativity") {
  CHECK(euler_phi(factorize(1)) == 1);
  CHECK(euler_phi(factorize(12)) == 4);
  CHECK(euler_phi(factorize(97)) == 96);
  CHECK(euler_phi(factorize(100)) == 40);

  // phi(mn) = phi(m) phi(n) for coprime m, n
  for (std::uint64_t m = 2; m <= 60; ++m) {
    for (std::uint64_t n = m + 1; n <= 60; ++n) {
      if (std::gcd(m, n) != 1) continue;
      CHECK(euler_phi(factorize(m * n)) ==
            euler_phi(factorize(m)) * euler_phi(factorize(n)));
    }
  }
}

TEST_CASE("omega, prime factor ranks, sopfr") {
  CHECK(omega(factorize(1)) == 0);
  CHECK(omega(factorize(8)) == 1);
  CHECK(omega(factorize(60)) == 3);

  auto f12 = factorize(12);
  CHECK(nth_largest_prime_factor(f12, 1) == 3);
  CHECK(nth_largest_prime_factor(f12, 2) == 2);
  CHECK(nth_largest_prime_factor(f12, 3) == 1);
  CHECK(nth_largest_prime_factor(factorize(97), 2) == 1);
  CHECK(nth_largest_prime_factor(factorize(1), 1) == 1);
  CHECK_THROWS_AS(nth_largest_prime_factor(f12, 0), DomainError);

  CHECK(sopfr(factorize(1)) == 0);
  CHECK(sopfr(factorize(12)) == 7);   // 2 + 2 + 3
  CHECK(sopfr(factorize(97)) == 97);
  CHECK(sopfr(factorize(60)) == 12);  // 2 + 2 + 3 + 5
}

TEST_CASE("divisors_with_phi: counts, phi identity, omega tags") {
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    auto f = factorize(n);
    auto divs = divisors_with_phi(f);

    std::uint64_t expected_count = 1;
    for (const auto& pp : f.factors) expected_count *= pp.exponent + 1;
    CHECK(divs.size() == expected_count);

    // sum_{d | n} phi(d) = n
    std::uint64_t phi_sum = 0;
    for (const auto& d : divs) {
      CHECK(n % d.d == 0);
      CHECK(d.phi == euler_phi(factorize(d.d)));
      CHECK(d.omega == omega(factorize(d.d)));
      phi_sum += d.phi;
    }
    CHECK(phi_sum == n);
  }
}

TEST_CASE("spf table matches trial division up to 1e5") {
  const std::uint64_t limit = 100000;
  SpfTable table(limit);
  CHECK(table.limit() == limit);
  for (std::uint32_t n = 2; n <= limit; ++n) {
    CHECK(table.spf(n) == factorize(n).factors.back().prime);
  }
}

TEST_CASE("spf table respects its cap") {
  CHECK_THROWS_AS(SpfTable(2000, 1000), CapacityError);
  CHECK_NOTHROW(SpfTable(1000, 1000));
}

TEST_CASE("p1_p2_b agrees with factorize-based definitions") {
  const std::uint64_t limit = 10000;
  SpfTable table(limit);
  for (std::uint32_t n = 2; n <= limit; ++n) {
    auto row = p1_p2_b(table, n);
    auto f = factorize(n);
    CHECK(row.n == n);
    CHECK(row.p1 == nth_largest_prime_factor(f, 1));
    CHECK(row.p2 == nth_largest_prime_factor(f, 2));
    CHECK(row.b == sopfr(f));
    CHECK(row.p2 <= row.p1);
    CHECK(row.p1 <= row.b);
  }
  CHECK_THROWS_AS(p1_p2_b(table, 1), DomainError);
  CHECK_THROWS_AS(p1_p2_b(table, static_cast<std::uint32_t>(limit + 1)),
                  DomainError);
}

TEST_CASE("p1_p2_b spot values") {
  SpfTable table(100);
  auto r12 = p1_p2_b(table, 12);
  CHECK(r12.p1 == 3);
  CHECK(r12.p2 == 2);
  CHECK(r12.b == 7);
  auto r97 = p1_p2_b(table, 97);
  CHECK(r97.p1 == 97);
  CHECK(r97.p2 == 1);
  CHECK(r97.b == 97);
}

TEST_CASE("for_each_p1_p2_b streams every n once, in order") {
  SpfTable table(500);
  std::uint64_t expect = 2;
  std::uint64_t b_total = 0;
  for_each_p1_p2_b(table, [&](const BoundsRow& row) {
    CHECK(row.n == expect);
    ++expect;
    b_total += row.b;
  });
  CHECK(expect == 501);
  std::uint64_t b_direct = 0;
  for (std::uint64_t n = 2; n <= 500; ++n) b_direct += sopfr(factorize(n));
  CHECK(b_total == b_direct);
}
