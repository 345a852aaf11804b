#include "multwalk/ntkernel.hpp"

#include <algorithm>
#include <string>

namespace multwalk {

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  Factorization f;
  f.n = n;
  std::uint64_t m = n;
  auto strip = [&](std::uint64_t p) {
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) f.factors.push_back({p, e});
  };
  strip(2);
  strip(3);
  // 2-3 wheel: candidates 5, 7, 11, 13, ... (6k +- 1)
  for (std::uint64_t p = 5, step = 2; p * p <= m; p += step, step = 6 - step) {
    strip(p);
  }
  if (m > 1) f.factors.push_back({m, 1});
  std::reverse(f.factors.begin(), f.factors.end());  // largest prime first
  return f;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  const Factorization f = factorize(n);
  return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

bool is_squarefree(const Factorization& f) {
  for (const auto& pp : f.factors) {
    if (pp.exponent > 1) return false;
  }
  return true;
}

std::uint64_t euler_phi(const Factorization& f) {
  std::uint64_t phi = 1;
  for (const auto& pp : f.factors) {
    phi *= pp.prime - 1;
    for (std::uint32_t e = 1; e < pp.exponent; ++e) phi *= pp.prime;
  }
  return phi;
}

std::uint32_t omega(const Factorization& f) {
  return static_cast<std::uint32_t>(f.factors.size());
}

std::uint64_t nth_largest_prime_factor(const Factorization& f,
                                       std::uint32_t rank) {
  if (rank == 0) throw DomainError("nth_largest_prime_factor: rank >= 1");
  if (rank > f.factors.size()) return 1;
  return f.factors[rank - 1].prime;  // factors are sorted descending
}

std::uint64_t sopfr(const Factorization& f) {
  std::uint64_t b = 0;
  for (const auto& pp : f.factors) b += pp.prime * pp.exponent;
  return b;
}

std::vector<DivisorInfo> divisors_with_phi(const Factorization& f) {
  std::vector<DivisorInfo> out;
  out.push_back({1, 1, 0});
  for (const auto& pp : f.factors) {
    const std::size_t base = out.size();
    std::uint64_t pe = 1;       // p^j
    std::uint64_t phi_pe = 1;   // phi(p^j) = p^{j-1}(p-1) for j >= 1
    for (std::uint32_t j = 1; j <= pp.exponent; ++j) {
      phi_pe = (j == 1) ? (pp.prime - 1) : phi_pe * pp.prime;
      pe *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) {
        out.push_back({out[i].d * pe, out[i].phi * phi_pe, out[i].omega + 1});
      }
    }
  }
  return out;
}

SpfTable::SpfTable(std::uint64_t limit, std::uint64_t cap) : limit_(limit) {
  if (limit < 1) throw DomainError("SpfTable: limit must be >= 1");
  if (limit > cap) {
    throw CapacityError("SpfTable: limit " + std::to_string(limit) +
                        " exceeds cap " + std::to_string(cap));
  }
  spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {  // i is prime
      for (std::uint64_t j = i; j <= limit; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
      }
    }
  }
}

BoundsRow p1_p2_b(const SpfTable& table, std::uint32_t n) {
  if (n < 2 || n > table.limit()) {
    throw DomainError("p1_p2_b: n out of table range");
  }
  BoundsRow row{n, 1, 1, 0};
  std::uint32_t m = n;
  while (m > 1) {
    const std::uint32_t p = table.spf(m);
    row.p2 = row.p1;  // spf yields primes in increasing order
    row.p1 = p;
    while (m % p == 0) {
      m /= p;
      row.b += p;
    }
  }
  return row;
}

}  // namespace multwalk
