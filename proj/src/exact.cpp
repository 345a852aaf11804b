#include "multwalk/exact.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>

#include "multwalk/compensated.hpp"

namespace multwalk {

namespace {

std::mutex g_memo_mutex;
std::unordered_map<std::uint64_t, Rational>& memo() {
  static std::unordered_map<std::uint64_t, Rational> m;
  return m;
}

bool memo_lookup(std::uint64_t n, Rational& out) {
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  auto it = memo().find(n);
  if (it == memo().end()) return false;
  out = it->second;
  return true;
}

void memo_store(std::uint64_t n, const Rational& v) {
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  memo().emplace(n, v);  // first writer wins; all writers agree anyway
}

void require_prime(std::uint64_t p, const char* who) {
  if (!is_prime(p)) {
    throw DomainError(std::string(who) + ": " + std::to_string(p) +
                      " is not prime");
  }
}

}  // namespace

std::size_t exact_cache_size() {
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  return memo().size();
}

void exact_cache_clear() {
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  memo().clear();
}

Rational a_prime_power(std::uint64_t p, std::uint32_t k) {
  require_prime(p, "a_prime_power");
  if (k == 0) throw DomainError("a_prime_power: k must be >= 1");
  return Rational(k) * Rational(p - 1) + Rational(1);
}

Rational a_recursive(std::uint64_t n) {
  if (n == 0) throw DomainError("a_recursive: n must be >= 1");
  if (n == 1) return Rational(0);
  Rational cached;
  if (memo_lookup(n, cached)) return cached;

  const Factorization f = factorize(n);
  const std::vector<DivisorInfo> divs = divisors_with_phi(f);

  // No lock is held across these recursive calls; concurrent threads may
  // duplicate a computation but always store identical exact values.
  Rational num(n);
  std::uint64_t phi_n = 1;
  for (const auto& div : divs) {
    if (div.d == n) {
      phi_n = div.phi;
      continue;
    }
    num += Rational(div.phi) * a_recursive(div.d);
  }
  Rational result = num / Rational(n - phi_n);
  memo_store(n, result);
  return result;
}

Rational a_squarefree(std::uint64_t n) {
  if (n == 0) throw DomainError("a_squarefree: n must be >= 1");
  if (n == 1) return Rational(0);
  const Factorization f = factorize(n);
  if (!is_squarefree(f)) {
    throw DomainError("a_squarefree: " + std::to_string(n) +
                      " is not squarefree");
  }
  // a(n) = sum over divisors d > 1 of (-1)^{omega(d)+1} d/(d - phi(d));
  // d/(d - phi(d)) is the expected wait for the walk to pick up all of d.
  Rational sum(0);
  for (const auto& div : divisors_with_phi(f)) {
    if (div.d == 1) continue;
    Rational term(div.d, div.d - div.phi);
    sum += (div.omega % 2 == 1) ? term : -term;
  }
  return sum;
}

Rational a_two_primes(std::uint64_t p, std::uint64_t q) {
  require_prime(p, "a_two_primes");
  require_prime(q, "a_two_primes");
  if (p == q) throw DomainError("a_two_primes: primes must be distinct");
  // a(pq) = p + q - pq/(p+q-1)
  return Rational(p) + Rational(q) -
         Rational(p) * Rational(q) / Rational(p + q - 1);
}

Rational residual_wait(std::uint64_t p, std::uint64_t q) {
  require_prime(p, "residual_wait");
  require_prime(q, "residual_wait");
  if (q >= p) throw DomainError("residual_wait: requires q < p");
  // a(pq) - p = q(q-1)/(p+q-1): the excess over the dominant-prime wait.
  return Rational(q) * Rational(q - 1) / Rational(p + q - 1);
}

double approx_top2(const Factorization& f) {
  const double p1 = static_cast<double>(nth_largest_prime_factor(f, 1));
  const double p2 = static_cast<double>(nth_largest_prime_factor(f, 2));
  if (p2 == 1.0) return p1;
  return p1 + p2 * p2 / (p1 + p2);
}

double approx_top2(std::uint64_t n) { return approx_top2(factorize(n)); }

// ---------------------------------------------------------------------------
// Markov-chain oracle
// ---------------------------------------------------------------------------

namespace {

// gcd(g*r, n) without overflow: gcd(x, n) = gcd(x mod n, n), and x mod n = 0
// means n | x, i.e. the gcd is n itself.
std::uint64_t gcd_product_mod(std::uint64_t g, std::uint64_t r,
                              std::uint64_t n) {
  const std::uint64_t pm =
      static_cast<std::uint64_t>(static_cast<unsigned __int128>(g) * r % n);
  return pm == 0 ? n : std::gcd(pm, n);
}

}  // namespace

Rational a_markov(std::uint64_t n, std::uint64_t divisor_cap) {
  if (n == 0) throw DomainError("a_markov: n must be >= 1");
  if (n == 1) return Rational(0);

  // States are divisor classes R_d = {s : gcd(s, n) = d}.  From class d the
  // multiplier r sends the walk to class gcd(d*r, n); we count those
  // transitions exactly by enumerating all n multipliers per class.
  const Factorization f = factorize(n);
  std::vector<std::uint64_t> divisors;
  for (const auto& info : divisors_with_phi(f)) divisors.push_back(info.d);
  std::sort(divisors.begin(), divisors.end());
  const std::size_t nd = divisors.size();
  if (nd > divisor_cap) {
    throw CapacityError("a_markov: d(n) = " + std::to_string(nd) +
                        " exceeds cap " + std::to_string(divisor_cap));
  }

  auto index = [&](std::uint64_t d) {
    return static_cast<std::size_t>(
        std::lower_bound(divisors.begin(), divisors.end(), d) -
        divisors.begin());
  };

  // counts[g][t] = #{r in [0, n) : gcd(g*r, n) = divisors[t]}
  std::vector<std::vector<std::uint64_t>> counts(
      nd, std::vector<std::uint64_t>(nd, 0));
  for (std::size_t gi = 0; gi + 1 < nd; ++gi) {  // skip the absorbing class n
    const std::uint64_t g = divisors[gi];
    for (std::uint64_t r = 0; r < n; ++r) {
      ++counts[gi][index(gcd_product_mod(g, r, n))];
    }
  }

  // Expected absorption times E_g solve  n E_g = n + sum_t counts[g][t] E_t
  // over transient classes (t = n contributes nothing).  Solve exactly by
  // Gaussian elimination over the rationals.
  const std::size_t m = nd - 1;  // transient classes
  std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      aug[i][j] = (i == j) ? Rational(n) - Rational(counts[i][j])
                           : -Rational(counts[i][j]);
    }
    aug[i][m] = Rational(n);
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && aug[pivot][col] == Rational(0)) ++pivot;
    if (pivot == m) throw DomainError("a_markov: singular system");
    std::swap(aug[col], aug[pivot]);
    for (std::size_t row = 0; row < m; ++row) {
      if (row == col || aug[row][col] == Rational(0)) continue;
      Rational factor = aug[row][col] / aug[col][col];
      for (std::size_t j = col; j <= m; ++j) {
        aug[row][j] -= factor * aug[col][j];
      }
    }
  }
  return aug[index(1)][m] / aug[index(1)][index(1)];
}

// ---------------------------------------------------------------------------
// Tables and searches
// ---------------------------------------------------------------------------

AValueTable build_exact_table(std::uint64_t limit, std::uint64_t guard) {
  if (limit < 1) throw DomainError("build_exact_table: limit must be >= 1");
  if (limit > guard) {
    throw CapacityError("build_exact_table: limit " + std::to_string(limit) +
                        " exceeds guard " + std::to_string(guard));
  }
  AValueTable table;
  table.limit = limit;
  table.values.resize(limit + 1);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    table.values[n] = a_recursive(n);
  }
  return table;
}

std::vector<double> build_float_table(std::uint64_t limit, std::uint64_t cap) {
  if (limit < 1) throw DomainError("build_float_table: limit must be >= 1");
  if (limit > cap) {
    throw CapacityError("build_float_table: limit " + std::to_string(limit) +
                        " exceeds cap " + std::to_string(cap));
  }

  // In-place totient sieve (u32 entries: the cap keeps limit < 2^32).
  std::vector<std::uint32_t> phi(limit + 1);
  std::iota(phi.begin(), phi.end(), std::uint32_t{0});
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (phi[i] == i) {  // prime
      for (std::uint64_t j = i; j <= limit; j += i) {
        phi[j] -= phi[j] / static_cast<std::uint32_t>(i);
      }
    }
  }

  // Forward scatter: once a[d] is final, add phi(d) a(d) into its proper
  // multiples (compensated).  At index n the accumulated sum is exactly
  // sum_{d|n, d<n} phi(d) a(d), so a[n] = (n + acc[n]) / (n - phi(n)).
  // For prime p: acc = phi(1) a(1) = 0, so a[p] = p / 1 — exact in double.
  std::vector<double> a(limit + 1, 0.0);
  std::vector<double> acc(limit + 1, 0.0);
  std::vector<double> comp(limit + 1, 0.0);
  for (std::uint64_t d = 2; d <= limit; ++d) {
    a[d] = (static_cast<double>(d) + (acc[d] + comp[d])) /
           static_cast<double>(d - phi[d]);
    const double contrib = static_cast<double>(phi[d]) * a[d];
    for (std::uint64_t j = 2 * d; j <= limit; j += d) {
      const double x = contrib;
      const double t = acc[j] + x;
      if (std::abs(acc[j]) >= std::abs(x)) {
        comp[j] += (acc[j] - t) + x;
      } else {
        comp[j] += (x - t) + acc[j];
      }
      acc[j] = t;
    }
  }
  return a;
}

std::vector<std::uint64_t> search_integer_values(std::uint64_t limit,
                                                 std::uint64_t guard) {
  if (limit > guard) {
    throw CapacityError("search_integer_values: limit " +
                        std::to_string(limit) + " exceeds guard " +
                        std::to_string(guard));
  }
  std::vector<std::uint64_t> hits;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (omega(factorize(n)) < 2) continue;  // prime powers are integers by design
    if (a_recursive(n).is_integer()) hits.push_back(n);
  }
  return hits;
}

std::vector<NearInteger> nearest_integer_candidates(std::uint64_t limit,
                                                    std::size_t count,
                                                    std::uint64_t guard) {
  if (limit > guard) {
    throw CapacityError("nearest_integer_candidates: limit " +
                        std::to_string(limit) + " exceeds guard " +
                        std::to_string(guard));
  }
  std::vector<NearInteger> all;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (omega(factorize(n)) < 2) continue;
    Rational v = a_recursive(n);
    all.push_back({n, v, distance_to_nearest_integer(v)});
  }
  auto closer = [](const NearInteger& lhs, const NearInteger& rhs) {
    if (lhs.distance != rhs.distance) return lhs.distance < rhs.distance;
    return lhs.n < rhs.n;
  };
  if (all.size() > count) {
    std::partial_sort(all.begin(), all.begin() + count, all.end(), closer);
    all.resize(count);
  } else {
    std::sort(all.begin(), all.end(), closer);
  }
  return all;
}

}  // namespace multwalk
