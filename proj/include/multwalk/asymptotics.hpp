#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "multwalk/compensated.hpp"
#include "multwalk/errors.hpp"
#include "multwalk/ntkernel.hpp"

namespace multwalk {

// ---------------------------------------------------------------------------
// Range statistics
// ---------------------------------------------------------------------------

struct RangeSummary {
  std::uint64_t x = 0;
  double sum_a = 0.0;    // sum_{2<=n<=x} a(n)
  double sum_p1 = 0.0;   // sum of largest prime factors
  double sum_p2 = 0.0;   // sum of second-largest distinct prime factors
  double sum_b = 0.0;    // sum of B(n) = sopfr(n)
  double ratio_avg_order = 0.0;  // sum_a / (pi^2 x^2 / (12 log x))
  double ratio_diff = 0.0;       // (sum_a - sum_p1) / ((1 - pi/4) sum_p2)
  double density_split = 0.0;    // #{n<=x : P2^2 < P1} / (x-1)
};

// Summary over 2..x.  `a_values` must cover indices up to x (a float table
// from build_float_table).  The spf table must cover x as well.
RangeSummary range_summary(std::uint64_t x, std::span<const double> a_values,
                           const SpfTable& spf);

// Convenience overload that builds its own tables (guarded by `cap`).
RangeSummary range_summary(std::uint64_t x,
                           std::uint64_t cap = kDefaultSieveCap);

enum class GridKind { kGeometric, kLinear };

// Checkpoints in [xmin, xmax]: `points` values, geometric or linear spacing,
// deduplicated, always ending exactly at xmax.
std::vector<std::uint64_t> make_grid(std::uint64_t xmin, std::uint64_t xmax,
                                     std::uint32_t points, GridKind kind);

// One pass over 2..max(grid), emitting a snapshot at every grid point.
std::vector<RangeSummary> survey(std::span<const std::uint64_t> grid,
                                 std::span<const double> a_values,
                                 const SpfTable& spf);

// Convenience overload that builds the tables itself (guarded by `cap`).
std::vector<RangeSummary> survey(std::uint64_t xmax, std::uint32_t points = 8,
                                 std::uint64_t xmin = 10,
                                 GridKind kind = GridKind::kGeometric,
                                 std::uint64_t cap = kDefaultSieveCap);

// Fraction of 2 <= n <= x with P2(n)^2 < P1(n) (integer comparison; primes
// count, since P2 = 1 there).  Converges to the Golomb–Dickman-style split.
double density_split(std::uint64_t x, std::uint64_t cap = kDefaultSieveCap);

// CSV with one '#'-prefixed metadata line, then a header, then rows; floats
// at 17 significant digits with '.' separator.
void write_survey_csv(std::ostream& os, std::span<const RangeSummary> rows,
                      const std::string& meta);

// ---------------------------------------------------------------------------
// The constants D_ell in the expansion of sum (a - P1)
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kMaxEll = 8;
inline constexpr std::uint32_t kMaxZetaDerivative = 12;

struct ConstantSpec {
  std::uint32_t ell = 0;          // <= kMaxEll
  double series_tol = 1e-14;      // alternating-series truncation bound
  double zeta_tol = 1e-12;        // Euler–Maclaurin tolerance for zeta values
  std::uint64_t max_terms = 200'000'000;  // iteration budget per inner series
};

struct ConstantValue {
  double value = 0.0;
  double error_bound = 0.0;  // certified truncation/tolerance bound
};

// j-th derivative of the Riemann zeta function at s = 3/2 (j = 0 gives
// zeta(3/2) itself), via Euler–Maclaurin with certified remainder <= tol.
// j <= kMaxZetaDerivative.
double zeta_derivative(std::uint32_t j, double tol = 1e-12);

// D_ell from the double series over (h, k, i); see constant_d.cpp for the
// summation strategy (exact eta-function split + bounded alternating tail).
ConstantValue constant_D(const ConstantSpec& spec);

// Independent closed form for ell = 0:  D_0 = (8 zeta(3/2) / 3)(1 - pi/4).
double d0_closed_form(double zeta_tol = 1e-12);

struct DiffSumReport {
  std::uint64_t x = 0;
  std::uint32_t n_terms = 1;
  double sum_diff = 0.0;   // sum_{2<=n<=x} (a(n) - P1(n)), compensated
  double predicted = 0.0;  // x^{3/2}/log^2 x * sum_{l<n_terms} D_l / log^l x
  double ratio = 0.0;      // sum_diff / predicted
};

DiffSumReport diff_sum_report(std::uint64_t x, std::span<const double> a_values,
                              const SpfTable& spf, std::uint32_t n_terms = 1,
                              double series_tol = 1e-14,
                              double zeta_tol = 1e-12);

DiffSumReport diff_sum_report(std::uint64_t x, std::uint32_t n_terms = 1,
                              std::uint64_t cap = kDefaultSieveCap);

// ---------------------------------------------------------------------------
// Testable numeric primitives
// ---------------------------------------------------------------------------

namespace detail {

struct AltSum {
  double value = 0.0;
  double remainder_bound = 0.0;  // first omitted term
  std::uint64_t terms = 0;
};

// Sum_{i >= i0} (-1)^{i - i0} g(i) for positive decreasing g, truncated when
// g drops below tol; the alternating-series bound certifies the remainder.
template <typename G>
AltSum alternating_sum(std::uint64_t i0, double tol, std::uint64_t cap, G&& g) {
  CompensatedSum acc;
  double sign = 1.0;
  double prev = 0.0;
  for (std::uint64_t i = i0;; ++i) {
    const double gi = g(i);
    if (i > i0 + 1 && gi > prev) {
      throw ToleranceError("alternating_sum: terms are not decreasing");
    }
    if (gi < tol) return {acc.value(), gi, i - i0};
    if (i - i0 >= cap) {
      throw ToleranceError("alternating_sum: iteration budget exhausted");
    }
    acc.add(sign * gi);
    sign = -sign;
    prev = gi;
  }
}

// Sum_{m>=1} log(m)^j m^{-s} for s > 1 (Euler–Maclaurin, remainder <= tol).
double zeta_log_series(double s, std::uint32_t j, double tol);

// Dirichlet eta(m) = sum_{i>=1} (-1)^{i+1} i^{-m}, m >= 1 (eta(1) = log 2).
double eta(std::uint32_t m);

}  // namespace detail

}  // namespace multwalk
