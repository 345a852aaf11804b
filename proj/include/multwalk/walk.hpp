#pragma once

#include <cstdint>
#include <optional>

#include "multwalk/ntkernel.hpp"

namespace multwalk {

enum class WalkMode {
  kRawResidue,      // state = residue mod n, step: s <- s*r mod n
  kDivisorLattice,  // state = gcd(s, n), step: g <- g * gcd(r, n/g)
};

// Both modes absorb at the same step for the same draw sequence, because
// gcd(s*r, n) = g*gcd(r, n/g) when g = gcd(s, n).  The lattice mode never
// forms products larger than n, so it is the safe choice for huge n; the raw
// mode can additionally count distinct residues visited.

inline constexpr std::uint64_t kDefaultMaxSteps = 1'000'000;
inline constexpr std::uint64_t kDistinctTrackLimit = 1'000'000;

struct WalkConfig {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = kDefaultMaxSteps;
  WalkMode mode = WalkMode::kRawResidue;
};

struct WalkOutcome {
  std::uint64_t steps = 0;             // multiplications performed (absorbing one included)
  std::uint64_t distinct_residues = 0; // raw mode with n <= kDistinctTrackLimit, else 0
  bool censored = false;               // true when max_steps hit before absorption
};

// One walk from state 1 to absorption at 0.  n >= 2.
WalkOutcome simulate_one(const WalkConfig& config);

struct EstimateReport {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  double mean = 0.0;        // sample mean of steps
  double variance = 0.0;    // unbiased sample variance
  double std_error = 0.0;   // sqrt(variance / trials)
  std::uint64_t censored_count = 0;
};

struct EstimateOptions {
  std::optional<WalkMode> mode;  // nullopt = auto (lattice when n > 10^6)
  std::uint64_t max_steps = kDefaultMaxSteps;
  std::uint32_t threads = 1;
};

WalkMode choose_mode(std::uint64_t n);

// Monte Carlo estimate of a(n) over `trials` independent walks.  Trial i uses
// RNG stream substream_seed(seed, i); step counts are aggregated as exact
// 128-bit integers, so the report is byte-for-byte identical for any thread
// count or scheduling.  trials >= 2.
EstimateReport estimate_a(std::uint64_t n, std::uint64_t trials,
                          std::uint64_t seed,
                          const EstimateOptions& options = {});

// Samples max_p X_p over the distinct primes p | n, X_p geometric with
// success probability 1/p — the heavy-tail surrogate for a(n) on squarefree n.
// Requires squarefree n >= 2; never censors.
EstimateReport sample_geometric_max(const Factorization& f,
                                    std::uint64_t trials, std::uint64_t seed,
                                    std::uint32_t threads = 1);

}  // namespace multwalk
