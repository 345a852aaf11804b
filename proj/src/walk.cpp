#include "multwalk/walk.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_set>
#include <vector>

#include "multwalk/rng.hpp"

namespace multwalk {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % n);
}

// Core walk loop.  `distinct` may be null (not tracked).
WalkOutcome run_walk(std::uint64_t n, std::uint64_t max_steps, WalkMode mode,
                     Xoshiro256& rng,
                     std::unordered_set<std::uint64_t>* distinct) {
  WalkOutcome out;
  if (mode == WalkMode::kRawResidue) {
    std::uint64_t s = 1;
    if (distinct) distinct->insert(s);
    for (std::uint64_t step = 1; step <= max_steps; ++step) {
      const std::uint64_t r = uniform_below(rng, n);
      s = mulmod(s, r, n);
      if (distinct) distinct->insert(s);
      if (s == 0) {
        out.steps = step;
        if (distinct) out.distinct_residues = distinct->size();
        return out;
      }
    }
  } else {
    std::uint64_t g = 1;
    for (std::uint64_t step = 1; step <= max_steps; ++step) {
      const std::uint64_t r = uniform_below(rng, n);
      g *= std::gcd(r, n / g);  // result divides n: no overflow possible
      if (g == n) {
        out.steps = step;
        return out;
      }
    }
  }
  out.steps = max_steps;
  out.censored = true;
  if (distinct) out.distinct_residues = distinct->size();
  return out;
}

struct Partials {
  unsigned __int128 sum_steps = 0;
  unsigned __int128 sum_steps_sq = 0;
  std::uint64_t censored = 0;

  void absorb(const Partials& o) {
    sum_steps += o.sum_steps;
    sum_steps_sq += o.sum_steps_sq;
    censored += o.censored;
  }
};

EstimateReport finish_report(std::uint64_t n, std::uint64_t trials,
                             const Partials& p) {
  EstimateReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.censored_count = p.censored;
  const double s1 = static_cast<double>(p.sum_steps);
  const double s2 = static_cast<double>(p.sum_steps_sq);
  const double t = static_cast<double>(trials);
  rep.mean = s1 / t;
  // Unbiased sample variance from exact power sums: (T*S2 - S1^2)/(T(T-1)).
  rep.variance = (t * s2 - s1 * s1) / (t * (t - 1.0));
  if (rep.variance < 0.0) rep.variance = 0.0;  // exact-zero spread roundoff
  rep.std_error = std::sqrt(rep.variance / t);
  return rep;
}

// Runs `trials` independent jobs across `threads` workers and combines
// integer partials.  Integer addition commutes, so any work distribution
// yields identical sums; trial i always uses substream_seed(seed, i).
template <typename Job>
Partials run_trials(std::uint64_t trials, std::uint32_t threads, Job job) {
  const std::uint32_t hw = std::thread::hardware_concurrency();
  std::uint32_t t = threads == 0 ? 1 : threads;
  if (hw != 0 && t > 4 * hw) t = 4 * hw;
  if (t > trials) t = static_cast<std::uint32_t>(trials);

  std::vector<Partials> parts(t);
  if (t == 1) {
    for (std::uint64_t i = 0; i < trials; ++i) job(i, parts[0]);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::uint32_t w = 0; w < t; ++w) {
      pool.emplace_back([&, w] {
        for (;;) {
          const std::uint64_t i = next.fetch_add(1);
          if (i >= trials) break;
          job(i, parts[w]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  Partials total;
  for (const auto& p : parts) total.absorb(p);
  return total;
}

}  // namespace

WalkMode choose_mode(std::uint64_t n) {
  return n > kDistinctTrackLimit ? WalkMode::kDivisorLattice
                                 : WalkMode::kRawResidue;
}

WalkOutcome simulate_one(const WalkConfig& config) {
  if (config.n < 2) throw DomainError("simulate_one: n must be >= 2");
  if (config.max_steps == 0) {
    throw DomainError("simulate_one: max_steps must be >= 1");
  }
  Xoshiro256 rng(config.seed);
  const bool track = config.mode == WalkMode::kRawResidue &&
                     config.n <= kDistinctTrackLimit;
  std::unordered_set<std::uint64_t> distinct;
  return run_walk(config.n, config.max_steps, config.mode, rng,
                  track ? &distinct : nullptr);
}

EstimateReport estimate_a(std::uint64_t n, std::uint64_t trials,
                          std::uint64_t seed, const EstimateOptions& options) {
  if (n < 2) throw DomainError("estimate_a: n must be >= 2");
  if (trials < 2) throw DomainError("estimate_a: trials must be >= 2");
  if (options.max_steps == 0) {
    throw DomainError("estimate_a: max_steps must be >= 1");
  }
  const WalkMode mode = options.mode.value_or(choose_mode(n));

  Partials total = run_trials(
      trials, options.threads, [&](std::uint64_t i, Partials& p) {
        Xoshiro256 rng(substream_seed(seed, i));
        const WalkOutcome out =
            run_walk(n, options.max_steps, mode, rng, nullptr);
        p.sum_steps += out.steps;
        p.sum_steps_sq +=
            static_cast<unsigned __int128>(out.steps) * out.steps;
        if (out.censored) ++p.censored;
      });
  return finish_report(n, trials, total);
}

EstimateReport sample_geometric_max(const Factorization& f,
                                    std::uint64_t trials, std::uint64_t seed,
                                    std::uint32_t threads) {
  if (f.n < 2) throw DomainError("sample_geometric_max: n must be >= 2");
  if (!is_squarefree(f)) {
    throw DomainError("sample_geometric_max: n must be squarefree");
  }
  if (trials < 2) {
    throw DomainError("sample_geometric_max: trials must be >= 2");
  }

  // One geometric draw per prime (inversion method), largest prime first.
  std::vector<double> log_q;  // log(1 - 1/p) per prime, walk order
  log_q.reserve(f.factors.size());
  for (const auto& pp : f.factors) {
    log_q.push_back(std::log1p(-1.0 / static_cast<double>(pp.prime)));
  }

  Partials total = run_trials(
      trials, threads, [&](std::uint64_t i, Partials& p) {
        Xoshiro256 rng(substream_seed(seed, i));
        std::uint64_t max_draw = 1;
        for (const double lq : log_q) {
          const double u = uniform_unit(rng);
          // X = ceil(log(1-u)/log(1-1/p)) is geometric(1/p) on {1, 2, ...}.
          const double x = std::ceil(std::log1p(-u) / lq);
          const std::uint64_t draw =
              x < 1.0 ? 1 : static_cast<std::uint64_t>(x);
          if (draw > max_draw) max_draw = draw;
        }
        p.sum_steps += max_draw;
        p.sum_steps_sq +=
            static_cast<unsigned __int128>(max_draw) * max_draw;
      });
  return finish_report(f.n, trials, total);
}

}  // namespace multwalk
