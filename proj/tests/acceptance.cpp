// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.  Tolerances and bands are pinned here, not configurable.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "multwalk/asymptotics.hpp"
#include "multwalk/exact.hpp"
#include "multwalk/walk.hpp"

using namespace multwalk;

namespace {

int g_failures = 0;

void report(int id, const std::string& label, bool pass,
            const std::string& note = "") {
  std::printf("%s  %2d  %s%s%s\n", pass ? "PASS" : "FAIL", id, label.c_str(),
              note.empty() ? "" : "  -- ", note.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string run_command(const std::string& cmd, int& exit_code) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    exit_code = -1;
    return out;
  }
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  exit_code = pclose(pipe);
  return out;
}

// 1. a(6) = 7/2 by all three exact routes.
void criterion_1() {
  const Rational want(7, 2);
  const bool pass = a_recursive(6) == want && a_squarefree(6) == want &&
                    a_markov(6) == want && want.to_double() == 3.5;
  report(1, "a(6) = 7/2 by recursive, squarefree, and Markov routes", pass);
}

// 2. a_recursive(p^k) = k(p-1)+1 for p <= 50, k <= 6.
void criterion_2() {
  bool pass = true;
  std::string note;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    std::uint64_t pk = 1;
    for (std::uint32_t k = 1; k <= 6; ++k) {
      pk *= p;
      if (a_recursive(pk) != Rational(k) * Rational(p - 1) + Rational(1)) {
        pass = false;
        note = "first mismatch at p=" + std::to_string(p) +
               " k=" + std::to_string(k);
        break;
      }
    }
    if (!pass) break;
  }
  report(2, "prime-power closed form matches the recursion (p<=50, k<=6)",
         pass, note);
}

// 3. Cross-formula equivalence: squarefree to 1e4, Markov to 2000.
void criterion_3() {
  bool pass = true;
  std::string note;
  for (std::uint64_t n = 2; n <= 10000 && pass; ++n) {
    if (!is_squarefree(factorize(n))) continue;
    if (a_squarefree(n) != a_recursive(n)) {
      pass = false;
      note = "squarefree mismatch at n=" + std::to_string(n);
    }
  }
  for (std::uint64_t n = 2; n <= 2000 && pass; ++n) {
    if (a_markov(n) != a_recursive(n)) {
      pass = false;
      note = "Markov mismatch at n=" + std::to_string(n);
    }
  }
  report(3, "squarefree (n<=1e4) and Markov (n<=2000) agree with recursion",
         pass, note);
}

// 4. P1 <= a <= B on the float table to 1e5, equal exactly iff prime.
void criterion_4() {
  const std::uint64_t limit = 100000;
  const SpfTable spf(limit);
  const std::vector<double> a = build_float_table(limit);
  bool pass = true;
  std::string note;
  for (std::uint32_t n = 2; n <= limit; ++n) {
    const BoundsRow row = p1_p2_b(spf, n);
    const double p1 = static_cast<double>(row.p1);
    const double b = static_cast<double>(row.b);
    const bool prime = row.p1 == n;
    const bool ok = prime ? (a[n] == p1 && a[n] == b)
                          : (a[n] > p1 && a[n] < b);
    if (!ok) {
      pass = false;
      note = "violated at n=" + std::to_string(n);
      break;
    }
  }
  report(4, "P1(n) <= a(n) <= B(n) to 1e5, equality exactly at primes", pass,
         note);
}

// 5. Monte Carlo 99.9% coverage with at most one miss across six moduli.
void criterion_5() {
  const double z999 = 3.290527;  // two-sided 99.9% normal quantile
  int misses = 0;
  std::string note;
  for (std::uint64_t n : {4, 6, 12, 30, 100, 210}) {
    const EstimateReport rep = estimate_a(n, 100000, 0xA5F00D + n);
    const double exact = a_recursive(n).to_double();
    if (std::abs(rep.mean - exact) > z999 * rep.std_error) {
      ++misses;
      note += (note.empty() ? "" : "; ") + std::string("n=") +
              std::to_string(n) + " off by " +
              std::to_string(std::abs(rep.mean - exact) / rep.std_error) +
              " se";
    }
  }
  report(5, "Monte Carlo 99.9% CI covers a(n) (<=1 miss of 6)", misses <= 1,
         note);
}

// 6. D0 from the series vs the closed form.
void criterion_6() {
  ConstantSpec spec;  // ell = 0, tol defaults pinned by the spec struct
  const ConstantValue series = constant_D(spec);
  const double closed = d0_closed_form();
  const bool agree = std::abs(series.value - closed) <= 1e-9;
  const bool sig3 = std::abs(series.value - 1.495) <= 5e-4 &&
                    std::abs(closed - 1.495) <= 5e-4;
  report(6, "D0 series agrees with (8 zeta(3/2)/3)(1-pi/4) within 1e-9",
         agree && sig3,
         "series=" + std::to_string(series.value) +
             " closed=" + std::to_string(closed));
}

// 7. Density band at 1e6; drift across decades reported, not asserted.
void criterion_7() {
  const SpfTable spf(1000000);
  std::uint64_t count = 0;
  double d4 = 0.0, d5 = 0.0, d6 = 0.0;
  for (std::uint32_t n = 2; n <= 1000000; ++n) {
    const BoundsRow row = p1_p2_b(spf, n);
    if (row.p2 * row.p2 < row.p1) ++count;
    if (n == 10000) d4 = static_cast<double>(count) / (n - 1);
    if (n == 100000) d5 = static_cast<double>(count) / (n - 1);
    if (n == 1000000) d6 = static_cast<double>(count) / (n - 1);
  }
  const bool pass = d6 >= 0.60 && d6 <= 0.65;
  char drift[160];
  std::snprintf(drift, sizeof drift,
                "density 1e4=%.5f 1e5=%.5f 1e6=%.5f (drift toward 0.623-0.625 "
                "reported, not asserted)",
                d4, d5, d6);
  report(7, "P2^2 < P1 density at 1e6 in [0.60, 0.65]", pass, drift);
}

// 8 and 9 share one pass to 1e6.
void criteria_8_9() {
  const std::uint64_t xmax = 1000000;
  const SpfTable spf(xmax);
  const std::vector<double> a = build_float_table(xmax);
  const std::vector<std::uint64_t> grid = {10000, 100000, 1000000};
  const std::vector<RangeSummary> rows = survey(grid, a, spf);

  const double r4 = rows[0].ratio_avg_order;
  const double r6 = rows[2].ratio_avg_order;
  const bool pass8 =
      r6 >= 0.5 && r6 <= 2.0 && std::abs(r6 - 1.0) < std::abs(r4 - 1.0);
  char note8[120];
  std::snprintf(note8, sizeof note8, "ratio_avg_order 1e4=%.5f 1e6=%.5f", r4,
                r6);
  report(8, "avg-order ratio at 1e6 in [0.5, 2.0], strictly closer than 1e4",
         pass8, note8);

  const double d5 = rows[1].ratio_diff;
  const double d6 = rows[2].ratio_diff;
  const bool pass9 =
      d6 >= 0.5 && d6 <= 2.0 && std::abs(d6 - 1.0) < std::abs(d5 - 1.0);
  char note9[120];
  std::snprintf(note9, sizeof note9, "ratio_diff 1e5=%.5f 1e6=%.5f", d5, d6);
  report(9, "difference ratio at 1e6 in [0.5, 2.0], strictly closer than 1e5",
         pass9, note9);
}

// 10. No composite n <= 1e4 with integer a(n).
void criterion_10() {
  const auto hits = search_integer_values(10000);
  std::string note;
  for (std::uint64_t n : hits) note += std::to_string(n) + " ";
  report(10, "no non-prime-power n <= 1e4 with integer a(n)", hits.empty(),
         note);
}

// 11. Byte-identical simulate output across thread counts (CLI + library).
void criterion_11() {
  bool lib_pass = true;
  const EstimateReport base = estimate_a(30, 40000, 2026);
  for (std::uint32_t threads : {2u, 5u, 8u}) {
    EstimateOptions opt;
    opt.threads = threads;
    const EstimateReport rep = estimate_a(30, 40000, 2026, opt);
    lib_pass = lib_pass && rep.mean == base.mean &&
               rep.variance == base.variance &&
               rep.std_error == base.std_error &&
               rep.censored_count == base.censored_count;
  }

  const char* cli = std::getenv("MULTWALK_CLI");
  if (cli == nullptr || *cli == '\0') {
    report(11, "simulate output byte-identical across thread counts",
           false, "MULTWALK_CLI not set; cannot drive the executable");
    return;
  }
  const std::string base_cmd = std::string("\"") + cli +
                               "\" simulate 30 --trials 40000 --seed 2026";
  int rc1 = 0, rc2 = 0, rc3 = 0, rc4 = 0;
  const std::string out1 = run_command(base_cmd + " --threads 1", rc1);
  const std::string out2 = run_command(base_cmd + " --threads 8", rc2);
  const std::string out3 = run_command(base_cmd + " --threads 8 --format json", rc3);
  const std::string out4 = run_command(base_cmd + " --threads 1 --format json", rc4);
  const bool cli_pass = rc1 == 0 && rc2 == 0 && rc3 == 0 && rc4 == 0 &&
                        !out1.empty() && out1 == out2 && !out3.empty() &&
                        out3 == out4;
  report(11, "simulate output byte-identical across thread counts",
         lib_pass && cli_pass,
         lib_pass ? (cli_pass ? "" : "CLI bytes differ") : "library reports differ");
}

}  // namespace

int main() {
  std::printf("acceptance: multiplicative-walk absorption toolkit\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criteria_8_9();
  criterion_10();
  criterion_11();
  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
