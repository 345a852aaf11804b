#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multwalk/asymptotics.hpp"
#include "multwalk/exact.hpp"
#include "multwalk/version.hpp"
#include "multwalk/walk.hpp"

namespace py = pybind11;
using namespace multwalk;

namespace {

py::object to_fraction(const Rational& r) {
  static py::object fraction_type =
      py::module_::import("fractions").attr("Fraction");
  return fraction_type(py::int_(py::str(r.num().get_str())),
                       py::int_(py::str(r.den().get_str())));
}

WalkMode parse_mode(const std::string& mode, std::uint64_t n) {
  if (mode == "raw") return WalkMode::kRawResidue;
  if (mode == "lattice") return WalkMode::kDivisorLattice;
  if (mode == "auto") return choose_mode(n);
  throw DomainError("mode must be 'auto', 'raw', or 'lattice'");
}

Rational a_exact_dispatch(std::uint64_t n, const std::string& method) {
  if (method == "recursive" || method == "auto") return a_recursive(n);
  if (method == "squarefree") return a_squarefree(n);
  if (method == "markov") return a_markov(n);
  throw DomainError("method must be 'auto', 'recursive', 'squarefree', or 'markov'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "expected absorption times of the multiplicative random walk mod n";
  m.attr("__version__") = kVersion;

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<ToleranceError>(m, "ToleranceError", PyExc_RuntimeError);
  // DomainError derives from std::invalid_argument and maps to ValueError.

  // ---- integer kernel ----
  m.def(
      "factorize",
      [](std::uint64_t n) {
        std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
        for (const auto& pp : factorize(n).factors) {
          out.emplace_back(pp.prime, pp.exponent);
        }
        return out;
      },
      py::arg("n"),
      "prime factorization as [(prime, exponent), ...], largest prime first");
  m.def(
      "euler_phi", [](std::uint64_t n) { return euler_phi(factorize(n)); },
      py::arg("n"));
  m.def(
      "omega", [](std::uint64_t n) { return omega(factorize(n)); },
      py::arg("n"));
  m.def(
      "prime_factor",
      [](std::uint64_t n, std::uint32_t rank) {
        return nth_largest_prime_factor(factorize(n), rank);
      },
      py::arg("n"), py::arg("rank") = 1,
      "rank-th largest distinct prime factor (1 when absent)");
  m.def(
      "sopfr", [](std::uint64_t n) { return sopfr(factorize(n)); },
      py::arg("n"), "sum of prime factors with multiplicity");
  m.def(
      "is_squarefree",
      [](std::uint64_t n) { return is_squarefree(factorize(n)); },
      py::arg("n"));

  // ---- exact values ----
  m.def(
      "a_exact",
      [](std::uint64_t n, const std::string& method) {
        return to_fraction(a_exact_dispatch(n, method));
      },
      py::arg("n"), py::arg("method") = "auto",
      "exact a(n) as a fractions.Fraction");
  m.def(
      "a_prime_power",
      [](std::uint64_t p, std::uint32_t k) {
        return to_fraction(a_prime_power(p, k));
      },
      py::arg("p"), py::arg("k"));
  m.def(
      "a_two_primes",
      [](std::uint64_t p, std::uint64_t q) {
        return to_fraction(a_two_primes(p, q));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "residual_wait",
      [](std::uint64_t p, std::uint64_t q) {
        return to_fraction(residual_wait(p, q));
      },
      py::arg("p"), py::arg("q"), "a(pq) - p for q < p, exact");
  m.def("approx_top2",
        py::overload_cast<std::uint64_t>(&approx_top2), py::arg("n"),
        "P1 + P2^2/(P1+P2) approximation");
  m.def("build_float_table", &build_float_table, py::arg("limit"),
        py::arg("cap") = kDefaultSieveCap,
        "a(n) for n = 0..limit as doubles (a[0] = a[1] = 0)");
  m.def("search_integer_values", &search_integer_values, py::arg("limit"),
        py::arg("guard") = kDefaultExactLimit,
        "composite n <= limit with integer a(n); expected empty");

  // ---- simulation ----
  py::class_<WalkOutcome>(m, "WalkOutcome")
      .def_readonly("steps", &WalkOutcome::steps)
      .def_readonly("distinct_residues", &WalkOutcome::distinct_residues)
      .def_readonly("censored", &WalkOutcome::censored)
      .def("__repr__", [](const WalkOutcome& w) {
        return "WalkOutcome(steps=" + std::to_string(w.steps) +
               ", distinct_residues=" + std::to_string(w.distinct_residues) +
               ", censored=" + std::string(w.censored ? "True" : "False") +
               ")";
      });

  py::class_<EstimateReport>(m, "EstimateReport")
      .def_readonly("n", &EstimateReport::n)
      .def_readonly("trials", &EstimateReport::trials)
      .def_readonly("mean", &EstimateReport::mean)
      .def_readonly("variance", &EstimateReport::variance)
      .def_readonly("std_error", &EstimateReport::std_error)
      .def_readonly("censored_count", &EstimateReport::censored_count)
      .def("__repr__", [](const EstimateReport& r) {
        return "EstimateReport(n=" + std::to_string(r.n) +
               ", trials=" + std::to_string(r.trials) +
               ", mean=" + std::to_string(r.mean) +
               ", std_error=" + std::to_string(r.std_error) + ")";
      });

  m.def(
      "simulate_one",
      [](std::uint64_t n, std::uint64_t seed, std::uint64_t max_steps,
         const std::string& mode) {
        WalkConfig config;
        config.n = n;
        config.seed = seed;
        config.max_steps = max_steps;
        config.mode = parse_mode(mode, n);
        return simulate_one(config);
      },
      py::arg("n"), py::arg("seed"), py::arg("max_steps") = kDefaultMaxSteps,
      py::arg("mode") = "auto");
  m.def(
      "estimate_a",
      [](std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
         const std::string& mode, std::uint32_t threads,
         std::uint64_t max_steps) {
        EstimateOptions options;
        options.mode = parse_mode(mode, n);
        options.threads = threads;
        options.max_steps = max_steps;
        py::gil_scoped_release release;
        return estimate_a(n, trials, seed, options);
      },
      py::arg("n"), py::arg("trials"), py::arg("seed"),
      py::arg("mode") = "auto", py::arg("threads") = 1,
      py::arg("max_steps") = kDefaultMaxSteps,
      "Monte Carlo estimate; byte-stable for any thread count");
  m.def(
      "sample_geometric_max",
      [](std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
         std::uint32_t threads) {
        const Factorization f = factorize(n);
        py::gil_scoped_release release;
        return sample_geometric_max(f, trials, seed, threads);
      },
      py::arg("n"), py::arg("trials"), py::arg("seed"),
      py::arg("threads") = 1,
      "samples max of geometric waits over the primes of squarefree n");

  // ---- asymptotics ----
  py::class_<RangeSummary>(m, "RangeSummary")
      .def_readonly("x", &RangeSummary::x)
      .def_readonly("sum_a", &RangeSummary::sum_a)
      .def_readonly("sum_p1", &RangeSummary::sum_p1)
      .def_readonly("sum_p2", &RangeSummary::sum_p2)
      .def_readonly("sum_b", &RangeSummary::sum_b)
      .def_readonly("ratio_avg_order", &RangeSummary::ratio_avg_order)
      .def_readonly("ratio_diff", &RangeSummary::ratio_diff)
      .def_readonly("density_split", &RangeSummary::density_split)
      .def("__repr__", [](const RangeSummary& s) {
        return "RangeSummary(x=" + std::to_string(s.x) +
               ", ratio_avg_order=" + std::to_string(s.ratio_avg_order) +
               ", ratio_diff=" + std::to_string(s.ratio_diff) + ")";
      });

  m.def(
      "range_summary",
      [](std::uint64_t x, std::uint64_t cap) {
        py::gil_scoped_release release;
        return range_summary(x, cap);
      },
      py::arg("x"), py::arg("cap") = kDefaultSieveCap);
  m.def(
      "survey",
      [](std::uint64_t xmax, std::uint32_t points, std::uint64_t xmin,
         const std::string& grid, std::uint64_t cap) {
        GridKind kind;
        if (grid == "geometric") {
          kind = GridKind::kGeometric;
        } else if (grid == "linear") {
          kind = GridKind::kLinear;
        } else {
          throw DomainError("grid must be 'geometric' or 'linear'");
        }
        py::gil_scoped_release release;
        return survey(xmax, points, xmin, kind, cap);
      },
      py::arg("xmax"), py::arg("points") = 8, py::arg("xmin") = 10,
      py::arg("grid") = "geometric", py::arg("cap") = kDefaultSieveCap);
  m.def(
      "density_split",
      [](std::uint64_t x, std::uint64_t cap) {
        py::gil_scoped_release release;
        return density_split(x, cap);
      },
      py::arg("x"), py::arg("cap") = kDefaultSieveCap);
  m.def("zeta_derivative", &zeta_derivative, py::arg("j"),
        py::arg("tol") = 1e-12, "j-th derivative of zeta at 3/2");
  m.def(
      "constant_d",
      [](std::uint32_t ell, double series_tol, double zeta_tol) {
        ConstantSpec spec;
        spec.ell = ell;
        spec.series_tol = series_tol;
        spec.zeta_tol = zeta_tol;
        const ConstantValue v = constant_D(spec);
        return py::make_tuple(v.value, v.error_bound);
      },
      py::arg("ell"), py::arg("series_tol") = 1e-14,
      py::arg("zeta_tol") = 1e-12,
      "(D_ell, certified error bound)");
  m.def("d0_closed_form", &d0_closed_form, py::arg("zeta_tol") = 1e-12);
  m.def(
      "diff_sum_report",
      [](std::uint64_t x, std::uint32_t n_terms, std::uint64_t cap) {
        DiffSumReport rep = [&] {
          py::gil_scoped_release release;
          return diff_sum_report(x, n_terms, cap);
        }();
        return py::make_tuple(rep.sum_diff, rep.predicted, rep.ratio);
      },
      py::arg("x"), py::arg("n_terms") = 1, py::arg("cap") = kDefaultSieveCap,
      "(sum of a - P1, predicted main terms, their ratio)");
}
