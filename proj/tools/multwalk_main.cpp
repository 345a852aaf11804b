// multwalk: expected absorption times of the mod-n multiplication walk.
//
// Subcommands: value, simulate, survey, constants, search-integers.
// Exit codes: 0 ok, 2 usage/domain error, 3 capacity guard, 4 tolerance
// failure, 5 censored trials under --strict, 1 anything else.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "multwalk/asymptotics.hpp"
#include "multwalk/exact.hpp"
#include "multwalk/format.hpp"
#include "multwalk/version.hpp"
#include "multwalk/walk.hpp"

using nlohmann::json;
namespace mw = multwalk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitTolerance = 4;
constexpr int kExitCensored = 5;

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  std::size_t pos = 0;
  const std::string s(raw);
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) {
    throw mw::DomainError(std::string(name) + ": not an integer: " + s);
  }
  return v;
}

void emit(const std::string& output_path, const std::string& content) {
  if (output_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(output_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + output_path);
  os << content;
}

json meta_json(const std::string& command) {
  return json{{"tool", "multwalk"},
              {"version", mw::kVersion},
              {"command", command}};
}

json rational_json(const mw::Rational& v) {
  return json{{"fraction", v.str()},
              {"numerator", v.num().get_str()},
              {"denominator", v.den().get_str()},
              {"decimal", v.to_double()}};
}

// ---------------------------------------------------------------------------

struct ValueArgs {
  std::uint64_t n = 0;
  std::string method = "auto";
  std::string format = "text";
  std::string output;
};

int run_value(const ValueArgs& args) {
  const std::uint64_t n = args.n;
  if (n == 0) throw mw::DomainError("value: n must be >= 1");

  mw::Rational v;
  std::string used;
  if (args.method == "recursive") {
    v = mw::a_recursive(n);
    used = "recursive";
  } else if (args.method == "squarefree") {
    v = mw::a_squarefree(n);  // DomainError when n is not squarefree
    used = "squarefree";
  } else if (args.method == "markov") {
    v = mw::a_markov(n);
    used = "markov";
  } else {  // auto: closed form when possible, else the cheapest exact route
    const mw::Factorization f = mw::factorize(n);
    if (n >= 2 && mw::omega(f) == 1) {
      v = mw::a_prime_power(f.factors[0].prime, f.factors[0].exponent);
      used = "prime-power";
    } else if (mw::is_squarefree(f) && n >= 2) {
      v = mw::a_squarefree(n);
      used = "squarefree";
    } else {
      v = mw::a_recursive(n);
      used = "recursive";
    }
  }

  std::ostringstream out;
  if (args.format == "json") {
    json doc{{"meta", meta_json("value")},
             {"n", n},
             {"method", used},
             {"value", rational_json(v)}};
    out << doc.dump(2) << "\n";
  } else {
    out << "a(" << n << ") = " << v.str() << " (" << mw::fmt17(v.to_double())
        << ")\n";
    out << "method: " << used << "\n";
  }
  emit(args.output, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::uint64_t n = 0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::uint64_t max_steps = mw::kDefaultMaxSteps;
  std::uint32_t threads = 1;
  std::string mode = "auto";
  bool strict = false;
  std::string format = "text";
  std::string output;
};

int run_simulate(const SimulateArgs& args) {
  mw::EstimateOptions options;
  options.max_steps = args.max_steps;
  options.threads = args.threads;
  if (args.mode == "raw") {
    options.mode = mw::WalkMode::kRawResidue;
  } else if (args.mode == "lattice") {
    options.mode = mw::WalkMode::kDivisorLattice;
  }  // "auto": leave unset, the engine picks by n

  const mw::EstimateReport rep =
      mw::estimate_a(args.n, args.trials, args.seed, options);
  const mw::WalkMode mode = options.mode.value_or(mw::choose_mode(args.n));
  const std::string mode_name =
      mode == mw::WalkMode::kRawResidue ? "raw" : "lattice";

  // --threads changes wall time only, never results, and is deliberately
  // not echoed: output is byte-identical for any thread count.
  std::ostringstream out;
  if (args.format == "json") {
    json doc{{"meta", meta_json("simulate")},
             {"params",
              {{"n", args.n},
               {"trials", args.trials},
               {"seed", args.seed},
               {"mode", mode_name},
               {"max_steps", args.max_steps}}},
             {"report",
              {{"mean", rep.mean},
               {"variance", rep.variance},
               {"std_error", rep.std_error},
               {"censored", rep.censored_count}}}};
    out << doc.dump(2) << "\n";
  } else {
    out << "n: " << args.n << "\n";
    out << "trials: " << args.trials << "\n";
    out << "seed: " << args.seed << "\n";
    out << "mode: " << mode_name << "\n";
    out << "max_steps: " << args.max_steps << "\n";
    out << "mean: " << mw::fmt17(rep.mean) << "\n";
    out << "variance: " << mw::fmt17(rep.variance) << "\n";
    out << "std_error: " << mw::fmt17(rep.std_error) << "\n";
    out << "censored: " << rep.censored_count << "\n";
  }
  emit(args.output, out.str());

  if (args.strict && rep.censored_count > 0) {
    std::cerr << "simulate: " << rep.censored_count
              << " trial(s) censored at max_steps=" << args.max_steps << "\n";
    return kExitCensored;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SurveyArgs {
  std::uint64_t xmax = 0;
  std::uint64_t xmin = 10;
  std::uint32_t points = 8;
  std::string grid = "geometric";
  std::string output;
};

int run_survey(const SurveyArgs& args) {
  const std::uint64_t cap =
      env_u64("MULTWALK_SIEVE_CAP", mw::kDefaultSieveCap);
  const std::uint64_t xmin = std::min(args.xmin, args.xmax);
  const mw::GridKind kind = args.grid == "linear" ? mw::GridKind::kLinear
                                                  : mw::GridKind::kGeometric;
  const auto grid = mw::make_grid(xmin, args.xmax, args.points, kind);

  std::cerr << "survey: sieving smallest prime factors to " << args.xmax
            << "\n";
  const mw::SpfTable spf(args.xmax, cap);
  std::cerr << "survey: building a(n) table to " << args.xmax << "\n";
  const std::vector<double> a = mw::build_float_table(args.xmax, cap);
  std::cerr << "survey: accumulating " << grid.size() << " checkpoints\n";
  const auto rows = mw::survey(grid, a, spf);

  std::ostringstream meta;
  meta << "multwalk survey xmax=" << args.xmax << " xmin=" << xmin
       << " points=" << args.points << " grid=" << args.grid
       << " version=" << mw::kVersion;
  std::ostringstream out;
  mw::write_survey_csv(out, rows, meta.str());
  emit(args.output, out.str());
  std::cerr << "survey: done\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ConstantsArgs {
  std::uint32_t ell_max = 0;
  double series_tol = 1e-14;
  double zeta_tol = 1e-12;
  std::string format = "text";
  std::string output;
};

int run_constants(const ConstantsArgs& args) {
  std::vector<mw::ConstantValue> values;
  for (std::uint32_t ell = 0; ell <= args.ell_max; ++ell) {
    mw::ConstantSpec spec;
    spec.ell = ell;
    spec.series_tol = args.series_tol;
    spec.zeta_tol = args.zeta_tol;
    values.push_back(mw::constant_D(spec));
  }
  const double closed = mw::d0_closed_form(args.zeta_tol);
  const double delta = std::abs(values[0].value - closed);

  std::ostringstream out;
  if (args.format == "json") {
    json list = json::array();
    for (std::uint32_t ell = 0; ell <= args.ell_max; ++ell) {
      list.push_back({{"ell", ell},
                      {"value", values[ell].value},
                      {"error_bound", values[ell].error_bound}});
    }
    json doc{{"meta", meta_json("constants")},
             {"params",
              {{"ell_max", args.ell_max},
               {"series_tol", args.series_tol},
               {"zeta_tol", args.zeta_tol}}},
             {"constants", list},
             {"closed_form_d0", closed},
             {"d0_abs_delta", delta}};
    out << doc.dump(2) << "\n";
  } else {
    out << "ell,value,error_bound\n";
    for (std::uint32_t ell = 0; ell <= args.ell_max; ++ell) {
      out << ell << "," << mw::fmt17(values[ell].value) << ","
          << mw::fmt_sig(values[ell].error_bound, 3) << "\n";
    }
    out << "closed_form_D0: " << mw::fmt17(closed) << "\n";
    out << "series_vs_closed_D0_delta: " << mw::fmt_sig(delta, 3) << "\n";
  }
  emit(args.output, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SearchArgs {
  std::uint64_t limit = 0;
  std::uint32_t near = 10;
  std::string format = "text";
  std::string output;
};

int run_search(const SearchArgs& args) {
  const std::uint64_t guard =
      env_u64("MULTWALK_EXACT_LIMIT", mw::kDefaultExactLimit);
  std::cerr << "search-integers: scanning composites with omega >= 2 up to "
            << args.limit << "\n";
  const auto hits = mw::search_integer_values(args.limit, guard);
  const auto near = mw::nearest_integer_candidates(args.limit, args.near, guard);

  std::ostringstream out;
  if (args.format == "json") {
    json near_list = json::array();
    for (const auto& c : near) {
      near_list.push_back({{"n", c.n},
                           {"value", rational_json(c.value)},
                           {"distance", c.distance.str()},
                           {"distance_decimal", c.distance.to_double()}});
    }
    json doc{{"meta", meta_json("search-integers")},
             {"params", {{"limit", args.limit}, {"near", args.near}}},
             {"integer_hits", hits},
             {"nearest", near_list}};
    out << doc.dump(2) << "\n";
  } else {
    out << "searched n <= " << args.limit << " (omega >= 2)\n";
    if (hits.empty()) {
      out << "no integer values found\n";
    } else {
      out << "integer values found:\n";
      for (std::uint64_t n : hits) {
        out << "  n=" << n << "  a(n)=" << mw::a_recursive(n).str() << "\n";
      }
    }
    if (!near.empty()) {
      out << "nearest to an integer:\n";
      for (const auto& c : near) {
        out << "  n=" << c.n << "  a(n)=" << c.value.str()
            << "  distance=" << c.distance.str() << " ("
            << mw::fmt_sig(c.distance.to_double(), 6) << ")\n";
      }
    }
  }
  emit(args.output, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"absorption times of the multiplicative random walk mod n"};
  app.require_subcommand(1);

  ValueArgs value_args;
  CLI::App* value = app.add_subcommand(
      "value", "exact a(n) by recursive, squarefree, or Markov method");
  value->add_option("n", value_args.n, "modulus")->required();
  value->add_option("--method", value_args.method, "evaluation method")
      ->default_val("auto")
      ->check(CLI::IsMember({"auto", "recursive", "squarefree", "markov"}));
  value->add_option("--format", value_args.format)
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));
  value->add_option("--output", value_args.output, "write to file");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo estimate of a(n) with reproducible seeding");
  simulate->add_option("n", sim_args.n, "modulus")->required();
  simulate->add_option("--trials", sim_args.trials)->default_val(100000);
  simulate->add_option("--seed", sim_args.seed)->default_val(1);
  simulate->add_option("--max-steps", sim_args.max_steps)
      ->default_val(mw::kDefaultMaxSteps);
  simulate->add_option("--threads", sim_args.threads, "worker cap (never affects results)")
      ->default_val(1);
  simulate->add_option("--mode", sim_args.mode)
      ->default_val("auto")
      ->check(CLI::IsMember({"auto", "raw", "lattice"}));
  simulate->add_flag("--strict", sim_args.strict,
                     "exit 5 when any trial is censored");
  simulate->add_option("--format", sim_args.format)
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));
  simulate->add_option("--output", sim_args.output, "write to file");

  SurveyArgs survey_args;
  CLI::App* survey = app.add_subcommand(
      "survey", "partial-sum ratios over 2..x as CSV checkpoints");
  survey->add_option("--xmax", survey_args.xmax, "largest x")->required();
  survey->add_option("--xmin", survey_args.xmin)->default_val(10);
  survey->add_option("--points", survey_args.points)->default_val(8);
  survey->add_option("--grid", survey_args.grid)
      ->default_val("geometric")
      ->check(CLI::IsMember({"geometric", "linear"}));
  survey->add_option("--output", survey_args.output, "write CSV to file");

  ConstantsArgs const_args;
  CLI::App* constants = app.add_subcommand(
      "constants", "expansion constants D_0..D_ell with error bounds");
  constants->add_option("--ell-max", const_args.ell_max)->default_val(0);
  constants->add_option("--series-tol", const_args.series_tol)
      ->default_val(1e-14);
  constants->add_option("--zeta-tol", const_args.zeta_tol)->default_val(1e-12);
  constants->add_option("--format", const_args.format)
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));
  constants->add_option("--output", const_args.output, "write to file");

  SearchArgs search_args;
  CLI::App* search = app.add_subcommand(
      "search-integers", "hunt for composite n with integer a(n)");
  search->add_option("--limit", search_args.limit, "search bound")->required();
  search->add_option("--near", search_args.near,
                     "how many near-integer candidates to report")
      ->default_val(10);
  search->add_option("--format", search_args.format)
      ->default_val("text")
      ->check(CLI::IsMember({"text", "json"}));
  search->add_option("--output", search_args.output, "write to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (value->parsed()) return run_value(value_args);
    if (simulate->parsed()) return run_simulate(sim_args);
    if (survey->parsed()) return run_survey(survey_args);
    if (constants->parsed()) return run_constants(const_args);
    if (search->parsed()) return run_search(search_args);
    return kExitUsage;
  } catch (const mw::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mw::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const mw::ToleranceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
}
