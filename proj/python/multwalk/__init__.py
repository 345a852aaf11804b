"""Expected absorption times of the multiplicative random walk mod n.

The walk multiplies a running product by uniform residues mod n and stops
when the product hits 0.  a(n) is the expected number of steps; this package
exposes exact rational evaluation, Monte Carlo estimation, and the
asymptotic-constant machinery from the C++ core.
"""

from ._core import (
    CapacityError,
    EstimateReport,
    RangeSummary,
    ToleranceError,
    WalkOutcome,
    __version__,
    a_exact,
    a_prime_power,
    a_two_primes,
    approx_top2,
    build_float_table,
    constant_d,
    d0_closed_form,
    density_split,
    diff_sum_report,
    estimate_a,
    euler_phi,
    factorize,
    is_squarefree,
    omega,
    prime_factor,
    range_summary,
    residual_wait,
    sample_geometric_max,
    search_integer_values,
    simulate_one,
    sopfr,
    survey,
    zeta_derivative,
)

__all__ = [
    "CapacityError",
    "EstimateReport",
    "RangeSummary",
    "ToleranceError",
    "WalkOutcome",
    "__version__",
    "a_exact",
    "a_prime_power",
    "a_two_primes",
    "approx_top2",
    "build_float_table",
    "constant_d",
    "d0_closed_form",
    "density_split",
    "diff_sum_report",
    "estimate_a",
    "euler_phi",
    "factorize",
    "is_squarefree",
    "omega",
    "prime_factor",
    "range_summary",
    "residual_wait",
    "sample_geometric_max",
    "search_integer_values",
    "simulate_one",
    "sopfr",
    "survey",
    "zeta_derivative",
]
