"""p-adic valuations of the sum-of-divisors function."""

from .bounds import (
    BoundReport,
    Condition,
    ConditionClass,
    LNSolution,
    MersenneProduct,
    Relation,
    TypeTag,
    bound_report_2,
    bound_report_p,
    classify_conditions,
    classify_type,
    equality_components,
    ln_check,
    search_ln_solutions,
)
from .core_arith import (
    Factorization,
    SpfSieve,
    factorize,
    int_log,
    is_mersenne_prime,
    is_prime,
    multiplicative_order,
    nu,
    q_bracket,
    sigma,
    spf_sieve,
)
from .valuation import (
    Branch,
    ValuationReport,
    nu2_sigma,
    nu2_sigma_prime_power,
    nup_sigma,
    nup_sigma_prime_power,
    oracle_nu_sigma,
    sigma_odd_characterization,
)

__version__ = "0.1.0"
