"""Logarithmic bounds on nu_p(sigma(n)), their equality cases, and the
component conditions under which the odd-prime bound is known to hold."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from sympy import integer_nthroot
from sympy import isprime as _bpsw_isprime

from .core_arith import (
    U64_LIMIT,
    Factorization,
    factorize,
    int_log,
    is_mersenne_prime,
    is_prime,
    multiplicative_order,
    nu,
    q_bracket,
    _small_primes,
)
from .valuation import Branch, component_valuation, nup_sigma


class Relation(str, Enum):
    STRICT_BELOW_FLOOR = "strict-below-floor"
    AT_FLOOR = "at-floor"
    # unreachable for integer valuations since ceil <= floor + 1
    BETWEEN = "between"
    AT_CEIL = "at-ceil"
    VIOLATION = "VIOLATION"


def relation_of(valuation: int, floor_log: int, ceil_log: int) -> Relation:
    if valuation > ceil_log:
        return Relation.VIOLATION
    if valuation < floor_log:
        return Relation.STRICT_BELOW_FLOOR
    if valuation == floor_log:
        return Relation.AT_FLOOR
    if valuation == ceil_log:
        return Relation.AT_CEIL
    return Relation.BETWEEN


@dataclass(frozen=True)
class MersenneProduct:
    """n is a product of distinct Mersenne primes ``2**t - 1``."""

    exponents: tuple[int, ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(2**t - 1 for t in self.exponents)

    def __str__(self) -> str:
        return "MersenneProduct{" + ",".join(map(str, self.primes)) + "}"


@dataclass(frozen=True)
class LNSolution:
    """``(q**k - 1) / (q - 1) == p**s`` with primes p, q."""

    p: int
    q: int
    k: int
    s: int

    def verify(self) -> bool:
        return self.k >= 2 and (self.q**self.k - 1) // (self.q - 1) == self.p**self.s

    def __str__(self) -> str:
        return f"({self.q}^{self.k}-1)/({self.q}-1)={self.p}^{self.s}"


@dataclass(frozen=True)
class LNProduct:
    """Every prime power of n turns sigma into a pure power of p."""

    solutions: tuple[LNSolution, ...]

    def __str__(self) -> str:
        return "LNProduct{" + ",".join(f"{s.q}:{s.k}:{s.s}" for s in self.solutions) + "}"


@dataclass(frozen=True)
class BoundReport:
    n: int
    p: int
    valuation: int
    floor_log: int
    ceil_log: int
    relation: Relation
    equality_class: MersenneProduct | LNProduct | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "valuation": self.valuation,
            "floor_log": self.floor_log,
            "ceil_log": self.ceil_log,
            "relation": self.relation.value,
            "equality_class": str(self.equality_class) if self.equality_class else None,
        }


def _factorization(n: int | Factorization) -> Factorization:
    return n if isinstance(n, Factorization) else factorize(n)


def mersenne_product(n: int | Factorization) -> Optional[MersenneProduct]:
    """Structural test: squarefree with every prime factor a Mersenne prime."""
    f = _factorization(n)
    if not f.components:
        return None
    exps = []
    for q, k in f:
        t = is_mersenne_prime(q)
        if k != 1 or t is None:
            return None
        exps.append(t)
    return MersenneProduct(tuple(exps))


def bound_report_2(n: int | Factorization) -> BoundReport:
    f = _factorization(n)
    if f.value < 2:
        raise ValueError(f"bound report needs n >= 2, got {f.value}")
    v = nup_sigma(2, f).total
    lo, hi, _ = int_log(2, f.value)
    return BoundReport(f.value, 2, v, lo, hi, relation_of(v, lo, hi), mersenne_product(f))


def bound_report_p(p: int, n: int | Factorization) -> BoundReport:
    """Compare ``nu_p(sigma(n))`` with ``ceil(log_p n)``; failures are recorded."""
    if p == 2:
        return bound_report_2(n)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    f = _factorization(n)
    if f.value < 2:
        raise ValueError(f"bound report needs n >= 2, got {f.value}")
    v = nup_sigma(p, f).total
    lo, hi, _ = int_log(p, f.value)
    eq = _ln_product(p, f)
    return BoundReport(f.value, p, v, lo, hi, relation_of(v, lo, hi), eq)


# ---------------------------------------------------------------------------
# condition (1) / (2) / (3) classification
# ---------------------------------------------------------------------------

class Condition(str, Enum):
    COND1 = "Cond1"
    COND2 = "Cond2"
    COND3 = "Cond3"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class ComponentRecord:
    q: int
    alpha: int
    valuation: int
    floor_log: int
    ceil_log: int
    at_ceil: bool
    q_vs_p: str
    branch: Branch


@dataclass(frozen=True)
class ConditionClass:
    p: int
    n: int
    components: tuple[ComponentRecord, ...]
    label: Condition


def condition_label(p: int, at_ceil_primes: list[int]) -> Condition:
    """Label from the primes whose component needs the ceiling.

    A component counts as needing the ceiling only when its valuation
    exceeds its floor.
    """
    if not at_ceil_primes:
        return Condition.COND1
    above = sum(1 for q in at_ceil_primes if q > p)
    if above == 0:
        return Condition.COND2
    if above == 1:
        return Condition.COND3
    return Condition.UNCLASSIFIED


def classify_conditions(p: int, n: int | Factorization) -> ConditionClass:
    if p == 2 or not is_prime(p):
        raise ValueError(f"expected an odd prime p, got {p}")
    f = _factorization(n)
    records = []
    for q, a in f:
        v, branch = component_valuation(p, q, a)
        lo, hi, _ = int_log(p, q**a)
        rel = "q<p" if q < p else ("q=p" if q == p else "q>p")
        records.append(ComponentRecord(q, a, v, lo, hi, v > lo, rel, branch))
    label = condition_label(p, [r.q for r in records if r.at_ceil])
    return ConditionClass(p, f.value, tuple(records), label)


# ---------------------------------------------------------------------------
# Type 1 / Type 2 prime powers
# ---------------------------------------------------------------------------

class TypeTag(str, Enum):
    TYPE1_CASE1 = "Type1-case1"
    TYPE1_CASE2 = "Type1-case2"
    TYPE1_CASE3 = "Type1-case3"
    TYPE1_CASE4 = "Type1-case4"
    TYPE2 = "Type2"

    @property
    def bound(self) -> str:
        return "ceil" if self is TypeTag.TYPE2 else "floor"


def classify_type(p: int, q: int, k: int) -> TypeTag:
    """Tag ``q**k`` relative to the odd prime ``p``.

    The cases overlap (``k == 1`` with ``q > 2`` can also meet the Type 2
    conditions), so they are tried in order and the first match wins.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"expected an odd prime p, got {p}")
    if not is_prime(q):
        raise ValueError(f"expected a prime q, got {q}")
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    if p == q:
        return TypeTag.TYPE1_CASE1
    if q % p == 1:
        return TypeTag.TYPE1_CASE2
    r = multiplicative_order(q, p)
    if (k + 1) % r:
        return TypeTag.TYPE1_CASE1
    if k == 1 and q > 2:
        return TypeTag.TYPE1_CASE3
    if r != k + 1:
        return TypeTag.TYPE1_CASE4
    return TypeTag.TYPE2


# ---------------------------------------------------------------------------
# Ljunggren-Nagell solutions
# ---------------------------------------------------------------------------

_PP_TRIAL = _small_primes(1000)


def _is_prime_any(m: int) -> bool:
    if m < U64_LIMIT:
        return is_prime(m)
    # BPSW beyond 64 bits
    return bool(_bpsw_isprime(m))


def prime_power(m: int) -> Optional[tuple[int, int]]:
    """``(p, s)`` when ``m == p**s`` with p prime and s >= 1, else None."""
    if m < 2:
        return None
    for p in _PP_TRIAL:
        if m % p == 0:
            s = nu(p, m)
            return (p, s) if p**s == m else None
        if p * p > m:
            return (m, 1)
    # no prime factor below 1000, so any root is at least 1000
    for s in range(m.bit_length() // 9, 1, -1):
        root, exact = integer_nthroot(m, s)
        if exact:
            root = int(root)
            return (root, s) if _is_prime_any(root) else None
    return (m, 1) if _is_prime_any(m) else None


def ln_check(p: int, q: int, k_exp: int) -> Optional[LNSolution]:
    """Is ``sigma(q**k_exp)`` a power of the odd prime ``p``?

    Cross-checked against the valuation test
    ``nu_p(sigma(q**k_exp)) >= ceil(log_p q**k_exp)``; the two must agree.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"expected an odd prime p, got {p}")
    if not is_prime(q) or q == p:
        raise ValueError(f"expected a prime q != p, got {q}")
    if k_exp < 1:
        raise ValueError(f"exponent must be >= 1, got {k_exp}")
    value = q_bracket(q, k_exp)
    s = nu(p, value)
    is_power = s >= 1 and p**s == value
    _, hi, _ = int_log(p, q**k_exp)
    if is_power != (s >= hi):
        raise ArithmeticError(
            f"power test and valuation test disagree for p={p}, q={q}, k={k_exp}"
        )
    return LNSolution(p, q, k_exp + 1, s) if is_power else None


def search_ln_solutions(q_max: int, k_max: int) -> list[LNSolution]:
    """All ``(q**k - 1)/(q - 1) == p**s`` with prime ``q <= q_max``, ``2 <= k <= k_max``."""
    out = []
    if q_max < 2 or k_max < 2:
        return out
    for q in _small_primes(q_max):
        value, power = 1, 1
        for k in range(2, k_max + 1):
            power *= q
            value += power
            found = prime_power(value)
            if found:
                sol = LNSolution(found[0], q, k, found[1])
                if not sol.verify():
                    raise ArithmeticError(f"bad solution {sol}")
                out.append(sol)
    return out


def _ln_product(p: int, f: Factorization) -> Optional[LNProduct]:
    sols = []
    for q, a in f:
        if q == p:
            return None
        sol = ln_check(p, q, a)
        if sol is None:
            return None
        sols.append(sol)
    return LNProduct(tuple(sols)) if sols else None


def equality_components(p: int, n: int | Factorization) -> bool:
    """Every prime power ``q**a`` of n has ``nu_p(sigma(q**a)) == ceil(log_p q**a)``."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"expected an odd prime p, got {p}")
    for q, a in _factorization(n):
        v, _ = component_valuation(p, q, a)
        if v != int_log(p, q**a)[1]:
            return False
    return True
