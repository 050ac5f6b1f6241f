"""Closed-form p-adic valuations of sigma(n), plus a brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import isqrt

from .core_arith import (
    Factorization,
    factorize,
    is_prime,
    multiplicative_order,
    nu,
    sigma,
)


class Branch(str, Enum):
    """Which case of the closed form produced a component's value."""

    Q_ONE_MOD_P = "q≡1 mod p"
    P_EQUALS_Q = "p=q"
    ORDER_NON_DIVIDING = "order-non-dividing"
    ORDER_DIVIDING = "order-dividing"
    EVEN_EXPONENT_2ADIC = "even-exponent-2adic"
    ODD_EXPONENT_2ADIC = "odd-exponent-2adic"


@dataclass(frozen=True)
class Contribution:
    q: int
    k: int
    branch: Branch
    value: int


@dataclass
class ValuationReport:
    n: int
    p: int
    contributions: list[Contribution] = field(default_factory=list)
    oracle: int | None = None

    @property
    def total(self) -> int:
        return sum(c.value for c in self.contributions)

    @property
    def oracle_agrees(self) -> bool | None:
        return None if self.oracle is None else self.oracle == self.total

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "total": self.total,
            "contributions": [
                {"q": c.q, "k": c.k, "branch": c.branch.value, "value": c.value}
                for c in self.contributions
            ],
            "oracle": self.oracle,
        }


def _as_factorization(n: int | Factorization) -> Factorization:
    return n if isinstance(n, Factorization) else factorize(n)


# ---------------------------------------------------------------------------
# p = 2
# ---------------------------------------------------------------------------

def nu2_sigma_prime_power(rho: int, ell: int) -> int:
    """``nu_2(sigma(rho**ell))`` for an odd prime ``rho``."""
    if rho == 2 or not is_prime(rho):
        raise ValueError(f"expected an odd prime, got {rho}")
    if ell < 0:
        raise ValueError(f"exponent must be >= 0, got {ell}")
    return _nu2_component(rho, ell)


def _nu2_component(rho: int, ell: int) -> int:
    if ell % 2 == 0:
        return 0
    return nu(2, ell + 1) + nu(2, rho + 1) - 1


def _nu2_contribution(q: int, k: int) -> Contribution:
    if q == 2:
        # sigma(2**a) is odd
        return Contribution(q, k, Branch.P_EQUALS_Q, 0)
    if k % 2 == 0:
        return Contribution(q, k, Branch.EVEN_EXPONENT_2ADIC, 0)
    return Contribution(q, k, Branch.ODD_EXPONENT_2ADIC, _nu2_component(q, k))


def nu2_sigma(n: int | Factorization) -> ValuationReport:
    f = _as_factorization(n)
    return ValuationReport(f.value, 2, [_nu2_contribution(q, k) for q, k in f])


# ---------------------------------------------------------------------------
# odd p
# ---------------------------------------------------------------------------

def _nup_component(p: int, q: int, k: int) -> tuple[int, Branch]:
    if p == q:
        return 0, Branch.P_EQUALS_Q
    if q % p == 1:
        return nu(p, k + 1), Branch.Q_ONE_MOD_P
    r = multiplicative_order(q, p)
    if (k + 1) % r:
        return 0, Branch.ORDER_NON_DIVIDING
    return nu(p, k + 1) + nu(p, q**r - 1), Branch.ORDER_DIVIDING


def nup_sigma_prime_power(p: int, q: int, k: int) -> tuple[int, Branch]:
    """``nu_p(sigma(q**k))`` for an odd prime ``p`` via the order of ``q`` mod ``p``.

    Returns the value together with the branch of the case split that
    produced it.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"expected an odd prime p, got {p}")
    if not is_prime(q):
        raise ValueError(f"expected a prime q, got {q}")
    if k < 0:
        raise ValueError(f"exponent must be >= 0, got {k}")
    return _nup_component(p, q, k)


def nup_sigma(p: int, n: int | Factorization) -> ValuationReport:
    """Valuation report for ``nu_p(sigma(n))``, summed over the prime powers of n."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return nu2_sigma(n)
    f = _as_factorization(n)
    contributions = []
    for q, k in f:
        value, branch = _nup_component(p, q, k)
        contributions.append(Contribution(q, k, branch, value))
    return ValuationReport(f.value, p, contributions)


def component_valuation(p: int, q: int, k: int) -> tuple[int, Branch]:
    """Closed-form ``nu_p(sigma(q**k))`` for any prime ``p``; no input checks."""
    if p == 2:
        c = _nu2_contribution(q, k)
        return c.value, c.branch
    return _nup_component(p, q, k)


# ---------------------------------------------------------------------------
# ground truth and parity
# ---------------------------------------------------------------------------

def oracle_nu_sigma(p: int, n: int) -> int:
    """``nu_p(sigma(n))`` straight from the definitions.

    sigma(n) is formed as an exact integer and p is divided out.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return nu(p, sigma(factorize(n)))


def sigma_odd_characterization(n: int) -> bool:
    """True iff ``n = 2**a * m**2`` with ``m`` odd (exactly when sigma(n) is odd)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    odd = n >> nu(2, n)
    return isqrt(odd) ** 2 == odd
