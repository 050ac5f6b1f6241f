"""Exact integer primitives.

Everything here works on Python ints, so intermediate values such as
``q**k`` or ``[x]_n`` never overflow.  Inputs documented as 64-bit are
checked where exactness depends on it (the Miller-Rabin witness set).
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from math import gcd, isqrt, prod
from typing import Iterator, Optional

U64_LIMIT = 1 << 64

# Deterministic for every n < 3.3e24, which covers the 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_LIMIT = 1000


def _small_primes(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


_TRIAL_PRIMES = _small_primes(_TRIAL_LIMIT)


# ---------------------------------------------------------------------------
# primality
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    """Deterministic primality test for ``0 <= n < 2**64``."""
    if n < 0:
        raise ValueError(f"is_prime expects a natural number, got {n}")
    if n >= U64_LIMIT:
        raise ValueError(f"{n} exceeds the 64-bit range")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_mersenne_prime(p: int) -> Optional[int]:
    """Return ``t`` when ``p == 2**t - 1`` is prime, otherwise None."""
    if p < 3 or (p + 1) & p:
        return None
    return (p + 1).bit_length() - 1 if is_prime(p) else None


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``value = prod(q**k for q, k in components)``."""

    value: int
    components: tuple[tuple[int, int], ...]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.components)

    def exponent(self, q: int) -> int:
        for prime, k in self.components:
            if prime == q:
                return k
        return 0

    def check(self) -> None:
        """Raise ValueError unless every structural invariant holds."""
        last = 1
        for q, k in self.components:
            if q <= last:
                raise ValueError(f"primes not strictly increasing at {q}")
            if k < 1:
                raise ValueError(f"exponent {k} of {q} is not positive")
            if not is_prime(q):
                raise ValueError(f"{q} is not prime")
            last = q
        if prod(q**k for q, k in self.components) != self.value:
            raise ValueError("components do not multiply back to value")

    def __str__(self) -> str:
        if not self.components:
            return "1"
        return " * ".join(f"{q}^{k}" if k > 1 else str(q) for q, k in self.components)


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"no factor found for {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> Factorization:
    """Factor ``1 <= n < 2**64``.

    Trial division by the primes below 1000, then Pollard-Brent on whatever
    cofactor is left (it is already known prime when below 10**6).
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    if n >= U64_LIMIT:
        raise ValueError(f"{n} exceeds the 64-bit range")
    found: dict[int, int] = {}
    m = n
    for p in _TRIAL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            found[p] = k
    if m > 1:
        if m < _TRIAL_LIMIT * _TRIAL_LIMIT:
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


class SpfSieve:
    """Smallest-prime-factor table for ``2 <= m <= limit``.

    Built once, read-only afterwards.  ``table[m]`` is the smallest prime
    factor of ``m``.
    """

    def __init__(self, limit: int):
        if limit < 2:
            raise ValueError(f"sieve limit must be at least 2, got {limit}")
        self.limit = limit
        code = "I" if limit < (1 << 32) else "Q"
        try:
            spf = array(code, bytes(array(code).itemsize * (limit + 1)))
        except MemoryError as exc:
            raise MemoryError(f"cannot allocate a sieve up to {limit}") from exc
        # Descending primes, so the smallest prime writes last.
        for p in reversed(_small_primes(isqrt(limit))):
            start = p * p
            spf[start::p] = array(code, [p]) * len(range(start, limit + 1, p))
        # Zero entries are primes.
        self._spf = spf

    def __getitem__(self, m: int) -> int:
        if not 2 <= m <= self.limit:
            raise IndexError(f"{m} outside sieve range [2, {self.limit}]")
        return self._spf[m] or m

    @property
    def raw(self) -> array:
        """Underlying table; a zero entry marks a prime."""
        return self._spf

    def components(self, n: int) -> list[tuple[int, int]]:
        """Factor components of ``n`` as a plain ascending list."""
        spf = self._spf
        out = []
        while n > 1:
            p = spf[n] or n
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        return out

    def factorize(self, n: int) -> Factorization:
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range [1, {self.limit}]")
        return Factorization(n, tuple(self.components(n)))


def spf_sieve(limit: int) -> SpfSieve:
    return SpfSieve(limit)


# ---------------------------------------------------------------------------
# arithmetic functions
# ---------------------------------------------------------------------------

def q_bracket(x: int, n: int) -> int:
    """``[x]_n = 1 + x + ... + x**n``.

    Computed both as the explicit sum and as ``(x**(n+1) - 1) // (x - 1)``;
    the two must agree.  Negative ``x`` is allowed (the quotient form is
    exact for any ``x != 1``), which the alternating-sign identities need.
    """
    if n < 0:
        raise ValueError(f"bracket length must be >= 0, got {n}")
    if x == 1:
        return n + 1
    total, term = 0, 1
    for _ in range(n + 1):
        total += term
        term *= x
    quotient, rem = divmod(term - 1, x - 1)
    if rem or quotient != total:
        raise ArithmeticError(f"q-bracket forms disagree for x={x}, n={n}")
    return total


def sigma(f: Factorization | int) -> int:
    """Sum of divisors, as the product of ``[q]_k`` over the components."""
    if not isinstance(f, Factorization):
        f = factorize(f)
    return prod((q ** (k + 1) - 1) // (q - 1) for q, k in f.components)


def nu(p: int, m: int) -> int:
    """Exponent of the largest power of ``p`` dividing ``m``."""
    if m == 0:
        raise ValueError("valuation of 0 is undefined")
    if p < 2:
        raise ValueError(f"valuation base must be a prime, got {p}")
    m = abs(m)
    if p == 2:
        return (m & -m).bit_length() - 1
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e


def multiplicative_order(q: int, p: int) -> int:
    """Least ``r >= 1`` with ``q**r == 1 (mod p)`` for a prime ``p``."""
    if q % p == 0:
        raise ValueError(f"{q} is not invertible modulo {p}")
    r = p - 1
    for f, _ in factorize(p - 1).components if p > 2 else ():
        while r % f == 0 and pow(q, r // f, p) == 1:
            r //= f
    return r


def int_log(p: int, n: int) -> tuple[int, int, bool]:
    """``(floor(log_p n), ceil(log_p n), n is a power of p)`` by exact powers."""
    if n < 1:
        raise ValueError(f"logarithm needs n >= 1, got {n}")
    if p < 2:
        raise ValueError(f"logarithm base must be >= 2, got {p}")
    if p == 2:
        f = n.bit_length() - 1
        exact = not n & (n - 1)
        return f, f if exact else f + 1, exact
    f, power = 0, p
    while power <= n:
        power *= p
        f += 1
    exact = power // p == n
    return f, f if exact else f + 1, exact


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` by direct search up to ``isqrt(n)``."""
    if n < 1:
        raise ValueError(f"divisors need n >= 1, got {n}")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def sigma_table(limit: int) -> list[int]:
    """``sigma(m)`` for ``0 <= m <= limit`` by adding each d to its multiples."""
    table = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            table[m] += d
    return table
