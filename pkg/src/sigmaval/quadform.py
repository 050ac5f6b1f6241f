"""The form b^2 + bc + c^2, the mod-3 divisor character, and truncated
q-series for the theta-function identities around nu_3(sigma(n))."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional

from .core_arith import Factorization, divisors, factorize, nu, sigma

DEFAULT_DEGREE = 200


class SeriesError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Series:
    """Integer power series known modulo ``q**(N+1)``."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise SeriesError("a truncation keeps at least the constant term")

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]], degree: int) -> Series:
        """Build from ``(exponent, coefficient)`` pairs, dropping exponents above ``degree``."""
        coeffs = [0] * (degree + 1)
        for e, c in terms:
            if 0 <= e <= degree:
                coeffs[e] += c
        return cls(tuple(coeffs))

    @classmethod
    def one(cls, degree: int) -> Series:
        return cls.from_terms([(0, 1)], degree)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, e: int) -> int:
        return self.coefficients[e]

    def __len__(self) -> int:
        return len(self.coefficients)

    def truncate(self, degree: int) -> Series:
        return Series(self.coefficients[: degree + 1])

    def __add__(self, other: Series) -> Series:
        n = min(self.degree, other.degree) + 1
        return Series(tuple(a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n])))

    def __neg__(self) -> Series:
        return Series(tuple(-a for a in self.coefficients))

    def __sub__(self, other: Series) -> Series:
        return self + (-other)

    def scale(self, c: int) -> Series:
        return Series(tuple(c * a for a in self.coefficients))

    def __mul__(self, other: Series | int) -> Series:
        if isinstance(other, int):
            return self.scale(other)
        n = min(self.degree, other.degree)
        a, b = self.coefficients, other.coefficients
        out = [0] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if ai:
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return Series(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Series:
        if k < 0:
            raise SeriesError("negative powers need division")
        result = Series.one(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other: Series) -> Series:
        """Exact division by a series whose constant term is +-1."""
        c0 = other.coefficients[0]
        if c0 not in (1, -1):
            raise SeriesError("divisor must have a unit constant term")
        n = min(self.degree, other.degree)
        a, b = self.coefficients, other.coefficients
        out = [0] * (n + 1)
        for i in range(n + 1):
            acc = a[i] - sum(b[j] * out[i - j] for j in range(1, i + 1) if b[j])
            out[i] = acc * c0
        return Series(tuple(out))

    def shift(self, m: int) -> Series:
        """Multiply by ``q**m``."""
        return Series(((0,) * m + self.coefficients)[: len(self.coefficients)])

    def dilate(self, m: int) -> Series:
        """Substitute ``q -> q**m``, keeping the same truncation degree."""
        n = self.degree
        return Series.from_terms(((e * m, c) for e, c in enumerate(self.coefficients) if c), n)

    def first_difference(self, other: Series) -> Optional[tuple[int, int, int]]:
        """First ``(degree, self[degree], other[degree])`` where the two differ."""
        for e, (a, b) in enumerate(zip(self.coefficients, other.coefficients)):
            if a != b:
                return e, a, b
        return None


def geometric(m: int, degree: int) -> Series:
    """``1 / (1 - q**m)`` truncated at ``degree``."""
    if m < 1:
        raise SeriesError("geometric expansion needs m >= 1")
    return Series.from_terms(((e, 1) for e in range(0, degree + 1, m)), degree)


# ---------------------------------------------------------------------------
# the quadratic form
# ---------------------------------------------------------------------------

def Q(b: int, c: int) -> int:
    return b * b + b * c + c * c


def lattice_bound(n: int) -> int:
    """Box half-width that contains every (b, c) with Q(b, c) <= n.

    Q(b, c) >= 3/4 * max(|b|, |c|)**2, so max(|b|, |c|) <= sqrt(4n/3).
    """
    root = isqrt(4 * n // 3)
    while 3 * root * root < 4 * n:
        root += 1
    return root + 1


@dataclass(frozen=True)
class QuadFormWitness:
    b: int
    c: int

    @property
    def value(self) -> int:
        return Q(self.b, self.c)


def loeschian_witness(n: int) -> Optional[QuadFormWitness]:
    """Some ``(b, c)`` with ``b**2 + b*c + c**2 == n``, or None.

    For each b in the box, c solves ``c**2 + b*c + (b**2 - n) = 0``, so the
    discriminant ``4n - 3b**2`` must be a square.  This covers the whole box
    without enumerating c.
    """
    if n < 0:
        raise ValueError(f"the form is positive definite, got n={n}")
    bound = lattice_bound(n)
    for b in range(0, bound + 1):
        disc = 4 * n - 3 * b * b
        if disc < 0:
            break
        d = isqrt(disc)
        if d * d == disc and (d - b) % 2 == 0:
            w = QuadFormWitness(b, (d - b) // 2)
            assert w.value == n
            return w
    return None


def divisor_character_sum(n: int) -> int:
    """``#{d | n : d = 1 mod 3} - #{d | n : d = 2 mod 3}`` by listing divisors."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return sum((0, 1, -1)[d % 3] for d in divisors(n))


def divisor_character_table(limit: int) -> list[int]:
    """``divisor_character_sum(m)`` for ``0 <= m <= limit`` (index 0 unused)."""
    table = [0] * (limit + 1)
    for d in range(1, limit + 1):
        sign = (0, 1, -1)[d % 3]
        if sign:
            for m in range(d, limit + 1, d):
                table[m] += sign
    return table


def nu3_zero_by_factorization(f: Factorization | int) -> bool:
    """sigma(n) is prime to 3, read off the factorization.

    Primes 1 mod 3 need exponent not 2 mod 3, primes 2 mod 3 (2 included)
    need an even exponent, and the power of 3 is free.
    """
    if not isinstance(f, Factorization):
        f = factorize(f)
    for q, k in f:
        if q % 3 == 1 and k % 3 == 2:
            return False
        if q % 3 == 2 and k % 2:
            return False
    return True


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

def theta_series(degree: int = DEFAULT_DEGREE) -> Series:
    """``prod_{k >= 1} (1 - q**k)``."""
    coeffs = [0] * (degree + 1)
    coeffs[0] = 1
    for k in range(1, degree + 1):
        for e in range(degree, k - 1, -1):
            coeffs[e] -= coeffs[e - k]
    return Series(tuple(coeffs))


def _lattice(degree: int) -> Iterable[tuple[int, int, int]]:
    bound = lattice_bound(degree)
    # outside the box Q >= 3/4 (bound + 1)^2 > degree
    assert 3 * (bound + 1) ** 2 > 4 * degree
    for b in range(-bound, bound + 1):
        for c in range(-bound, bound + 1):
            v = Q(b, c)
            if v <= degree:
                yield b, c, v


def f_series(degree: int = DEFAULT_DEGREE) -> Series:
    """``sum_{b, c} q**Q(b, c)`` by lattice enumeration."""
    counts = [0] * (degree + 1)
    for _, _, v in _lattice(degree):
        counts[v] += 1
    return Series(tuple(counts))


def g_series(degree: int = DEFAULT_DEGREE) -> Series:
    """``sum_{b, c} w**(b - c) q**Q(b, c)`` with ``w`` a primitive cube root of 1.

    Only the real part survives the (b, c) <-> (c, b) symmetry, so pairs with
    ``b = c mod 3`` weigh 1 and the rest weigh -1/2.
    """
    acc = [Fraction(0)] * (degree + 1)
    half = Fraction(-1, 2)
    for b, c, v in _lattice(degree):
        acc[v] += 1 if (b - c) % 3 == 0 else half
    coeffs = []
    for e, x in enumerate(acc):
        if x.denominator != 1:
            raise SeriesError(f"non-integral coefficient {x} at degree {e}")
        coeffs.append(int(x))
    return Series(tuple(coeffs))


def lambert_series(degree: int = DEFAULT_DEGREE) -> Series:
    """``1 + 6 sum_m (q^(3m+1)/(1-q^(3m+1)) - q^(3m+2)/(1-q^(3m+2)))``.

    Checked against ``6 * divisor_character_sum(n)`` term by term.
    """
    s = Series.one(degree)
    for j in range(1, degree + 1):
        sign = (0, 1, -1)[j % 3]
        if sign:
            s = s + geometric(j, degree).shift(j).scale(6 * sign)
    for n in range(1, degree + 1):
        if s[n] != 6 * divisor_character_sum(n):
            raise SeriesError(f"Lambert coefficient mismatch at degree {n}")
    return s


def character_series(degree: int = DEFAULT_DEGREE) -> Series:
    """``1 + 6 sum_{n >= 1} E(n) q**n`` with E the divisor character sum."""
    table = divisor_character_table(degree)
    return Series.from_terms([(0, 1)] + [(n, 6 * table[n]) for n in range(1, degree + 1)], degree)


def jacobi_theta3(degree: int = DEFAULT_DEGREE) -> Series:
    """``sum_{n >= 0} (-1)**n (2n + 1) q**(n(n+1)/2)``."""
    terms = []
    n = 0
    while n * (n + 1) // 2 <= degree:
        terms.append((n * (n + 1) // 2, (-1) ** n * (2 * n + 1)))
        n += 1
    return Series.from_terms(terms, degree)


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    name: str
    degree: int
    mismatch: Optional[tuple[int, int, int]]

    @property
    def passed(self) -> bool:
        return self.mismatch is None


def verify_identities(degree: int = DEFAULT_DEGREE) -> list[IdentityCheck]:
    theta = theta_series(degree)
    theta3 = theta**3
    g = g_series(degree)
    f = f_series(degree)
    checks = [
        ("theta^3 = G * theta(q^3)", theta3, g * theta.dilate(3)),
        ("theta^3 / theta(q^3) = G", theta3 / theta.dilate(3), g),
        ("F = Lambert series", f, lambert_series(degree)),
        ("theta^3 = Jacobi sum", theta3, jacobi_theta3(degree)),
        ("F = 1 + 6 sum E(n) q^n", f, character_series(degree)),
        ("alpha_n vs beta_n", g, _alpha_from_beta(f)),
    ]
    return [IdentityCheck(name, degree, lhs.first_difference(rhs)) for name, lhs, rhs in checks]


def _alpha_from_beta(f: Series) -> Series:
    # beta_n counts only b = c (mod 3) pairs when 3 | n, only the others otherwise
    out = []
    for n, beta in enumerate(f.coefficients):
        if n % 3 == 0:
            out.append(beta)
        else:
            if beta % 2:
                raise SeriesError(f"odd count {beta} at degree {n}")
            out.append(-beta // 2)
    return Series(tuple(out))


# ---------------------------------------------------------------------------
# representability audit
# ---------------------------------------------------------------------------

FORWARD = "forward"            # nu_3 = 0 but not represented
CONVERSE = "converse"          # represented but nu_3 > 0
CONGRUENCE = "congruence"      # (nu_3 = 0) disagrees with E(n) != 0 mod 3
REPRESENTATION = "representation"  # (E(n) > 0) disagrees with a witness existing


def audit_theorem71(limit: int, start: int = 1) -> list[tuple[int, str]]:
    """Compare ``nu_3(sigma(n)) == 0`` with representability by Q, n in [start, limit].

    Every n where one of the four directions fails is listed once per
    failing direction, in ascending n.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    table = divisor_character_table(limit)
    out = []
    for n in range(max(start, 1), limit + 1):
        zero = nu(3, sigma(factorize(n))) == 0
        e = table[n]
        rep = loeschian_witness(n) is not None
        if zero and not rep:
            out.append((n, FORWARD))
        if rep and not zero:
            out.append((n, CONVERSE))
        if zero != (e % 3 != 0):
            out.append((n, CONGRUENCE))
        if (e > 0) != rep:
            out.append((n, REPRESENTATION))
    return out
