"""
Exact rational number theory: Bernoulli numbers, the quadratic character of a
real quadratic field, generalized Bernoulli numbers and the values of the
Dedekind zeta function at negative odd integers.

Everything returns :class:`fractions.Fraction` (or ``int`` for characters).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

__all__ = [
    "SUPPORTED_DISCRIMINANTS",
    "UnsupportedDiscriminant",
    "check_disc",
    "field_degree",
    "bernoulli",
    "bernoulli_poly",
    "character",
    "twisted_bernoulli",
    "dirichlet_l_neg",
    "zeta_F_neg",
    "zeta_table",
    "ZetaTable",
]

# Real quadratic fields of narrow class number 1 (fundamental unit of norm -1),
# plus 1 standing for the rational field itself.
SUPPORTED_DISCRIMINANTS = (1, 5, 8, 13, 17, 29, 37, 41)

BERNOULLI_NMAX = 64


class UnsupportedDiscriminant(ValueError):
    """Raised for a discriminant outside :data:`SUPPORTED_DISCRIMINANTS`."""


def check_disc(D: int) -> int:
    if D not in SUPPORTED_DISCRIMINANTS:
        raise UnsupportedDiscriminant(f"unsupported discriminant {D!r}")
    return D


def field_degree(D: int) -> int:
    """Degree t of the field: 1 for the rationals, 2 for a real quadratic field."""
    return 1 if check_disc(D) == 1 else 2


_bernoulli_table: list[Fraction] = [Fraction(1)]


def _extend_bernoulli(n: int) -> None:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0  for m >= 1
    table = _bernoulli_table
    for m in range(len(table), n + 1):
        s = sum(comb(m + 1, j) * table[j] for j in range(m))
        table.append(-s / (m + 1))


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n >= len(_bernoulli_table):
        _extend_bernoulli(max(n, BERNOULLI_NMAX))
    return _bernoulli_table[n]


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    """The Bernoulli polynomial B_n(x) = sum_j C(n, j) B_j x^(n-j)."""
    x = Fraction(x)
    return sum((comb(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1)), Fraction(0))


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def character(D: int, a: int) -> int:
    """The Kronecker symbol (D / a), the quadratic character of Q(sqrt D)."""
    check_disc(D)
    if D == 1:
        return 1
    if a == 0:
        return 0
    # D > 0, so (D / -1) = 1
    a = abs(a)
    value = 1
    while a % 2 == 0:
        a //= 2
        if D % 2 == 0:
            return 0
        value *= 1 if D % 8 in (1, 7) else -1
    if a == 1:
        return value
    return value * _jacobi(D, a)


def twisted_bernoulli(n: int, D: int) -> Fraction:
    """
    Generalized Bernoulli number B_{n,chi} for chi = (D / .),

        B_{n,chi} = D^(n-1) * sum_{a=1}^{D} chi(a) B_n(a / D).

    For n = 1, 2 this is (1/D) sum chi(a) a and (1/D) sum chi(a) a^2 - sum chi(a) a.
    """
    if n < 1:
        raise ValueError("n must be positive")
    check_disc(D)
    if D == 1:
        raise UnsupportedDiscriminant("twisted Bernoulli numbers need D > 1")
    total = sum(
        (character(D, a) * bernoulli_poly(n, Fraction(a, D)) for a in range(1, D + 1)),
        Fraction(0),
    )
    return D ** (n - 1) * total


def dirichlet_l_neg(k: int, D: int) -> Fraction:
    """L(1 - k, chi_D) = -B_{k,chi} / k."""
    return -twisted_bernoulli(k, D) / k


def _check_weight(k: int) -> None:
    if k < 2 or k % 2:
        raise ValueError(f"k must be an even integer >= 2, got {k!r}")


def zeta_F_neg(k: int, D: int) -> Fraction:
    """
    zeta_F(1 - k) for even k >= 2, where F = Q(sqrt D) (or Q for D = 1).

    Uses the factorization zeta_F = zeta * L(chi), so that
    zeta_F(1 - k) = (B_k / k) (B_{k,chi} / k).
    """
    _check_weight(k)
    check_disc(D)
    riemann = -bernoulli(k) / k
    if D == 1:
        return riemann
    return riemann * dirichlet_l_neg(k, D)


class ZetaTable:
    """Memo of zeta_F(1 - k) over even k up to ``k_max``."""

    def __init__(self, disc: int, k_max: int = 12):
        self.disc = check_disc(disc)
        self.values = {k: zeta_F_neg(k, disc) for k in range(2, k_max + 1, 2)}

    def __getitem__(self, k: int) -> Fraction:
        if k not in self.values:
            self.values[k] = zeta_F_neg(k, self.disc)
        return self.values[k]

    def rows(self) -> list[tuple[int, Fraction]]:
        return sorted(self.values.items())


def zeta_table(disc: int, k_max: int) -> ZetaTable:
    return ZetaTable(disc, k_max)
