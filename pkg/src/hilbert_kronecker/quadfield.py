"""
Exact arithmetic in F = Q(sqrt D) and the Fourier index set of Hilbert
modular forms.

Indices are the totally positive elements of the inverse different.  With
the different equal to (sqrt D) for every supported field, each such element
is written uniquely as

    nu = (m + n sqrt D) / (2 sqrt D),      trace(nu) = n,

with ``m = n (mod 2)`` when D = 1 (mod 4) and ``m`` even when D = 0 (mod 4).
Total positivity is ``n > 0`` and ``m^2 < n^2 D``.  For D = 1 the index is the
positive integer n and m is always 0.  Serialized form is the pair ``[m, n]``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import NamedTuple

from .arithmetic import character, check_disc

__all__ = [
    "FieldElement",
    "NuIndex",
    "UnitData",
    "fundamental_unit",
    "unit_data",
    "enumerate_indices",
    "nu_element",
    "index_of",
    "conjugate_index",
    "canonical_rep",
    "ideal_norm",
    "divisor_sum",
    "factorize",
    "in_ring",
]


class FieldElement:
    """a + b sqrt(D) with rational a, b.  For D = 1, b is always 0."""

    __slots__ = ("a", "b", "disc")

    def __init__(self, a=0, b=0, disc: int = 1):
        self.a = a if isinstance(a, Fraction) else Fraction(a)
        self.b = b if isinstance(b, Fraction) else Fraction(b)
        self.disc = disc
        if disc == 1 and self.b:
            # sqrt(1) = 1 folds into the rational part
            self.a += self.b
            self.b = Fraction(0)

    @classmethod
    def rational(cls, x, disc: int) -> "FieldElement":
        return cls(x, 0, disc)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.disc != self.disc:
                raise ValueError("field elements from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(other, 0, self.disc)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.a + other.a, self.b + other.b, self.disc)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, self.disc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.a - other.a, self.b - other.b, self.disc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.a * other, self.b * other, self.disc)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        if not b and not d:
            return FieldElement(a * c, 0, self.disc)
        return FieldElement(a * c + self.disc * b * d, a * d + b * c, self.disc)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero field element")
        return FieldElement(self.a / n, -self.b / n, self.disc)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.a / other, self.b / other, self.disc)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = FieldElement(1, 0, self.disc)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.a == other.a and self.b == other.b and self.disc == other.disc
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.disc))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        if self.disc == 1 or not self.b:
            return f"FieldElement({self.a})"
        return f"FieldElement({self.a} + {self.b}*sqrt({self.disc}))"

    def conjugate(self) -> "FieldElement":
        return FieldElement(self.a, -self.b, self.disc)

    def norm(self) -> Fraction:
        return self.a * self.a - self.disc * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a if self.disc != 1 else self.a

    def is_rational(self) -> bool:
        return not self.b

    def is_positive(self) -> bool:
        """Sign of the first real embedding a + b sqrt(D), decided exactly."""
        a, b = self.a, self.b
        if not b:
            return a > 0
        if a >= 0 and b >= 0:
            return True
        if a <= 0 and b <= 0:
            return False
        # opposite signs: compare a^2 with D b^2
        return (a * a > self.disc * b * b) == (a > 0)

    def is_totally_positive(self) -> bool:
        return self.is_positive() and (self.disc == 1 or self.conjugate().is_positive())

    def to_pair(self) -> list[str]:
        return [_frac_str(self.a), _frac_str(self.b)]


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class NuIndex(NamedTuple):
    """Totally positive nu = (m + n sqrt D)/(2 sqrt D) in the inverse different."""

    m: int
    n: int

    def sort_key(self):
        return (self.n, self.m)

    def to_json(self) -> list[int]:
        return [self.m, self.n]


class UnitData(NamedTuple):
    fundamental_unit: FieldElement
    norm_of_unit: int
    coefficient_orbit_generator: FieldElement


def _cf_unit_search(P: int, Q: int, N: int, to_unit) -> FieldElement:
    # continued fraction of (P + sqrt N)/Q via the standard (P, Q) recursion;
    # to_unit maps a convergent p/q to the candidate field element
    r = isqrt(N)
    p_prev, p = 1, 0
    q_prev, q = 0, 1
    for _ in range(10_000):
        a = (P + r) // Q
        p_prev, p = a * p_prev + p, p_prev
        q_prev, q = a * q_prev + q, q_prev
        cand = to_unit(p_prev, q_prev)
        if abs(cand.norm()) == 1:
            return cand
        P = a * Q - P
        Q = (N - P * P) // Q
    raise RuntimeError("continued fraction did not produce a unit")


@lru_cache(maxsize=None)
def fundamental_unit(D: int) -> FieldElement:
    """Smallest unit > 1 of the ring of integers, from the continued fraction of its generator."""
    check_disc(D)
    if D == 1:
        raise ValueError("no unit structure for the rational field")
    if D % 4 == 1:
        # omega = (1 + sqrt D)/2; candidate p - q * omega' = (2p - q + q sqrt D)/2
        return _cf_unit_search(1, 2, D, lambda p, q: FieldElement(Fraction(2 * p - q, 2), Fraction(q, 2), D))
    d = D // 4
    # omega = sqrt d = sqrt(D)/2; candidate p + q sqrt d
    return _cf_unit_search(0, 1, d, lambda p, q: FieldElement(p, Fraction(q, 2), D))


@lru_cache(maxsize=None)
def unit_data(D: int) -> UnitData:
    eps = fundamental_unit(D)
    gen = eps * eps
    return UnitData(eps, int(eps.norm()), gen)


def in_ring(m: int, n: int, D: int) -> bool:
    """Whether (m + n sqrt D)/2 is an algebraic integer (m, n integers)."""
    if D % 4 == 1:
        return (m - n) % 2 == 0
    return m % 2 == 0


def is_valid_index(nu: NuIndex, D: int) -> bool:
    if D == 1:
        return nu.m == 0 and nu.n > 0
    return nu.n > 0 and nu.m * nu.m < nu.n * nu.n * D and in_ring(nu.m, nu.n, D)


@lru_cache(maxsize=None)
def enumerate_indices(D: int, trace_bound: int) -> tuple[NuIndex, ...]:
    """All totally positive nu in the inverse different with trace <= trace_bound, ordered by (n, m)."""
    check_disc(D)
    if trace_bound < 1:
        raise ValueError("trace_bound must be >= 1")
    if D == 1:
        return tuple(NuIndex(0, n) for n in range(1, trace_bound + 1))
    out = []
    for n in range(1, trace_bound + 1):
        mmax = isqrt(n * n * D)
        if mmax * mmax == n * n * D:
            mmax -= 1
        for m in range(-mmax, mmax + 1):
            if in_ring(m, n, D):
                out.append(NuIndex(m, n))
    return tuple(out)


def nu_element(nu: NuIndex, D: int) -> FieldElement:
    """The field element nu = n/2 + (m / 2D) sqrt D."""
    if D == 1:
        return FieldElement(nu.n, 0, 1)
    return FieldElement(Fraction(nu.n, 2), Fraction(nu.m, 2 * D), D)


def index_of(x: FieldElement, D: int) -> NuIndex:
    if D == 1:
        return NuIndex(0, int(x.a))
    n = 2 * x.a
    m = 2 * D * x.b
    if n.denominator != 1 or m.denominator != 1:
        raise ValueError(f"{x!r} is not in the inverse different")
    return NuIndex(int(m), int(n))


def conjugate_index(nu: NuIndex) -> NuIndex:
    return NuIndex(-nu.m, nu.n)


@lru_cache(maxsize=None)
def canonical_rep(nu: NuIndex, D: int) -> NuIndex:
    """
    Representative of {eta^2 nu : eta a unit} with minimal trace, ties broken
    by minimal m.  The trace along the orbit is convex, so a local descent finds it.
    """
    if D == 1:
        return nu
    g = unit_data(D).coefficient_orbit_generator
    g_inv = g.inverse()
    x = nu_element(nu, D)
    for step in (g, g_inv):
        while True:
            y = x * step
            if y.trace() < x.trace():
                x = y
            else:
                break
    best = x.trace()
    candidates = [index_of(z, D) for z in (x, x * g, x * g_inv) if z.trace() == best]
    return min(candidates, key=lambda i: i.m)


def ideal_norm(nu: NuIndex, D: int) -> int:
    """Norm of the integral ideal nu * different = ((m + n sqrt D)/2)."""
    if D == 1:
        return nu.n
    return (nu.n * nu.n * D - nu.m * nu.m) // 4


def factorize(N: int) -> dict[int, int]:
    """Trial-division factorization; adequate for the small norms used here."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= N:
        while N % p == 0:
            out[p] = out.get(p, 0) + 1
            N //= p
        p += 1 if p == 2 else 2
    if N > 1:
        out[N] = out.get(N, 0) + 1
    return out


def _power_sum(p: int, e: int, r: int) -> int:
    return sum(p ** (i * r) for i in range(e + 1))


def _rational_part_exponent(m: int, n: int, p: int, D: int) -> int:
    # largest c with p^c dividing (m + n sqrt D)/2 in the ring of integers
    c = 0
    while m % p == 0 and n % p == 0 and in_ring(m // p, n // p, D):
        m //= p
        n //= p
        c += 1
    return c


def divisor_sum(nu: NuIndex, r: int, D: int) -> int:
    """
    sigma_r(nu * different): the sum of N(c)^r over integral ideals c dividing
    the principal ideal ((m + n sqrt D)/2).
    """
    if D == 1:
        n = nu.n
        return sum(d ** r for d in range(1, n + 1) if n % d == 0)
    N = ideal_norm(nu, D)
    total = 1
    for p, v in factorize(N).items():
        chi = character(D, p)
        if chi == 0:
            total *= _power_sum(p, v, r)
        elif chi == -1:
            # inert: (p) has norm p^2 and occurs to the power v/2
            total *= _power_sum(p * p, v // 2, r)
        else:
            c = _rational_part_exponent(nu.m, nu.n, p, D)
            total *= _power_sum(p, c, r) * _power_sum(p, v - c, r)
    return total
