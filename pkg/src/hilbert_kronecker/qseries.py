"""
Trace-truncated Fourier expansions of Hilbert modular forms.

A :class:`FourierSeries` stores the constant term and the coefficients at every
totally positive index of trace at most ``trace_bound``.  All arithmetic is
exact; the derivative is only available in the normalized form
D^l / (2 pi i)^{|l|}, which multiplies the coefficient at nu by nu^l.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .arithmetic import check_disc, field_degree, zeta_F_neg
from .quadfield import (
    FieldElement,
    NuIndex,
    divisor_sum,
    enumerate_indices,
    nu_element,
)

__all__ = ["FourierSeries", "eisenstein", "nu_twist", "mul", "add", "scale"]


class FourierSeries:
    """q-expansion sum_nu a(nu) q^nu, truncated at trace(nu) <= trace_bound.

    Absent indices have coefficient zero.  Instances are treated as immutable.
    """

    __slots__ = ("disc", "trace_bound", "constant", "terms")

    def __init__(self, disc: int, trace_bound: int, constant=0, terms: Mapping[NuIndex, FieldElement] | None = None):
        self.disc = disc
        self.trace_bound = trace_bound
        self.constant = _as_elem(constant, disc)
        clean = {}
        for nu, c in (terms or {}).items():
            c = _as_elem(c, disc)
            if c and nu.n <= trace_bound:
                clean[nu] = c
        self.terms = clean

    @classmethod
    def zero(cls, disc: int, trace_bound: int) -> "FourierSeries":
        return cls(disc, trace_bound)

    @classmethod
    def one(cls, disc: int, trace_bound: int) -> "FourierSeries":
        return cls(disc, trace_bound, 1)

    @property
    def t(self) -> int:
        return field_degree(self.disc)

    def __getitem__(self, nu: NuIndex) -> FieldElement:
        return self.terms.get(nu, FieldElement(0, 0, self.disc))

    def coefficient(self, nu: NuIndex | None) -> FieldElement:
        """Coefficient at nu; ``None`` selects the constant term."""
        return self.constant if nu is None else self[nu]

    def items(self):
        """(index, coefficient) pairs in (trace, m) order, nonzero only."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0].n, kv[0].m))

    def indices(self) -> tuple[NuIndex, ...]:
        return enumerate_indices(self.disc, self.trace_bound)

    def is_zero(self) -> bool:
        return not self.constant and not self.terms

    def is_rational(self) -> bool:
        return self.constant.is_rational() and all(c.is_rational() for c in self.terms.values())

    def truncate(self, trace_bound: int) -> "FourierSeries":
        return FourierSeries(self.disc, min(trace_bound, self.trace_bound), self.constant, self.terms)

    def _check(self, other: "FourierSeries") -> None:
        if self.disc != other.disc:
            raise ValueError(f"discriminant mismatch: {self.disc} vs {other.disc}")

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        return add(self, other)

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        return add(self, scale(other, -1))

    def __neg__(self) -> "FourierSeries":
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, FourierSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FourierSeries):
            return NotImplemented
        return (
            self.disc == other.disc
            and self.trace_bound == other.trace_bound
            and self.constant == other.constant
            and self.terms == other.terms
        )

    def __repr__(self):
        head = ", ".join(f"{list(nu)}: {c}" for nu, c in self.items()[:4])
        return f"FourierSeries(D={self.disc}, B={self.trace_bound}, const={self.constant}, {{{head}{', ...' if len(self.terms) > 4 else ''}}})"


def _as_elem(c, disc: int) -> FieldElement:
    if isinstance(c, FieldElement):
        if c.disc != disc:
            raise ValueError("coefficient from a different field")
        return c
    return FieldElement(c, 0, disc)


def add(f: FourierSeries, g: FourierSeries) -> FourierSeries:
    f._check(g)
    terms = dict(f.terms)
    for nu, c in g.terms.items():
        terms[nu] = terms[nu] + c if nu in terms else c
    return FourierSeries(f.disc, min(f.trace_bound, g.trace_bound), f.constant + g.constant, terms)


def scale(f: FourierSeries, c) -> FourierSeries:
    c = _as_elem(c, f.disc)
    if not c:
        return FourierSeries.zero(f.disc, f.trace_bound)
    return FourierSeries(f.disc, f.trace_bound, f.constant * c, {nu: a * c for nu, a in f.terms.items()})


def mul(f: FourierSeries, g: FourierSeries) -> FourierSeries:
    """Convolution product; the result is truncated at the smaller trace bound."""
    f._check(g)
    B = min(f.trace_bound, g.trace_bound)
    D = f.disc
    out: dict[NuIndex, FieldElement] = {}

    def acc(nu, c):
        if nu in out:
            out[nu] = out[nu] + c
        else:
            out[nu] = c

    if f.constant:
        for nu, c in g.terms.items():
            if nu.n <= B:
                acc(nu, f.constant * c)
    if g.constant:
        for nu, c in f.terms.items():
            if nu.n <= B:
                acc(nu, c * g.constant)
    g_items = sorted(g.terms.items(), key=lambda kv: kv[0].n)
    for nu1, c1 in f.terms.items():
        room = B - nu1.n
        if room < 1:
            continue
        for nu2, c2 in g_items:
            if nu2.n > room:
                break
            acc(NuIndex(nu1.m + nu2.m, nu1.n + nu2.n), c1 * c2)
    return FourierSeries(D, B, f.constant * g.constant, out)


@lru_cache(maxsize=4096)
def _twist_factor(nu: NuIndex, ell: tuple[int, ...], D: int) -> FieldElement:
    x = nu_element(nu, D)
    if len(ell) == 1:
        return x ** ell[0]
    return (x ** ell[0]) * (x.conjugate() ** ell[1])


def nu_twist(f: FourierSeries, ell: Iterable[int]) -> FourierSeries:
    """
    Normalized derivative D^l f / (2 pi i)^{|l|}: the coefficient at nu is
    multiplied by nu_1^{l_1} nu_2^{l_2} (product of the real embeddings).
    """
    ell = tuple(ell)
    if len(ell) != f.t:
        raise ValueError(f"exponent vector must have length {f.t}")
    if any(e < 0 for e in ell):
        raise ValueError("negative derivative order")
    if not any(ell):
        return f
    D = f.disc
    terms = {nu: c * _twist_factor(nu, ell, D) for nu, c in f.terms.items()}
    return FourierSeries(D, f.trace_bound, 0, terms)


@lru_cache(maxsize=256)
def eisenstein(k: int, D: int, trace_bound: int) -> FourierSeries:
    """
    Normalized Hilbert Eisenstein series of parallel weight k,

        G_k = zeta_F(1 - k) / 2^t + sum_nu sigma_{k-1}(nu * different) q^nu.

    Odd k >= 3 is accepted with constant term 0; such series are not modular forms.
    """
    check_disc(D)
    if k < 2 or (k % 2 and k < 3):
        raise ValueError(f"weight must be >= 2, got {k!r}")
    t = field_degree(D)
    const = zeta_F_neg(k, D) / 2 ** t if k % 2 == 0 else Fraction(0)
    terms = {nu: FieldElement(divisor_sum(nu, k - 1, D), 0, D) for nu in enumerate_indices(D, trace_bound)}
    return FourierSeries(D, trace_bound, const, terms)
