"""
The Kronecker series F_tau(u, v) as a Kuznetsov lifting of Eisenstein series,
and the T-layers of the product F_tau(T, -XYT) F_tau(XT, YT).

F_tau is expanded as

    F_tau(u, v) = sum_{h, l} g_{h,l}(tau) (u^l v^(l+h-1) + u^(l+h-1) v^l)

where h runs over 0 and the even weights >= 2, l over exponent vectors in
Z_{>=0}^t, g_{0,0} = 1 carries the singular part 1/N(u) + 1/N(v), and

    g_{h,l} = (-2)^t / (l! (l+h-1)!) * nu_twist(G_h, l)      (h >= 2).

Vector factorials are products over the coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterator, Mapping

from .arithmetic import check_disc, field_degree
from .qseries import FourierSeries, add, eisenstein, mul, nu_twist, scale

__all__ = [
    "GCoefficient",
    "PolySeries",
    "g_coefficient",
    "kuznetsov_expansion",
    "product_layer",
    "normalized_layer",
    "leading_term",
    "gamma_power",
]

Exp = tuple[int, ...]
Monomial = tuple[Exp, Exp]


def gamma_power(k: int, t: int) -> int:
    """Gamma(k - 1)^t."""
    return factorial(k - 2) ** t


def _vfact(v: Exp) -> int:
    out = 1
    for x in v:
        out *= factorial(x)
    return out


@dataclass(frozen=True)
class GCoefficient:
    h: int
    ell: Exp
    series: FourierSeries

    def is_zero(self) -> bool:
        return self.series.is_zero()


@lru_cache(maxsize=None)
def g_coefficient(h: int, ell: Exp, D: int, trace_bound: int) -> GCoefficient:
    """Coefficient g_{h,l} of the Kuznetsov expansion of F_tau."""
    t = field_degree(D)
    ell = tuple(ell)
    if len(ell) != t:
        raise ValueError(f"exponent vector must have length {t}")
    if h == 0 and not any(ell):
        return GCoefficient(h, ell, FourierSeries.one(D, trace_bound))
    if h < 2 or h % 2 or any(e < 0 for e in ell):
        return GCoefficient(h, ell, FourierSeries.zero(D, trace_bound))
    denom = _vfact(ell) * _vfact(tuple(e + h - 1 for e in ell))
    series = scale(nu_twist(eisenstein(h, D, trace_bound), ell), Fraction((-2) ** t, denom))
    return GCoefficient(h, ell, series)


class PolySeries:
    """
    A Laurent polynomial in X = (X_1..X_t), Y = (Y_1..Y_t) with FourierSeries
    coefficients, sitting in T-grade ``k``.  Keys are (x_exp, y_exp) vectors.
    """

    def __init__(self, k: int, disc: int, trace_bound: int, monomials: Mapping[Monomial, FourierSeries] | None = None):
        self.k = k
        self.disc = disc
        self.trace_bound = trace_bound
        self.monomials = {key: s for key, s in (monomials or {}).items() if not s.is_zero()}

    @property
    def t(self) -> int:
        return field_degree(self.disc)

    def __getitem__(self, key: Monomial) -> FourierSeries:
        return self.monomials.get(key, FourierSeries.zero(self.disc, self.trace_bound))

    def norm_coefficient(self, p: int, q: int) -> FourierSeries:
        """Coefficient of N(X)^p N(Y)^q."""
        t = self.t
        return self[((p,) * t, (q,) * t)]

    def items(self) -> list[tuple[Monomial, FourierSeries]]:
        return sorted(self.monomials.items())

    def is_zero(self) -> bool:
        return not self.monomials

    def _combine(self, other: "PolySeries", sign: int) -> "PolySeries":
        if self.disc != other.disc:
            raise ValueError("discriminant mismatch")
        out = dict(self.monomials)
        for key, s in other.monomials.items():
            s = s if sign == 1 else scale(s, -1)
            out[key] = add(out[key], s) if key in out else s
        B = min(self.trace_bound, other.trace_bound)
        return PolySeries(self.k, self.disc, B, {key: s.truncate(B) for key, s in out.items()})

    def __add__(self, other: "PolySeries") -> "PolySeries":
        return self._combine(other, 1)

    def __sub__(self, other: "PolySeries") -> "PolySeries":
        return self._combine(other, -1)

    def scale(self, c) -> "PolySeries":
        return PolySeries(self.k, self.disc, self.trace_bound, {key: scale(s, c) for key, s in self.monomials.items()})

    def swap_xy(self) -> "PolySeries":
        return PolySeries(self.k, self.disc, self.trace_bound, {(y, x): s for (x, y), s in self.monomials.items()})

    def constant_terms(self) -> dict[Monomial, FourierSeries]:
        """The tau -> i infinity limit, monomial by monomial."""
        return {key: s.constant for key, s in self.items() if s.constant}

    def nonparallel(self) -> list[Monomial]:
        return [key for key in self.monomials if len(set(key[0])) > 1 or len(set(key[1])) > 1]

    def is_rational(self) -> bool:
        return all(s.is_rational() for s in self.monomials.values())

    def __eq__(self, other):
        if not isinstance(other, PolySeries):
            return NotImplemented
        return self.disc == other.disc and (self - other).is_zero()

    def __repr__(self):
        return f"PolySeries(k={self.k}, D={self.disc}, B={self.trace_bound}, {len(self.monomials)} monomials)"


def _neg_xy_sign(e: Exp) -> int:
    return -1 if sum(e) % 2 else 1


def _vec(c: int, t: int) -> Exp:
    return (c,) * t


def _add_vec(*vs: Exp) -> Exp:
    return tuple(sum(xs) for xs in zip(*vs))


def _kuznetsov_terms(D: int, k: int) -> Iterator[tuple[int, Exp, int, Exp]]:
    # all (h, l, h', l') with h + h' + 2(l + l') = k (vector identity), g's nonzero
    t = field_degree(D)
    for s in range(k // 2 + 1):
        rest = k - 2 * s
        for h in range(0, rest + 1, 2):
            hp = rest - h
            if h == 1 or hp == 1:
                continue
            for ell in product(range(s + 1), repeat=t):
                ellp = tuple(s - e for e in ell)
                if h == 0 and any(ell):
                    continue
                if hp == 0 and any(ellp):
                    continue
                yield h, ell, hp, ellp


def product_layer(
    k: int, D: int, trace_bound: int, xy_degree: int | None = None, twisted_singular_only: bool = False
) -> PolySeries:
    """
    Coefficient b_k of N(T)^(k-2) in F_tau(T, -XYT) F_tau(XT, YT), built from

        sum g_{h,l} g_{h',l'} [(-XY)^(l+h-1) + (-XY)^l] [X^l' Y^(l'+h'-1) + X^(l'+h'-1) Y^l'].

    ``k = 0`` gives the singular leading term.  Monomials with an exponent
    above ``xy_degree`` are dropped.  With ``twisted_singular_only`` just the
    cross terms g_{0,0} g_{h,l} with l != 0 are kept; these pair the singular
    part with a twisted (non-modular) Eisenstein series.
    """
    check_disc(D)
    t = field_degree(D)
    acc: dict[Monomial, FourierSeries] = {}
    for h, ell, hp, ellp in _kuznetsov_terms(D, k):
        if twisted_singular_only and not ((h == 0 and any(ellp)) or (hp == 0 and any(ell))):
            continue
        g1 = g_coefficient(h, ell, D, trace_bound).series
        g2 = g_coefficient(hp, ellp, D, trace_bound).series
        if g1.is_zero() or g2.is_zero():
            continue
        prod = mul(g1, g2)
        if prod.is_zero():
            continue
        hv = _vec(h, t)
        hpv = _vec(hp, t)
        first = (_add_vec(ell, hv, _vec(-1, t)), ell)
        second = (
            (ellp, _add_vec(ellp, hpv, _vec(-1, t))),
            (_add_vec(ellp, hpv, _vec(-1, t)), ellp),
        )
        for e in first:
            sign = _neg_xy_sign(e)
            for xe, ye in second:
                key = (_add_vec(e, xe), _add_vec(e, ye))
                if xy_degree is not None and max(key[0] + key[1]) > xy_degree:
                    continue
                term = prod if sign == 1 else scale(prod, -1)
                acc[key] = add(acc[key], term) if key in acc else term
    return PolySeries(k, D, trace_bound, acc)


def normalized_layer(k: int, D: int, trace_bound: int, xy_degree: int | None = None) -> PolySeries:
    """Gamma(k-1)^t * b_k: the layer that the theorem identifies with C_k."""
    if k < 2:
        raise ValueError("normalized layers need k >= 2")
    t = field_degree(D)
    return product_layer(k, D, trace_bound, xy_degree).scale(gamma_power(k, t))


def leading_term(D: int, trace_bound: int = 1) -> PolySeries:
    """(N(X) + N(Y))(N(XY) + (-1)^t) / N(XY)^2, the grade-0 part of the product."""
    return product_layer(0, D, trace_bound)


def kuznetsov_expansion(D: int, trace_bound: int, degree: int) -> dict[tuple[Exp, Exp], FourierSeries]:
    """
    F_tau(u, v) as {(u_exp, v_exp): q-series}, keeping monomials of total
    (u, v)-degree <= ``degree`` (the singular monomials have degree -t).
    """
    t = field_degree(D)
    out: dict[tuple[Exp, Exp], FourierSeries] = {}
    for h in [0] + list(range(2, degree + 2, 2)):
        for ell in product(range(degree + 1), repeat=t):
            g = g_coefficient(h, ell, D, trace_bound)
            if g.is_zero():
                continue
            a = ell
            b = tuple(e + h - 1 for e in ell)
            if sum(a) + sum(b) > degree:
                continue
            for key in {(a, b), (b, a)}:
                out[key] = add(out[key], g.series) if key in out else g.series
    return out
