"""
Period polynomials of Eisenstein series, the Eisenstein part of the period
generating function, cusp extraction from the Kronecker product, and the
Rankin-Cohen bracket consistency check.

Polynomials in this module are polynomials in the norm N(X); exponent n of a
:class:`PeriodPolynomial` becomes the parallel monomial X^(n,...,n).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Optional

import sympy

from .arithmetic import check_disc, field_degree, zeta_F_neg
from .kronecker import PolySeries, gamma_power, normalized_layer, product_layer
from .qseries import FourierSeries, add, eisenstein, mul, nu_twist, scale
from .quadfield import NuIndex, canonical_rep

__all__ = [
    "PeriodPolynomial",
    "SymbolicConstant",
    "p_plus",
    "p_minus",
    "omega_minus",
    "omega_plus",
    "eisenstein_petersson",
    "eisenstein_normalizer",
    "eisenstein_layer",
    "extract_cusp",
    "coefficient_matrix",
    "cusp_rank",
    "MODULAR_GENERATORS",
    "modular_basis",
    "in_modular_span",
    "Eigenform",
    "extract_eigenform",
    "UnsupportedCase",
    "rankin_cohen",
    "RCReport",
    "rc_consistency",
    "admissible_rc_pairs",
]


class UnsupportedCase(RuntimeError):
    """A computation outside what this implementation handles (e.g. rank >= 2)."""


def _check_weight(k: int) -> None:
    if k < 2 or k % 2:
        raise ValueError(f"k must be an even integer >= 2, got {k!r}")


@dataclass
class PeriodPolynomial:
    """sum_n c_n N(X)^n for n in [-1, k-1]."""

    k: int
    t: int
    coefficients: dict[int, Fraction]
    parity: Optional[str] = None  # "even", "odd" or None for a full polynomial

    def __post_init__(self):
        self.coefficients = {n: Fraction(c) for n, c in self.coefficients.items() if c}

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients.get(n, Fraction(0))

    def __add__(self, other: "PeriodPolynomial") -> "PeriodPolynomial":
        out = dict(self.coefficients)
        for n, c in other.coefficients.items():
            out[n] = out.get(n, 0) + c
        return PeriodPolynomial(self.k, self.t, out)

    def scale(self, c) -> "PeriodPolynomial":
        return PeriodPolynomial(self.k, self.t, {n: c * v for n, v in self.coefficients.items()}, self.parity)

    def is_zero(self) -> bool:
        return not self.coefficients

    def reflect(self) -> "PeriodPolynomial":
        """N(X)^(k-2) R(-1/X); note N(-1/X) = (-1)^t / N(X)."""
        return PeriodPolynomial(
            self.k,
            self.t,
            {self.k - 2 - n: (-1) ** ((self.t * n) % 2) * c for n, c in self.coefficients.items()},
        )

    def satisfies_reflection(self) -> bool:
        return self.reflect().coefficients == self.scale((-1) ** self.t).coefficients

    def __eq__(self, other):
        if not isinstance(other, PeriodPolynomial):
            return NotImplemented
        return self.k == other.k and self.coefficients == other.coefficients

    def __repr__(self):
        body = " + ".join(f"({c})N^{n}" for n, c in sorted(self.coefficients.items())) or "0"
        return f"PeriodPolynomial(k={self.k}, t={self.t}: {body})"


def p_plus(k: int, t: int) -> PeriodPolynomial:
    """N(X)^(k-2) + (-1)^t."""
    _check_weight(k)
    coeffs: dict[int, Fraction] = {}
    coeffs[k - 2] = Fraction(1)
    coeffs[0] = coeffs.get(0, 0) + (-1) ** t
    return PeriodPolynomial(k, t, coeffs, "even")


def p_minus(k: int, D: int) -> PeriodPolynomial:
    """
    Odd part of the Eisenstein period function,

        sum_{n odd, 1 <= n <= k-3} zeta_F(-n) zeta_F(n+2-k) / (Gamma(n+1)^t Gamma(k-n-1)^t) N(X)^n
          + (-1)^t zeta_F(1-k) / Gamma(k)^t * (N(X)^(k-1) + N(X)^(-1)).

    The endpoint coefficients are the ones produced by the tau -> i infinity
    limit of the Kronecker product; both ends carry the same sign.
    """
    _check_weight(k)
    t = field_degree(D)
    coeffs: dict[int, Fraction] = {}
    for n in range(1, k - 2, 2):
        num = zeta_F_neg(n + 1, D) * zeta_F_neg(k - n - 1, D)
        coeffs[n] = num / (factorial(n) ** t * factorial(k - n - 2) ** t)
    end = (-1) ** t * zeta_F_neg(k, D) / factorial(k - 1) ** t
    coeffs[k - 1] = coeffs.get(k - 1, 0) + end
    coeffs[-1] = coeffs.get(-1, 0) + end
    return PeriodPolynomial(k, t, coeffs, "odd")


@dataclass(frozen=True)
class SymbolicConstant:
    """
    rational * pi^pi_power * sqrt(D)^sqrt_disc_power * i^i_power * prod zeta_F(s)^e,
    with the zeta factors at positive arguments kept unevaluated.
    """

    rational: Fraction
    disc: int
    pi_power: int = 0
    sqrt_disc_power: int = 0
    i_power: int = 0
    zetas: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rational", Fraction(self.rational))
        object.__setattr__(self, "i_power", self.i_power % 4)
        clean = tuple(sorted((s, e) for s, e in Counter(dict(self.zetas)).items() if e))
        object.__setattr__(self, "zetas", clean)

    def _merge(self, other: "SymbolicConstant", sign: int) -> "SymbolicConstant":
        if self.disc != other.disc:
            raise ValueError("symbolic constants over different fields")
        z = Counter(dict(self.zetas))
        for s, e in other.zetas:
            z[s] += sign * e
        r = self.rational * other.rational if sign == 1 else self.rational / other.rational
        return SymbolicConstant(
            r,
            self.disc,
            self.pi_power + sign * other.pi_power,
            self.sqrt_disc_power + sign * other.sqrt_disc_power,
            self.i_power + sign * other.i_power,
            tuple(z.items()),
        )

    def __mul__(self, other):
        if not isinstance(other, SymbolicConstant):
            return SymbolicConstant(self.rational * other, self.disc, self.pi_power, self.sqrt_disc_power, self.i_power, self.zetas)
        return self._merge(other, 1)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, SymbolicConstant):
            return SymbolicConstant(self.rational / other, self.disc, self.pi_power, self.sqrt_disc_power, self.i_power, self.zetas)
        return self._merge(other, -1)

    def is_rational(self) -> bool:
        return (
            not self.pi_power
            and not self.zetas
            and self.i_power % 2 == 0
            and (self.sqrt_disc_power % 2 == 0 or self.disc == 1)
        )

    def value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        r = self.rational * (-1 if self.i_power == 2 else 1)
        if self.disc != 1:
            r *= Fraction(self.disc) ** (self.sqrt_disc_power // 2)
        return r


def _sym(disc: int, r=1, pi=0, sqrt_d=0, i=0, zetas=()) -> SymbolicConstant:
    return SymbolicConstant(Fraction(r), disc, pi, sqrt_d, i, tuple(zetas))


def omega_minus(k: int, D: int) -> SymbolicConstant:
    """sqrt(D) Gamma(k-1)^t / 2^t."""
    t = field_degree(D)
    return _sym(D, Fraction(gamma_power(k, t), 2 ** t), sqrt_d=1)


def omega_plus(k: int, D: int) -> SymbolicConstant:
    """D^(k-3/2) zeta_F(k-1) / (2 pi i)^(t(k-1)) * omega_minus."""
    t = field_degree(D)
    e = t * (k - 1)
    return _sym(D, Fraction(1, 2 ** e), pi=-e, sqrt_d=2 * k - 3, i=-e, zetas=[(k - 1, 1)]) * omega_minus(k, D)


def eisenstein_petersson(k: int, D: int) -> SymbolicConstant:
    """
    <G_k, G_k> = Gamma(k-1)^t zeta_F(k-1) / (4 pi)^(t(k-1)) * zeta_F(1-k) / 2^t.

    k = 2 is rejected: zeta_F(1) diverges.
    """
    _check_weight(k)
    if k == 2:
        raise ValueError("Petersson norm of the weight-2 Eisenstein series diverges (zeta_F(1))")
    t = field_degree(D)
    e = t * (k - 1)
    r = Fraction(gamma_power(k, t)) * zeta_F_neg(k, D) / (2 ** t * 4 ** e)
    return _sym(D, r, pi=-e, zetas=[(k - 1, 1)])


def eisenstein_normalizer(k: int, D: int) -> SymbolicConstant:
    """omega+ omega- / (D^(k-1/2) (2i)^(t(k-3)) <G_k, G_k>), which reduces to a rational."""
    t = field_degree(D)
    e = t * (k - 3)
    denom = _sym(D, Fraction(2) ** e, sqrt_d=2 * k - 1, i=e) * eisenstein_petersson(k, D)
    return omega_plus(k, D) * omega_minus(k, D) / denom


def _eisenstein_prefactor(k: int, D: int) -> Fraction:
    # (-1)^t 2^t Gamma(k-1)^t / zeta_F(1-k)
    t = field_degree(D)
    return (-1) ** t * 2 ** t * Fraction(gamma_power(k, t)) / zeta_F_neg(k, D)


def _poly_to_series(coeffs: dict[tuple[int, int], Fraction], k: int, D: int, f: FourierSeries) -> PolySeries:
    t = field_degree(D)
    mons = {((a,) * t, (b,) * t): scale(f, c) for (a, b), c in coeffs.items() if c}
    return PolySeries(k, D, f.trace_bound, mons)


def eisenstein_layer(k: int, D: int, trace_bound: int) -> PolySeries:
    """C_k^Eis = (-1)^t 2^t Gamma(k-1)^t / zeta_F(1-k) (p+(X) p-(Y) + p+(Y) p-(X)) G_k."""
    _check_weight(k)
    t = field_degree(D)
    pp, pm = p_plus(k, t), p_minus(k, D)
    pref = _eisenstein_prefactor(k, D)
    coeffs: dict[tuple[int, int], Fraction] = {}
    for a, ca in pp.coefficients.items():
        for b, cb in pm.coefficients.items():
            for key in ((a, b), (b, a)):
                coeffs[key] = coeffs.get(key, 0) + pref * ca * cb
    return _poly_to_series(coeffs, k, D, eisenstein(k, D, trace_bound))


def extract_cusp(k: int, D: int, trace_bound: int) -> PolySeries:
    """Gamma(k-1)^t b_k - C_k^Eis, which the theorem identifies with sum_f R_f(X,Y) f."""
    _check_weight(k)
    return normalized_layer(k, D, trace_bound) - eisenstein_layer(k, D, trace_bound)


def _columns(ps: PolySeries) -> list[Optional[NuIndex]]:
    from .quadfield import enumerate_indices

    return [None] + list(enumerate_indices(ps.disc, ps.trace_bound))


def coefficient_matrix(ps: PolySeries) -> tuple[list, list, list[list[Fraction]]]:
    """
    Rows = monomials, columns = (constant, indices in (trace, m) order); a
    coefficient a + b sqrt D occupies two columns when the series is irrational.
    """
    rows = [key for key, _ in ps.items()]
    cols = _columns(ps)
    split = not ps.is_rational()
    mat = []
    for key in rows:
        s = ps[key]
        row = []
        for nu in cols:
            c = s.coefficient(nu)
            row.append(c.a)
            if split:
                row.append(c.b)
        mat.append(row)
    return rows, cols, mat


def cusp_rank(ps: PolySeries) -> int:
    """Rank over Q of the monomial-by-index coefficient matrix."""
    rows, _, mat = coefficient_matrix(ps)
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in mat]).rank()


# Eisenstein weights whose monomials span the parallel even-weight forms
# (symmetric forms for the quadratic field)
MODULAR_GENERATORS = {1: (4, 6), 5: (2, 6, 10)}


def _exponents(k: int, gens: tuple[int, ...]):
    if not gens:
        if k == 0:
            yield ()
        return
    for a in range(k // gens[0] + 1):
        for rest in _exponents(k - a * gens[0], gens[1:]):
            yield (a,) + rest


def modular_basis(k: int, D: int, trace_bound: int) -> Optional[list[FourierSeries]]:
    """Products of generator Eisenstein series of weight k, or None if no generators are known for D."""
    _check_weight(k)
    gens = MODULAR_GENERATORS.get(D)
    if gens is None:
        return None
    out = []
    for exps in _exponents(k, gens):
        f = FourierSeries.one(D, trace_bound)
        for a, h in zip(exps, gens):
            for _ in range(a):
                f = mul(f, eisenstein(h, D, trace_bound))
        out.append(f)
    return out


def _row(f: FourierSeries, cols: list) -> list:
    row = []
    for nu in cols:
        c = f.coefficient(nu)
        row += [sympy.Rational(c.a.numerator, c.a.denominator), sympy.Rational(c.b.numerator, c.b.denominator)]
    return row


def in_modular_span(f: FourierSeries, k: int) -> Optional[bool]:
    """
    Whether f is a combination of generator monomials of weight k, i.e. a
    modular form, through f's truncation.  None when no generators are known.
    """
    basis = modular_basis(k, f.disc, f.trace_bound)
    if basis is None:
        return None
    if f.is_zero():
        return True
    cols = [None] + sorted({nu for g in basis + [f] for nu in g.indices()}, key=lambda nu: (nu.n, nu.m))
    m = sympy.Matrix([_row(g, cols) for g in basis])
    return sympy.Matrix.vstack(m, sympy.Matrix([_row(f, cols)])).rank() == m.rank()


@dataclass
class Eigenform:
    k: int
    disc: int
    rank: int
    form: Optional[FourierSeries] = None
    even: dict[int, Fraction] = field(default_factory=dict)
    odd: dict[int, Fraction] = field(default_factory=dict)
    scalar: Fraction = Fraction(0)
    factorization_exact: bool = False

    def coefficient(self, nu: NuIndex) -> Fraction:
        """Coefficient at any index, read through its unit orbit."""
        return self.form[canonical_rep(nu, self.disc)].a if self.disc != 1 else self.form[nu].a

    def even_ratios(self) -> dict[int, Fraction]:
        base = self.even[min(self.even)]
        return {n: c / base for n, c in sorted(self.even.items())}

    def odd_ratios(self) -> dict[int, Fraction]:
        base = self.odd[min(self.odd)]
        return {n: c / base for n, c in sorted(self.odd.items())}


def extract_eigenform(k: int, D: int, trace_bound: int, cusp: Optional[PolySeries] = None) -> Eigenform:
    """
    Factor a rank-one cusp part as R(X, Y) f(tau), with f normalized to have
    first nonzero coefficient 1, and split R into even (X) and odd (Y) parts:
    the coefficient of N(X)^a N(Y)^b (a even, b odd) is scalar * even[a] * odd[b].

    Rank 0 returns an empty result; rank >= 2 raises :class:`UnsupportedCase`.
    """
    cusp = extract_cusp(k, D, trace_bound) if cusp is None else cusp
    rank = cusp_rank(cusp)
    if rank == 0:
        return Eigenform(k, D, 0)
    if rank > 1:
        raise UnsupportedCase(f"cusp part has rank {rank}; eigenform disentangling is not supported")
    items = cusp.items()
    _, base = items[0]
    first = next(nu for nu, c in base.items())
    f = scale(base, 1 / base[first])
    R: dict[tuple[int, int], Fraction] = {}
    for (xe, ye), s in items:
        if len(set(xe)) > 1 or len(set(ye)) > 1:
            raise UnsupportedCase("non-parallel monomial in the cusp part")
        c = s[first] / f[first]
        if not c.is_rational():
            raise UnsupportedCase("irrational period coefficient")
        R[(xe[0], ye[0])] = c.a
    mixed = {(a, b): c for (a, b), c in R.items() if a % 2 == 0 and b % 2 == 1}
    if not mixed:
        raise UnsupportedCase("no even-by-odd monomials in the cusp part")
    a0 = min(a for a, _ in mixed)
    b0 = min(b for a, b in mixed if a == a0)
    scalar = mixed[(a0, b0)]
    even = {a: c / scalar for (a, b), c in mixed.items() if b == b0}
    odd = {b: c / scalar for (a, b), c in mixed.items() if a == a0}
    # exact when the even-by-odd block is an outer product and R is symmetric in X, Y
    exact = all(scalar * even.get(a, 0) * odd.get(b, 0) == c for (a, b), c in mixed.items()) and all(
        R.get((b, a)) == c for (a, b), c in R.items()
    )
    return Eigenform(k, D, 1, f, even, odd, scalar, exact)


def _vbinom(n: int, ks: tuple[int, ...]) -> int:
    out = 1
    for x in ks:
        out *= comb(n, x)
    return out


def rankin_cohen(f: FourierSeries, g: FourierSeries, k1: int, k2: int, p: int) -> FourierSeries:
    """
    Parallel Rankin-Cohen bracket in the normalized derivative D/(2 pi i):

        [f, g]_p = sum_{l + l' = (p,...,p)} (-1)^|l| C(k1+p-1, l') C(k2+p-1, l) D^l f D^l' g,

    binomials taken coordinatewise.  For p = 0 this is the product f g.
    """
    if p < 0:
        raise ValueError("p must be non-negative")
    if f.disc != g.disc:
        raise ValueError("discriminant mismatch")
    t = f.t
    total = FourierSeries.zero(f.disc, min(f.trace_bound, g.trace_bound))
    for ell in product(range(p + 1), repeat=t):
        ellp = tuple(p - e for e in ell)
        c = (-1) ** sum(ell) * _vbinom(k1 + p - 1, ellp) * _vbinom(k2 + p - 1, ell)
        total = add(total, scale(mul(nu_twist(f, ell), nu_twist(g, ellp)), c))
    return total


@dataclass
class RCReport:
    k: int
    p: int
    q: int
    disc: int
    product_coefficient: FourierSeries
    bracket_multiple: FourierSeries
    diff: FourierSeries
    twisted_singular: FourierSeries  # part of the product coefficient from g_{0,0} g_{h,l}, l != 0

    @property
    def zero(self) -> bool:
        return self.diff.is_zero()


def admissible_rc_pairs(k: int) -> list[tuple[int, int]]:
    return [(p, q) for q in range((k - 2) // 2 + 1) for p in range(q) if (p + q) % 2]


def rc_consistency(k: int, p: int, q: int, D: int, trace_bound: int, layer: Optional[PolySeries] = None) -> RCReport:
    """
    Compare the coefficient of N(X)^p N(Y)^q in b_k with

        2^(2t) / (Gamma(q+1)^t Gamma(k-q-1)^t) [G_{k-1-q-p}, G_{q+1-p}]_p.
    """
    _check_weight(k)
    if not (0 <= p < q <= (k - 2) // 2) or (p + q) % 2 == 0:
        raise ValueError(f"(p, q) = ({p}, {q}) is not admissible for k = {k}")
    check_disc(D)
    t = field_degree(D)
    layer = product_layer(k, D, trace_bound) if layer is None else layer
    lhs = layer.norm_coefficient(p, q)
    k1, k2 = k - 1 - q - p, q + 1 - p
    bracket = rankin_cohen(eisenstein(k1, D, trace_bound), eisenstein(k2, D, trace_bound), k1, k2, p)
    rhs = scale(bracket, Fraction(2 ** (2 * t), (factorial(q) * factorial(k - q - 2)) ** t))
    singular = product_layer(k, D, trace_bound, twisted_singular_only=True).norm_coefficient(p, q)
    return RCReport(k, p, q, D, lhs, rhs, add(lhs, scale(rhs, -1)), singular)
