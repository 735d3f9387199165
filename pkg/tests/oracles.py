"""
Independent reference computations for the test suite.

Nothing here calls into the package except to read inputs; every value is
produced by a different route (brute force, generating functions via sympy,
classical closed forms).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import sympy


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def sigma(n: int, r: int) -> int:
    return sum(d ** r for d in divisors(n))


# zeta values ------------------------------------------------------------------


def siegel_zeta_minus_one(D: int) -> Fraction:
    """zeta_K(-1) = (1/60) sum_{b^2 < D, b = D mod 2} sigma_1((D - b^2)/4)."""
    total = sum(sigma((D - b * b) // 4, 1) for b in range(-isqrt(D), isqrt(D) + 1) if b * b < D and (b - D) % 2 == 0)
    return Fraction(total, 60)


def siegel_zeta_minus_three(D: int) -> Fraction:
    """zeta_K(-3) = (1/120) sum_{b^2 < D, b = D mod 2} sigma_3((D - b^2)/4)."""
    total = sum(sigma((D - b * b) // 4, 3) for b in range(-isqrt(D), isqrt(D) + 1) if b * b < D and (b - D) % 2 == 0)
    return Fraction(total, 120)


def _to_fraction(x) -> Fraction:
    x = sympy.nsimplify(x)
    return Fraction(int(x.p), int(x.q))


def bernoulli_gf(n_max: int) -> list[Fraction]:
    """B_0..B_n_max (B_1 = -1/2) from t / (e^t - 1)."""
    t = sympy.symbols("t")
    ser = sympy.series(t / (sympy.exp(t) - 1), t, 0, n_max + 1).removeO()
    return [_to_fraction(ser.coeff(t, n) * sympy.factorial(n)) for n in range(n_max + 1)]


def legendre_character(D: int, a: int) -> int:
    """Kronecker symbol (D/a) for the allowlisted discriminants, by Euler's criterion or mod-8 rule."""
    if D == 8:
        return {1: 1, 7: 1, 3: -1, 5: -1}.get(a % 8, 0)
    r = pow(a % D, (D - 1) // 2, D)
    return {0: 0, 1: 1, D - 1: -1}[r]


def twisted_bernoulli_gf(n: int, D: int) -> Fraction:
    """B_{n,chi} from sum_a chi(a) t e^{at} / (e^{Dt} - 1) = sum B_{n,chi} t^n / n!."""
    t = sympy.symbols("t")
    expr = sum(legendre_character(D, a) * t * sympy.exp(a * t) for a in range(1, D + 1)) / (sympy.exp(D * t) - 1)
    ser = sympy.series(expr, t, 0, n + 1).removeO()
    return _to_fraction(ser.coeff(t, n) * sympy.factorial(n))


# ideals of Q(sqrt D) ---------------------------------------------------------


def _is_integral(x2: int, y2: int, D: int) -> bool:
    # (x2 + y2 sqrt D)/2 with integers x2, y2
    if D % 4 == 1:
        return (x2 - y2) % 2 == 0
    return x2 % 2 == 0  # sqrt(D)/2 is integral when 4 | D


def _divides(a: tuple[int, int], b: tuple[int, int], D: int) -> bool:
    # a = (x + y sqrt D)/2 divides b iff b / a is integral
    ax, ay = a
    bx, by = b
    n4 = ax * ax - D * ay * ay  # 4 N(a)
    # b / a = b * conj(a) / N(a) = (bx + by r)(ax - ay r) / 4 / (n4/4)
    px = bx * ax - D * by * ay
    py = by * ax - bx * ay
    # quotient = (px + py r) / n4, written as (X + Y r)/2 -> X = 2 px / n4
    if (2 * px) % n4 or (2 * py) % n4:
        return False
    return _is_integral(2 * px // n4, 2 * py // n4, D)


def brute_divisor_sum(m: int, n: int, D: int, r: int) -> int:
    """
    sigma_r of the ideal ((m + n sqrt D)/2) by listing every element of
    bounded size that divides the generator, then collapsing associates.
    """
    beta = (m, n)
    N = abs(m * m - D * n * n) // 4
    found: list[tuple[int, int]] = []
    # a reduced generator has embeddings within a factor eps of sqrt(norm);
    # the box below covers eps < 4, i.e. D in {5, 8, 13}
    bound = 8 * isqrt(N) + 8
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if (x, y) == (0, 0) or not _is_integral(x, y, D):
                continue
            na = abs(x * x - D * y * y)
            if na == 0 or (4 * N) % na:
                continue
            if not _divides((x, y), beta, D):
                continue
            if any(_divides((x, y), g, D) and _divides(g, (x, y), D) for g in found):
                continue
            found.append((x, y))
    return sum((abs(x * x - D * y * y) // 4) ** r for x, y in found)


# classical q-series ----------------------------------------------------------


def qmul(a: list, b: list) -> list:
    n = min(len(a), len(b))
    return [sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(n)]


def classical_e4(N: int) -> list[Fraction]:
    return [Fraction(1)] + [Fraction(240 * sigma(n, 3)) for n in range(1, N + 1)]


def classical_e6(N: int) -> list[Fraction]:
    return [Fraction(1)] + [Fraction(-504 * sigma(n, 5)) for n in range(1, N + 1)]


def delta(N: int) -> list[Fraction]:
    """(E4^3 - E6^2) / 1728 through q^N."""
    e4, e6 = classical_e4(N), classical_e6(N)
    cube = qmul(qmul(e4, e4), e4)
    sq = qmul(e6, e6)
    return [(x - y) / 1728 for x, y in zip(cube, sq)]


def classical_g(k: int, N: int) -> list[Fraction]:
    """-B_k/(2k) + sum sigma_{k-1}(n) q^n, the rational-field Eisenstein series."""
    b = bernoulli_gf(k)[k]
    return [-b / (2 * k)] + [Fraction(sigma(n, k - 1)) for n in range(1, N + 1)]


def bracket_one(f: list, g: list, k1: int, k2: int) -> list:
    """[f, g]_1 = k1 f Dg - k2 Df g with D = q d/dq."""
    df = [n * c for n, c in enumerate(f)]
    dg = [n * c for n, c in enumerate(g)]
    return [k1 * x - k2 * y for x, y in zip(qmul(f, dg), qmul(df, g))]


def brute_mul(f: dict, g: dict, B: int) -> dict:
    """Convolution of {(m, n): c} dicts (constant under key None), truncated at trace B."""
    out: dict = {}
    for k1, c1 in f.items():
        for k2, c2 in g.items():
            if k1 is None and k2 is None:
                key = None
            elif k1 is None:
                key = k2
            elif k2 is None:
                key = k1
            else:
                key = (k1[0] + k2[0], k1[1] + k2[1])
            if key is not None and key[1] > B:
                continue
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}
