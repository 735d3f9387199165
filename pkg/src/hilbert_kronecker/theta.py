"""
Degree-one oracle: the Kronecker series as a quotient of Jacobi theta series,

    F_tau(u, v) = theta'(0) theta(u + v) / (theta(u) theta(v)),
    theta(u)    = sum_n (-1)^n q^((n + 1/2)^2 / 2) e^((n + 1/2) u).

Built directly from the theta sum with plain lists of Fractions, so it shares
no code with the Eisenstein/Kuznetsov route it is compared against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

__all__ = ["ThetaSeries", "theta", "kronecker_via_theta", "theta_prime_zero"]

QList = list  # list[Fraction], index = power of q


def _qmul(a: QList, b: QList, N: int) -> QList:
    out = [Fraction(0)] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: N + 1 - i]):
            if y:
                out[i + j] += x * y
    return out


def _qinv(a: QList, N: int) -> QList:
    if not a[0]:
        raise ZeroDivisionError("q-series with zero constant term")
    out = [Fraction(0)] * (N + 1)
    out[0] = 1 / Fraction(a[0])
    for n in range(1, N + 1):
        s = sum(a[i] * out[n - i] for i in range(1, min(n, len(a) - 1) + 1))
        out[n] = -s * out[0]
    return out


def _qadd(a: QList, b: QList) -> QList:
    return [x + y for x, y in zip(a, b)]


@dataclass
class ThetaSeries:
    """theta(u) = sum_j coeffs[j] u^j, each coefficient a series in w = q^(1/8)."""

    q_order: int
    u_order: int
    coeffs: dict[int, dict[int, Fraction]]

    def coefficient(self, j: int, w_power: int) -> Fraction:
        return self.coeffs.get(j, {}).get(w_power, Fraction(0))


def _theta_terms(q_order: int):
    # n and -n-1 give the same q-power n(n+1)/2; yields (n, q-power) for n in Z
    n = 0
    while n * (n + 1) // 2 <= q_order:
        yield n, n * (n + 1) // 2
        yield -n - 1, n * (n + 1) // 2
        n += 1


def theta(q_order: int, u_order: int) -> ThetaSeries:
    """theta(u) through q^q_order (w^(8 q_order + 1)) and u^u_order."""
    coeffs: dict[int, dict[int, Fraction]] = {}
    for n, qp in _theta_terms(q_order):
        w_power = (2 * n + 1) ** 2  # 8 * (n + 1/2)^2 / 2
        half = Fraction(2 * n + 1, 2)
        sign = -1 if n % 2 else 1
        for j in range(u_order + 1):
            c = sign * half ** j / factorial(j)
            row = coeffs.setdefault(j, {})
            row[w_power] = row.get(w_power, Fraction(0)) + c
    for row in coeffs.values():
        for w in [w for w, c in row.items() if not c]:
            del row[w]
    return ThetaSeries(q_order, u_order, coeffs)


def _reduced_theta(q_order: int, u_order: int) -> list[QList]:
    # theta(u) = w * u * A(u); returns A's u-coefficients A_j (only even j nonzero)
    th = theta(q_order, u_order + 1)
    out = []
    for j in range(u_order + 1):
        row = th.coeffs.get(j + 1, {})
        q = [Fraction(0)] * (q_order + 1)
        for w_power, c in row.items():
            qp = (w_power - 1) // 8
            if qp <= q_order:
                q[qp] += c
        out.append(q)
    return out


def theta_prime_zero(q_order: int) -> QList:
    """theta'(0) / w as a q-series: 1 - 3q + 5q^3 - 7q^6 + ..."""
    return _reduced_theta(q_order, 0)[0]


def kronecker_via_theta(q_order: int, u_order: int, v_order: int) -> dict[tuple[int, int], QList]:
    """
    F_tau(u, v) as {(i, j): q-series} for u^i v^j with i <= u_order,
    j <= v_order (i, j >= -1).  The w-prefactors cancel in the quotient.
    """
    M = u_order + v_order + 2
    N = q_order
    A = _reduced_theta(N, M)
    # 1 / A(u) as a power series in u
    inv0 = _qinv(A[0], N)
    B = [inv0]
    for j in range(1, M + 1):
        s = [Fraction(0)] * (N + 1)
        for i in range(1, j + 1):
            s = _qadd(s, _qmul(A[i], B[j - i], N))
        B.append([-x for x in _qmul(s, inv0, N)])
    # A(u + v) expanded binomially
    Auv: dict[tuple[int, int], QList] = {}
    for d in range(M + 1):
        for i in range(d + 1):
            if i > M or d - i > M:
                continue
            Auv[(i, d - i)] = [comb(d, i) * x for x in A[d]]
    # H(u, v) = A(0) A(u + v) / (A(u) A(v))
    H: dict[tuple[int, int], QList] = {}
    for (i, j), c in Auv.items():
        c = _qmul(c, A[0], N)
        for a in range(M + 1 - i):
            ca = _qmul(c, B[a], N)
            for b in range(M + 1 - j):
                if i + j + a + b > M:
                    break
                key = (i + a, j + b)
                term = _qmul(ca, B[b], N)
                H[key] = _qadd(H[key], term) if key in H else term
    # F = (1/u + 1/v) H
    F: dict[tuple[int, int], QList] = {}
    for (i, j), c in H.items():
        for key in ((i - 1, j), (i, j - 1)):
            if key[0] <= u_order and key[1] <= v_order:
                F[key] = _qadd(F[key], c) if key in F else list(c)
    return {key: c for key, c in F.items() if any(c)}
