"""Exact contour-integral building blocks for the Laguerre ensemble.

The central object is

    f_{A,B}(u) = residue at z=0 of (1 + 1/(u+z-1))^A (1 - 1/z)^B,

computed by expanding the first factor as a power series in z over the field
of rational functions in u and pairing it against the explicit binomial
Laurent expansion of (1 - 1/z)^B.  The same mechanism evaluates the
rectangular-ensemble integral and the iterated two-point residues, so one
code path serves every integrand shape in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import BiSeries, RationalFunction, TruncSeries, UniPoly, gen_binom, series_of_rational
from .reports import CheckRecord, record

__all__ = [
    "FabValue",
    "TwoPointValue",
    "fab",
    "fab_generalized",
    "two_point_series",
    "exp_mean_series",
    "exp_mean_moments",
    "verify_identity",
    "verify_ode",
    "verify_t1",
    "IDENTITY_TAGS",
    "ODE_TAGS",
]

VAR = "u"

IDENTITY_TAGS = (
    "feat-1",
    "fAB-der",
    "fAB-der-der",
    "fAB-quad",
    "der-3",
    "id",
    "feat-2",
    "T-5a",
    "T-5b",
    "k2-second-derivative",
)
ODE_TAGS = ("DN", "K1", "K2")


def _u() -> RationalFunction:
    return RationalFunction.from_poly(UniPoly.ident(VAR))


def _const(c) -> RationalFunction:
    return RationalFunction.const(VAR, c)


def _u_minus_1_pow(k: int) -> UniPoly:
    return UniPoly(VAR, [-1, 1]) ** k


@lru_cache(maxsize=None)
def _ratio_series(a: int, order: int) -> tuple[RationalFunction, ...]:
    """z-series of ((u+z)/(u+z-1))^a through z^order, coefficients in Q(u).

    (u+z)^a is a polynomial in z; (u+z-1)^-a expands around z=0 as
    sum_m C(-a, m) (u-1)^(-a-m) z^m.
    """
    # coefficient of z^i in (u+z)^a is C(a,i) u^(a-i)
    p1 = [
        RationalFunction.from_poly(math.comb(a, i) * UniPoly.ident(VAR) ** (a - i))
        for i in range(a + 1)
    ]
    p2 = [
        RationalFunction(UniPoly.const(VAR, gen_binom(-a, m)), _u_minus_1_pow(a + m))
        for m in range(order + 1)
    ]
    out = []
    for j in range(order + 1):
        s = _const(0)
        for i in range(min(j, a) + 1):
            if not p1[i].is_zero:
                s = s + p1[i] * p2[j - i]
        out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class FabValue:
    """f_{A,B}(u) as an exact rational function."""

    A: int
    B: int
    value: RationalFunction


@lru_cache(maxsize=None)
def fab(A: int, B: int) -> FabValue:
    """Exact f_{A,B}(u) for nonnegative integers A, B."""
    if A < 0 or B < 0:
        raise ValueError("indices must be nonnegative")
    if B == 0:
        return FabValue(A, B, _const(0))
    series = _ratio_series(A, B - 1)
    res = _const(0)
    for j in range(1, B + 1):
        res = res + math.comb(B, j) * (-1) ** j * series[j - 1]
    return FabValue(A, B, res)


def _fab_weighted(A: int, B: int, weight: list[RationalFunction]) -> RationalFunction:
    """Residue at z=0 of ((u+z)/(u+z-1))^A (1-1/z)^B w(z), w a z-polynomial
    with coefficients in Q(u) (``weight[i]`` multiplies z^i)."""
    if B == 0:
        return _const(0)
    series = _ratio_series(A, B - 1)
    res = _const(0)
    for j in range(1, B + 1):
        cb = math.comb(B, j) * (-1) ** j
        for i, w in enumerate(weight):
            if 0 <= j - 1 - i <= B - 1 and not w.is_zero:
                res = res + cb * w * series[j - 1 - i]
    return res


def fab_generalized(N: int, k: int) -> RationalFunction:
    """<tr e^{uH}> for H = B B† with B of shape N x (N+k), exactly.

    Residue at z=0 of (1/u) (1-z)^{N+k} (z+u)^N / ((z+u-1)^{N+k} z^N):
    the pole has order exactly N, so only z-orders up to N-1 are needed.
    """
    if N < 1 or k < 0:
        raise ValueError("need N >= 1, k >= 0")
    order = N - 1
    # (1-z)^{N+k}
    f1 = [_const(gen_binom(N + k, i) * (-1) ** i) for i in range(order + 1)]
    # (z+u)^N
    f2 = [RationalFunction.from_poly(math.comb(N, i) * UniPoly.ident(VAR) ** (N - i))
          for i in range(min(N, order) + 1)]
    # (z+u-1)^-(N+k)
    f3 = [
        RationalFunction(UniPoly.const(VAR, gen_binom(-(N + k), m)), _u_minus_1_pow(N + k + m))
        for m in range(order + 1)
    ]
    res = _const(0)
    for i1 in range(order + 1):
        if f1[i1].is_zero:
            continue
        for i2 in range(min(len(f2) - 1, order - i1) + 1):
            i3 = order - i1 - i2
            res = res + f1[i1] * f2[i2] * f3[i3]
    return res / _u()


def exp_mean_series(N: int, order: int) -> TruncSeries:
    """u-series of f_{N,N}(u)/u through u^order.

    The contour variable couples to N*H, so the coefficient of u^m is
    N^m <tr H^m> / m!.
    """
    mean = fab(N, N).value / _u()
    return series_of_rational(mean, 0, order)


def exp_mean_moments(N: int, mmax: int) -> list[Fraction]:
    """Exact <tr H^m> for m = 0..mmax: m! / N^m times the m-th coefficient
    of f_{N,N}(u)/u."""
    s = exp_mean_series(N, mmax)
    return [math.factorial(m) * s.coefficient(m) / Fraction(N) ** m for m in range(mmax + 1)]


@dataclass(frozen=True)
class TwoPointValue:
    """Connected <tr e^{u1 H} tr e^{u2 H}> as a bivariate series, truncated
    at the given total order in (u1, u2)."""

    N: int
    total_order: int
    value: BiSeries

    def coefficient(self, m1: int, m2: int) -> Fraction:
        if m1 + m2 > self.total_order:
            raise IndexError(f"total degree {m1 + m2} beyond truncation {self.total_order}")
        return self.value.data.get((m1, m2), Fraction(0))


def two_point_series(N: int, order: int) -> TwoPointValue:
    """Connected two-trace exponential mean through total (u1,u2)-order `order`.

    The double contour term is evaluated by iterated residues at z2=0 then
    z1=0 (nested contours, |z1| > |z2|); the cross factor
    1/((z1-z2+u1)(z1-z2-u2)) is expanded with u1, u2 formal, all its poles
    kept outside the contours.  With this convention the double residue by
    itself is the connected correlator; no compensator term is needed.  The
    contour variables couple to N*H, so the raw coefficient of u1^m1 u2^m2
    is divided by N^(m1+m2) to give <tr H^m1 tr H^m2>_conn / (m1! m2!).
    """
    if N < 1 or order < 1:
        raise ValueError("need N >= 1, order >= 1")
    imax = 2 * N + order

    # p[(i, a)] = [z^i u^a] (1-z)^N ((z+u)/(z+u-1))^N, analytic at z=0:
    # ((z+u)/(z+u-1))^N = sum_j C(N-1+j, j) (z+u)^(N+j) * (-1)^N * (-1)^N
    q: dict[tuple[int, int], Fraction] = {}
    for i in range(imax + 1):
        for a in range(order + 1):
            j = i + a - N
            if j >= 0:
                q[(i, a)] = Fraction(math.comb(N - 1 + j, j) * math.comb(N + j, a))
    p: dict[tuple[int, int], Fraction] = {}
    for (i, a), v in q.items():
        for t in range(min(N, imax - i) + 1):
            c = math.comb(N, t) * (-1) ** t
            p[(i + t, a)] = p.get((i + t, a), Fraction(0)) + c * v

    data: dict[tuple[int, int], Fraction] = {}
    for a1 in range(order + 1):
        for a2 in range(order + 1 - a1):
            total = Fraction(0)
            for m1 in range(a1 + 1):
                for m2 in range(a2 + 1):
                    big_m = m1 + m2 + 2
                    for j in range(N):
                        inner = p.get((N - 1 - j, a2 - m2), Fraction(0))
                        if inner == 0:
                            continue
                        outer = p.get((N - 1 + big_m + j, a1 - m1), Fraction(0))
                        if outer == 0:
                            continue
                        total += (-1) ** m1 * math.comb(big_m - 1 + j, j) * inner * outer
            if total:
                data[(a1, a2)] = total / Fraction(N) ** (a1 + a2)

    return TwoPointValue(N, order, BiSeries("u1", "u2", data, order, order))


# ---------------------------------------------------------------------------
# identity and ODE verification
# ---------------------------------------------------------------------------


def _f(A: int, B: int) -> RationalFunction:
    return fab(A, B).value


def _residual_record(check_id: str, anchor: str, residual: RationalFunction) -> CheckRecord:
    return record(check_id, anchor, residual.is_zero, detail=str(residual))


def verify_identity(
    which: str, amax: int = 10, bmax: int = 10, nmax: int = 10
) -> list[CheckRecord]:
    """Verify one of the f_{A,B} identities over a range of small indices.

    Every check forms the exact rational-function residual and asserts it is
    structurally zero; no numerical tolerance is involved anywhere.
    """
    u = _u()
    recs: list[CheckRecord] = []

    def rr(tag: str, idx: str, residual: RationalFunction) -> None:
        recs.append(_residual_record(f"{tag}[{idx}]", tag, residual))

    if which == "feat-1":
        for A in range(amax + 1):
            for B in range(bmax + 1):
                rr(which, f"A={A},B={B}", _f(A, B) - _f(B, A) - (A - B))
    elif which == "fAB-der":
        for A in range(1, amax + 1):
            for B in range(1, bmax + 1):
                d = _f(A, B).derivative()
                rr(which, f"A={A},B={B},side=A",
                   d + A * (_f(A - 1, B) - 2 * _f(A, B) + _f(A + 1, B)))
                rr(which, f"A={A},B={B},side=B",
                   d + B * (_f(A, B - 1) - 2 * _f(A, B) + _f(A, B + 1)))
    elif which == "fAB-der-der":
        for A in range(1, amax + 1):
            for B in range(1, bmax + 1):
                d2 = _f(A, B).derivative().derivative()
                nine = (
                    _f(A - 1, B - 1) + _f(A - 1, B + 1) + _f(A + 1, B - 1) + _f(A + 1, B + 1)
                    - 2 * _f(A - 1, B) - 2 * _f(A, B - 1) - 2 * _f(A + 1, B) - 2 * _f(A, B + 1)
                    + 4 * _f(A, B)
                )
                rr(which, f"A={A},B={B},form=9term", d2 - A * B * nine)
                frac = (
                    (_f(A - 1, B) + _f(A, B - 1)) / (u * (u + 1))
                    + (_f(A + 1, B) + _f(A, B + 1)) / (u * (u - 1))
                    - 4 * _f(A, B) / ((u + 1) * (u - 1))
                )
                rr(which, f"A={A},B={B},form=rational", d2 - A * B * frac)
    elif which == "fAB-quad":
        for A in range(1, amax + 1):
            for B in range(1, bmax + 1):
                rr(which, f"A={A},B={B}",
                   _f(A, B) + (u + 1) / (u - 1) * _f(A - 1, B - 1)
                   - u / (u - 1) * (_f(A - 1, B) + _f(A, B - 1)))
    elif which == "der-3":
        for N in range(1, nmax + 1):
            d2 = _f(N, N).derivative().derivative()
            rhs = N * N * (
                (2 * _f(N, N - 1) - 1) / (u * (u + 1))
                + (2 * _f(N, N + 1) + 1) / (u * (u - 1))
                - 4 * _f(N, N) / ((u + 1) * (u - 1))
            )
            rr(which, f"N={N}", d2 - rhs)
    elif which == "id":
        for N in range(1, nmax + 1):
            res = _fab_weighted(N, N, [u - 1, _const(2)])
            rr(which, f"N={N}", res + u * N)
    elif which == "feat-2":
        for N in range(1, nmax + 1):
            lhs = N * (_f(N, N) - _f(N, N - 1))
            rhs = (1 - u) / _const(2) * _f(N, N).derivative() + _f(N, N) / _const(2) - _const(N) / 2
            rr(which, f"N={N}", lhs - rhs)
    elif which == "T-5a":
        for N in range(1, nmax + 1):
            res = ((N + 1) * u - 1) * ((u + 1) * _f(N, N) - 2 * u * _f(N + 1, N)) \
                + (N + 1) * u * (u - 1) * _f(N + 2, N) + N * u
            rr(which, f"N={N}", res)
    elif which == "T-5b":
        for N in range(1, nmax + 1):
            res = ((N + 1) * u - 1) * ((u - 1) * _f(N + 2, N + 2) - 2 * u * _f(N + 2, N + 1)) \
                + (N + 1) * u * (u + 1) * _f(N + 2, N) - (N + 2) * u
            rr(which, f"N={N}", res)
    elif which == "k2-second-derivative":
        for N in range(1, nmax + 1):
            f = _f(N + 2, N)
            res = f.derivative().derivative() \
                - 2 * N * (N + 2) / (u * (u * u - 1)) * (_f(N + 2, N + 1) - _f(N + 1, N)) \
                + (2 * (N + 1) * u - 2) / (u * (u * u - 1)) * f.derivative()
            rr(which, f"N={N}", res)
    else:
        raise ValueError(f"unknown identity tag {which!r}")
    return recs


def verify_ode(which: str, N: int) -> CheckRecord:
    """Substitute an exact f_{A,B} with its derivatives into one of the three
    ODEs and assert the residual is structurally zero."""
    u = _u()
    if which == "DN":
        f = _f(N, N)
        f1, f2 = f.derivative(), f.derivative().derivative()
        res = f2 + 4 * N / (u * u - 1) * f1 - 2 * N / (u * (u * u - 1)) * f
    elif which == "K1":
        f = _f(N + 1, N)
        f1, f2 = f.derivative(), f.derivative().derivative()
        lhs = (u * N / (u - 1) + Fraction(1, 2)) * f2
        rhs = (
            (-8 * u * u * N * N + (-8 * u * u + 4 * u) * N - (u - 1) * (u - 1))
            / (2 * u * (u * u - 1) * (u - 1)) * f1
            + 2 * N * (N + 1) / ((u * u - 1) * (u - 1)) * f
            - _const(N * (N + 1)) / ((u * u - 1) * (u - 1))
        )
        res = lhs - rhs
    elif which == "K2":
        f = _f(N + 2, N)
        f1 = f.derivative()
        f2 = f1.derivative()
        f3 = f2.derivative()
        f4 = f3.derivative()
        n1 = N + 1
        res = (
            f4
            + 2 * (3 * u**3 + 2 * n1 * u**2 - u + n1) / (u**2 * (u * u - 1)) * f3
            + 2 * (
                3 * u**5 + 2 * n1 * u**4 - 2 * n1 * n1 * u**3 + 3 * n1 * u**2
                + (6 * n1 * n1 - 3) * u - 3 * n1
            ) / (u**3 * (u * u - 1) ** 2) * f2
            - 2 * n1 * (4 * n1 * u**2 + 8 * N * (N + 2) * u - 10 * n1)
            / (u**3 * (u * u - 1) ** 2) * f1
            + 4 * N * n1 * (N + 2) * (u + 2 * n1)
            / (u**2 * (u * u - 1) ** 2 * (n1 * u - 1)) * (f - 1)
        )
    else:
        raise ValueError(f"unknown ODE tag {which!r}")
    return _residual_record(f"ode-{which}[N={N}]", which, res)


def verify_t1(N: int, k: int) -> CheckRecord:
    """Check that the rectangular-ensemble residue equals
    (-1)^(N+k-1) f_{N+k,N}(1/u) as rational functions."""
    lhs = fab_generalized(N, k)
    rhs = (-1) ** (N + k - 1) * fab(N + k, N).value.compose_inverse()
    return _residual_record(f"T-1[N={N},k={k}]", "T-1", lhs - rhs)
