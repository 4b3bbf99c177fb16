"""Recursion engines for genus-graded moment tables.

Four schemes live here — the Laguerre three-term recursion ("3-t"), the
closed form for the n = 1 column ("C1g"), the Gaussian moment-coefficient
recursion ("recurrence"), the v_k coefficient recursion ("rec-v2"), and
the generalized k = 1 eight-term recursion ("8-t") — plus the two
operator-equation verifiers that re-derive the
tables from the differential equations "int-2" and "W1" independently of
the table-filling code paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import binom_series, gen_binom
from .reports import CheckRecord, record
from .wick import MomentPoly, gue_moment

__all__ = [
    "ConstraintError",
    "IntegralityError",
    "LagCTable",
    "GaussBTable",
    "VTable",
    "HalfGenusTable",
    "do_norbury_table",
    "c1_closed_form",
    "gauss_hz_table",
    "vk_table",
    "glag_k1_table",
    "laguerre_ode_check",
    "glag_w1_ode_check",
    "lag_moment_from_table",
    "gauss_genus_coefficients",
    "gauss_gue_check",
    "glag_moment_from_table",
    "glag_series_coefficient",
]


class ConstraintError(ValueError):
    """A hard postcondition (constraint family) failed on a computed table."""


class IntegralityError(ValueError):
    """A recursion produced a non-integer entry where integers are forced."""


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LagCTable:
    """Laguerre genus-graded moment coefficients (g, n) -> C_n^(g)."""

    gmax: int
    nmax: int
    entries: dict = field(default_factory=dict)

    def value(self, g: int, n: int) -> Fraction:
        if n < 0 or g < 0:
            return Fraction(0)
        if g > self.gmax or n > self.nmax:
            raise KeyError(f"(g={g}, n={n}) outside table bounds")
        return self.entries[(g, n)]

    def integrality_violations(self) -> list[tuple[int, int]]:
        """Entries with g >= 0, n >= 1 that are not positive integers."""
        return [
            (g, n)
            for (g, n), v in sorted(self.entries.items())
            if n >= 1 and (v.denominator != 1 or v <= 0)
        ]


@dataclass(frozen=True)
class GaussBTable:
    """Gaussian genus-graded coefficients (g, k) -> b_k^(g), 1 <= g, 0 <= k < g."""

    gmax: int
    entries: dict = field(default_factory=dict)

    def value(self, g: int, k: int) -> Fraction:
        if k < 0 or k >= g:
            return Fraction(0)
        if g < 1 or g > self.gmax:
            raise KeyError(f"(g={g}, k={k}) outside table bounds")
        return self.entries[(g, k)]

    def integrality_violations(self) -> list[tuple[int, int]]:
        return [
            (g, k)
            for (g, k), v in sorted(self.entries.items())
            if v.denominator != 1 or v <= 0
        ]


@dataclass(frozen=True)
class VTable:
    """v_k-basis coefficients (g, k) -> a_k^(g), -3g <= k <= g."""

    gmax: int
    entries: dict = field(default_factory=dict)

    def value(self, g: int, k: int) -> Fraction:
        if g < 0 or g > self.gmax:
            raise KeyError(f"g={g} outside table bounds")
        return self.entries.get((g, k), Fraction(0))

    def row(self, g: int) -> dict[int, Fraction]:
        if g < 0 or g > self.gmax:
            raise KeyError(f"g={g} outside table bounds")
        return {k: v for (gg, k), v in self.entries.items() if gg == g}


@dataclass(frozen=True)
class HalfGenusTable:
    """Fractional-genus coefficients (2r, n) -> C_n^(r) for the k = 1 ensemble.

    The first index is the doubled half-integer genus q = 2r.
    """

    r2max: int
    nmax: int
    entries: dict = field(default_factory=dict)

    def value(self, q: int, n: int) -> Fraction:
        if q < 0 or n < 0:
            return Fraction(0)
        if q > self.r2max or n > self.nmax:
            raise KeyError(f"(2r={q}, n={n}) outside table bounds")
        return self.entries[(q, n)]


# ---------------------------------------------------------------------------
# table builders
# ---------------------------------------------------------------------------


def do_norbury_table(gmax: int, nmax: int) -> LagCTable:
    """Fill C_n^(g) through (gmax, nmax).

    Row g = 0 comes from the closed form 1/2 - (1/2)(1 - 4/x)^(1/2)
    (Catalan numbers); rows g >= 1 from the three-term relation "3-t":
    (n+2g+1) C_n^(g) = (n+2g-2)(n+2g-1)^2 C_n^(g-1) + 2(2n+4g-1) C_{n-1}^(g)
    with C_0^(g) = 0 for g >= 1.
    """
    if gmax < 0 or nmax < 0:
        raise ValueError("need gmax, nmax >= 0")
    entries: dict = {}
    # C_n^(0) = coefficient of x^(-1-n) in 1/2 - (1/2)(1-4/x)^(1/2)
    half_sqrt = binom_series(Fraction(1, 2), nmax + 1)
    for n in range(nmax + 1):
        entries[(0, n)] = -Fraction(1, 2) * half_sqrt.coefficient(n + 1) * (-4) ** (n + 1)
    for g in range(1, gmax + 1):
        entries[(g, 0)] = Fraction(0)
        for n in range(1, nmax + 1):
            prev_g = (n + 2 * g - 2) * (n + 2 * g - 1) ** 2 * entries[(g - 1, n)]
            prev_n = 2 * (2 * n + 4 * g - 1) * entries[(g, n - 1)]
            entries[(g, n)] = (prev_g + prev_n) / (n + 2 * g + 1)
    return LagCTable(gmax, nmax, entries)


def c1_closed_form(g: int) -> Fraction:
    """Closed form 2^g g! (2g-1)!! / (g+1) for the n = 1 column ("C1g")."""
    if g < 0:
        raise ValueError("need g >= 0")
    dfact = math.prod(range(1, 2 * g, 2))
    return Fraction(2**g * math.factorial(g) * dfact, g + 1)


def gauss_hz_table(gmax: int) -> GaussBTable:
    """Fill the Gaussian coefficients b_k^(g) for 1 <= g <= gmax ("recurrence").

    Seed b_k^(1) = delta_{k,0}; then
    (4g+2k+6) b_k^(g+1)
        = (4g+2k+1)(4g+2k+3) [(4g+2k+2) b_k^(g) + 4(4g+2k-1) b_{k-1}^(g)].
    Aborts with IntegralityError on a non-integer entry, which would signal
    a wrong seed convention.
    """
    if gmax < 1:
        raise ValueError("need gmax >= 1")
    entries: dict = {(1, 0): Fraction(1)}
    for g in range(1, gmax):
        for k in range(g + 1):
            s = 4 * g + 2 * k
            same = (s + 2) * entries.get((g, k), Fraction(0))
            lower = 4 * (s - 1) * entries.get((g, k - 1), Fraction(0))
            v = Fraction((s + 1) * (s + 3), s + 6) * (same + lower)
            if v.denominator != 1:
                raise IntegralityError(f"b_{k}^({g + 1}) = {v} is not an integer")
            entries[(g + 1, k)] = v
    return GaussBTable(gmax, entries)


def _rec_v2_rhs(prev: dict[int, Fraction], k: int) -> Fraction:
    """Right-hand side of the five-term relation "rec-v2" at index k,
    evaluated on the genus-(g-1) row ``prev`` (missing indices are zero)."""
    z = Fraction(0)
    return (
        Fraction((2 * k + 7) * (2 * k + 5) * (2 * k + 3), 32) * prev.get(k + 3, z)
        - Fraction((2 * k + 5) * (2 * k + 3) * (k + 1), 4) * prev.get(k + 2, z)
        + Fraction(3 * (2 * k + 3) * (2 * k + 1) ** 2, 16) * prev.get(k + 1, z)
        - Fraction((2 * k + 1) * k * (2 * k - 1), 4) * prev.get(k, z)
        + Fraction((2 * k - 1) ** 2 * (2 * k - 3), 32) * prev.get(k - 1, z)
    )


def consistency_form(row: dict[int, Fraction]) -> Fraction:
    """The linear form of the "consistency" constraint on one a-row."""
    z = Fraction(0)
    return (
        Fraction(105, 32) * row.get(3, z)
        - Fraction(15, 4) * row.get(2, z)
        + Fraction(9, 16) * row.get(1, z)
        - Fraction(3, 32) * row.get(-1, z)
    )


def vk_table(gmax: int) -> VTable:
    """Fill a_k^(g) for 0 <= g <= gmax via "rec-v2".

    Seed a_k^(0) = -delta_{k,0}/2; for g >= 1 and k != 0 the five-term
    relation gives 4k a_k^(g); a_0^(g) comes from the "asymptotic" sum rule.
    The "consistency" and "asym-r" constraint families are then asserted as
    hard postconditions (ConstraintError on violation).
    """
    if gmax < 0:
        raise ValueError("need gmax >= 0")
    entries: dict = {(0, 0): Fraction(-1, 2)}
    prev = {0: Fraction(-1, 2)}
    for g in range(1, gmax + 1):
        row: dict[int, Fraction] = {}
        for k in range(-3 * g, g + 1):
            if k == 0:
                continue
            row[k] = _rec_v2_rhs(prev, k) / (4 * k)
        row[0] = -sum(row.values())
        if consistency_form(row) != 0:
            raise ConstraintError(f"consistency form nonzero at g={g}")
        for r in range(2 * g + 2):
            if sum(Fraction(k) ** r * v for k, v in row.items()) != 0:
                raise ConstraintError(f"asym-r moment r={r} nonzero at g={g}")
        for k, v in row.items():
            entries[(g, k)] = v
        prev = row
    return VTable(gmax, entries)


def glag_k1_table(r2max: int, nmax: int) -> HalfGenusTable:
    """Fill the fractional-genus table C_n^(r) (q = 2r) via the eight-term
    relation "8-t", solving in increasing q then increasing subscript m.

    The relation for row q references subscript m+1 of rows q-1..q-4, so row
    q is filled internally through nmax + (r2max - q) and trimmed afterwards.
    """
    if r2max < 0 or nmax < 0:
        raise ValueError("need r2max, nmax >= 0")
    full: dict = {}

    def get(q: int, m: int) -> Fraction:
        if q < 0 or m < 0:
            return Fraction(0)
        return full.get((q, m), Fraction(0))

    for q in range(r2max + 1):
        for m in range(nmax + (r2max - q) + 1):
            n = m + q  # the relation index; subscripts below are n - q = m
            rhs = Fraction(0)
            if q == 0 and n == 0:
                rhs += 2
            if q == 1 and n == 0:
                rhs += 1
            if q == 1 and n == 1:
                rhs += 2
            if q == 2 and n == 1:
                rhs += 2
            known = (
                (n + 1) * get(q - 1, m + 1)
                - 4 * (2 * n - 1) * (get(q, m - 1) + get(q - 1, m))
                - (n - 1) * (n - 2) * (n - 3) * (2 * get(q - 2, m) + get(q - 3, m + 1))
                - (n + 1) * (n - 1) * get(q - 2, m + 1)
                + (n - 1) * (n - 2) * (n - 3) ** 2 * get(q - 4, m + 1)
            )
            full[(q, m)] = (rhs - known) / Fraction(2 * (n + 1))
    entries = {
        (q, m): v for (q, m), v in full.items() if q <= r2max and m <= nmax
    }
    return HalfGenusTable(r2max, nmax, entries)


# ---------------------------------------------------------------------------
# reconstructions used by the oracle cross-checks
# ---------------------------------------------------------------------------


def lag_moment_from_table(table: LagCTable, m: int) -> MomentPoly:
    """<tr H^m> for the square ensemble as sum_g C_{m-2g}^(g) N^(1-2g)."""
    terms: dict = {}
    for g in range(m // 2 + 1):
        if g > table.gmax or m - 2 * g > table.nmax:
            raise KeyError(f"moment {m} needs entries outside table bounds")
        terms[1 - 2 * g] = table.value(g, m - 2 * g)
    return MomentPoly(terms)


def gauss_genus_coefficients(table: GaussBTable, g: int, mmax: int) -> dict[int, Fraction]:
    """x-series coefficients of sum_k b_k^(g) (x^2-4)^(-(4g+2k+1)/2).

    Returns {m: coefficient of x^(-m-1)} for m <= mmax; these are the
    genus-g coefficients of the Gaussian moments.
    """
    out = {m: Fraction(0) for m in range(mmax + 1)}
    for k in range(g):
        b = table.value(g, k)
        if b == 0:
            continue
        j = 4 * g + 2 * k + 1  # (x^2-4)^(-j/2) = x^-j (1 - 4/x^2)^(-j/2)
        for i in range(0, (mmax + 1 - j) // 2 + 1):
            m = j + 2 * i - 1
            if 0 <= m <= mmax:
                out[m] += b * gen_binom(Fraction(-j, 2), i) * (-4) ** i
    return out


def gauss_gue_check(table: GaussBTable, mmax: int) -> list[CheckRecord]:
    """Compare the reconstructed x-series against the pairing-oracle GUE
    moments, genus by genus, for all even m <= mmax."""
    recs = []
    gtop = min(table.gmax, mmax // 2)
    for g in range(1, gtop + 1):
        series = gauss_genus_coefficients(table, g, mmax)
        ok, detail = True, ""
        for m in range(0, mmax + 1):
            want = gue_moment(m).coefficient(1 - 2 * g)
            if series[m] != want:
                ok, detail = False, f"m={m}: table {series[m]} oracle {want}"
                break
        recs.append(record(f"recurrence-gue[g={g}]", "recurrence", ok, detail))
    return recs


def glag_moment_from_table(table: HalfGenusTable, m: int) -> MomentPoly:
    """<tr H^m> for the k = 1 rectangular ensemble: sum_q C_{m-q}^(q/2) N^(1-q)."""
    terms: dict = {}
    for q in range(m + 1):
        if q > table.r2max or m - q > table.nmax:
            raise KeyError(f"moment {m} needs entries outside table bounds")
        v = table.value(q, m - q)
        if v:
            terms[1 - q] = v
    return MomentPoly(terms)


def glag_series_coefficient(table: HalfGenusTable, e: int) -> MomentPoly:
    """Coefficient of x^(-e) in the fractional-genus expansion, as a Laurent
    polynomial in N (exponent -q for the row q = 2r term)."""
    terms: dict = {}
    for q in range(min(e - 1, table.r2max) + 1):
        v = table.value(q, e - 1 - q)
        if v:
            terms[-q] = v
    return MomentPoly(terms)


# ---------------------------------------------------------------------------
# operator-equation verifiers
# ---------------------------------------------------------------------------


def laguerre_ode_check(table: LagCTable) -> list[CheckRecord]:
    """Apply the two operator blocks of "int-2" to the series
    W_1' = -sum N^(-2g) C_n^(g) (n+2g+1) x^(-2-2g-n) and assert every
    collected (N-power, x-power) coefficient that the table determines
    vanishes.  This re-derives "3-t" independently of the table filler.
    """
    acc: dict[tuple[int, int], Fraction] = {}

    def bump(key: tuple[int, int], v: Fraction) -> None:
        acc[key] = acc.get(key, Fraction(0)) + v

    for (g, n), cval in table.entries.items():
        c = -cval * (n + 2 * g + 1)
        if c == 0:
            continue
        e = 2 + 2 * g + n
        # -(1/N)[x^2 d^3 + 6x d^2 + 6 d] x^-e = e(e-1)(e-2) x^-(e+1) / N
        bump((-2 * g - 1, e + 1), c * e * (e - 1) * (e - 2))
        # N[x^2 d + 2x - 4x d - 6] x^-e = N[(2-e) x^-(e-1) + (4e-6) x^-e]
        bump((-2 * g + 1, e - 1), c * (2 - e))
        bump((-2 * g + 1, e), c * (4 * e - 6))

    recs = []
    for g in range(table.gmax + 1):
        p = -2 * g + 1
        for n in range(table.nmax + 1):
            e = 1 + 2 * g + n
            resid = acc.pop((p, e), Fraction(0))
            recs.append(
                record(f"int-2[g={g},n={n}]", "int-2", resid == 0, f"residual {resid}")
            )
    return recs


# operator blocks of "W1": N-power shift, x-exponent shift, coefficient as a
# function of the source exponent e (term x^-e); derived by applying each
# displayed differential operator to x^-e.
_W1_BLOCKS = (
    (-2, -1, lambda e: 2 * e),                           # N^2: -2x^2 d
    (-2, 0, lambda e: 4 - 8 * e),                        # N^2: 8x d + 4
    (-1, -1, lambda e: e),                               # N:   -x^2 d
    (-1, 0, lambda e: 4 - 8 * e),                        # N:   8x d + 4
    (0, 0, lambda e: 1 - e * e),                         # 1:   -x^2 d^2 - x d + 1
    (0, 1, lambda e: -2 * e * (e - 1) * (e - 2)),        # 1:   2x^2 d^3 + 12x d^2 + 12 d
    (1, 1, lambda e: -e * (e - 1) * (e - 2)),            # 1/N
    (2, 2, lambda e: e * (e + 1) * (e - 1) ** 2),        # 1/N^2
)

_W1_RHS = {(-2, 0): Fraction(2), (-1, 0): Fraction(1), (-1, 1): Fraction(2), (0, 1): Fraction(2)}


def glag_w1_ode_check(table: HalfGenusTable) -> list[CheckRecord]:
    """Apply the five N-graded operator blocks of "W1" to the double series
    W_1 = sum_q N^(-q) C_n^(q/2) x^(-1-q-n) and assert equality with the
    inhomogeneity 2N^2 + N + (2N+2)/x at every slot the table determines."""
    acc: dict[tuple[int, int], Fraction] = {}
    for (q, n), cval in table.entries.items():
        if cval == 0:
            continue
        e = 1 + q + n
        for dq, de, coeff in _W1_BLOCKS:
            key = (q + dq, e + de)
            acc[key] = acc.get(key, Fraction(0)) + cval * coeff(e)

    def determined(Q: int, E: int) -> bool:
        # every in-range source feeding slot (Q, E) must lie inside the table
        for dq, de, _ in _W1_BLOCKS:
            q, e = Q - dq, E - de
            n = e - 1 - q
            if q >= 0 and n >= 0 and (q > table.r2max or n > table.nmax):
                return False
        return True

    recs = []
    for Q in range(-2, table.r2max + 1):
        for E in range(0, table.nmax + Q + 3):
            if not determined(Q, E):
                continue
            got = acc.pop((Q, E), Fraction(0))
            want = _W1_RHS.get((Q, E), Fraction(0))
            recs.append(
                record(
                    f"W1[q={Q},e={E}]", "W1", got == want,
                    f"collected {got} expected {want}",
                )
            )
    return recs
