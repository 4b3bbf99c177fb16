"""Tests for the contour-residue route: f_{A,B}, moments, two-point data,
identity/ODE verifiers."""

import math
from fractions import Fraction

import pytest

from hzlag.residues import (
    IDENTITY_TAGS,
    exp_mean_moments,
    exp_mean_series,
    fab,
    fab_generalized,
    two_point_series,
    verify_identity,
    verify_ode,
    verify_t1,
)
from hzlag.wick import complex_wishart_moment, connected_moments


def test_fab_trivial_cases():
    assert fab(0, 0).value.is_zero
    assert fab(3, 0).value.is_zero  # no pole at z = 0 without the B factor
    assert fab(2, 2).value(Fraction(1, 2)) == 6


def test_fab_symmetric_small():
    # f_{1,1}(u) = -u/(u-1): residue of (1 - 1/z)(1 + 1/(u+z-1)) at z = 0
    f = fab(1, 1).value
    for x in (Fraction(2), Fraction(3), Fraction(-1)):
        assert f(x) == -x / (x - 1)


def test_exp_mean_series_scaling():
    # the raw u-coefficient carries N^m: m! * c_m = N^m <tr H^m>
    N = 3
    s = exp_mean_series(N, 5)
    moms = exp_mean_moments(N, 5)
    for m in range(6):
        assert math.factorial(m) * s.coefficient(m) == Fraction(N) ** m * moms[m]


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_moments_match_wick_oracle(N):
    moms = exp_mean_moments(N, 6)
    assert moms[0] == N
    for m in range(1, 7):
        assert moms[m] == complex_wishart_moment((m,), "N", "N")(N)


def test_moments_gamma_collapse():
    moms = exp_mean_moments(1, 6)
    assert moms == [Fraction(math.factorial(m)) for m in range(7)]


@pytest.mark.parametrize("N", [1, 2, 3])
def test_two_point_matches_connected_wick(N):
    tp = two_point_series(N, 5)
    for m1 in range(6):
        for m2 in range(6 - m1):
            if m1 == 0 and m2 == 0:
                continue
            got = tp.coefficient(m1, m2)
            if min(m1, m2) == 0:
                assert got == 0  # connected part against tr(1) vanishes
            else:
                want = connected_moments((m1, m2))(N)
                want /= math.factorial(m1) * math.factorial(m2)
                assert got == want


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_two_point_u1u2_universal(N):
    assert two_point_series(N, 2).coefficient(1, 1) == 1


def test_two_point_truncation_guard():
    tp = two_point_series(2, 3)
    with pytest.raises(IndexError):
        tp.coefficient(2, 2)


@pytest.mark.parametrize("tag", IDENTITY_TAGS)
def test_identities_small_window(tag):
    recs = verify_identity(tag, amax=5, bmax=5, nmax=5)
    assert recs, tag
    bad = [r for r in recs if not r.ok]
    assert not bad, bad


@pytest.mark.parametrize("which,nmax", [("DN", 5), ("K1", 5), ("K2", 4)])
def test_odes_structurally_zero(which, nmax):
    for N in range(1, nmax + 1):
        rec = verify_ode(which, N)
        assert rec.ok, rec.detail


@pytest.mark.parametrize("N", [1, 2, 3, 4])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_t1_rectangular_reflection(N, k):
    rec = verify_t1(N, k)
    assert rec.ok, rec.detail


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_fab_generalized_matches_rectangular_wick(N, k):
    # the u-series encodes the rectangular moments up to the overall sign
    # (-1)^(N+k) carried by the residue normalization
    from hzlag.exact import series_of_rational

    f = fab_generalized(N, k)
    s = series_of_rational(f, 0, 4)
    cols = "N" if k == 0 else f"N+{k}"
    sign = (-1) ** (N + k)
    for m in range(5):
        want = complex_wishart_moment((m,), "N", cols)(N) if m else Fraction(N)
        got = sign * math.factorial(m) * s.coefficient(m) / Fraction(N) ** m
        assert got == want
