"""Acceptance gate: one test per top-level criterion, exact equality
throughout, with a wall-clock budget for each.  Every test prints a single
pass/fail line tagged with the check anchors it certifies."""

import math
import pathlib
import time
from fractions import Fraction

from hzlag.cli import payload_to_json, table_payload
from hzlag.recursions import (
    c1_closed_form,
    do_norbury_table,
    gauss_gue_check,
    gauss_hz_table,
    glag_k1_table,
    glag_moment_from_table,
    glag_series_coefficient,
    glag_w1_ode_check,
    lag_moment_from_table,
    vk_table,
)
from hzlag.residues import (
    IDENTITY_TAGS,
    exp_mean_moments,
    two_point_series,
    verify_identity,
    verify_ode,
    verify_t1,
)
from hzlag.spectral import (
    a_to_C,
    consistency_identity_check,
    w11_check,
    w30_planar_check,
)
from hzlag.wick import (
    complex_wishart_moment,
    connected_moments,
    genus_extract,
    gue_moment,
)

GOLDEN = pathlib.Path(__file__).parent / "golden" / "vk_gmax2.json"


def _gate(name: str, budget: float, work):
    """Run one criterion, print its pass/fail line, enforce its time budget."""
    t0 = time.perf_counter()
    ok, detail = True, ""
    try:
        work()
    except AssertionError as e:
        ok, detail = False, f" ({e})"
    elapsed = time.perf_counter() - t0
    in_budget = elapsed < budget
    status = "PASS" if (ok and in_budget) else "FAIL"
    print(f"{name}: {status} [{elapsed:.2f}s / budget {budget:.0f}s]{detail}")
    assert ok, f"{name}{detail}"
    assert in_budget, f"{name} exceeded budget: {elapsed:.2f}s >= {budget}s"


def test_criterion_01_vk_table_golden():
    def work():
        data = payload_to_json(table_payload("vk", {"gmax": 2}))
        assert data == GOLDEN.read_bytes(), "vk gmax=2 output differs from golden"

    _gate("criterion-01 [rec-v2]", 1.0, work)


def test_criterion_02_laguerre_table_structure():
    def work():
        table = do_norbury_table(12, 30)
        for g in range(13):
            assert table.value(g, 1) == c1_closed_form(g), f"C1g at g={g}"
        for g in range(9):
            for n in range(1, 31):
                v = table.value(g, n)
                assert v.denominator == 1 and v > 0, f"({g},{n}) -> {v}"

    _gate("criterion-02 [3-t, C1g]", 5.0, work)


def test_criterion_03_fab_identities():
    def work():
        for tag in IDENTITY_TAGS:
            recs = verify_identity(tag, amax=10, bmax=10, nmax=10)
            bad = [r.id for r in recs if not r.ok]
            assert not bad, f"{tag}: {bad[:3]}"

    _gate("criterion-03 [feat-1 .. k2-second-derivative]", 60.0, work)


def test_criterion_04_odes_and_reflection():
    def work():
        for which, top in (("DN", 10), ("K1", 8), ("K2", 6)):
            for N in range(1, top + 1):
                rec = verify_ode(which, N)
                assert rec.ok, f"{which} N={N}: {rec.detail}"
        for N in range(1, 7):
            for k in range(3):
                rec = verify_t1(N, k)
                assert rec.ok, f"T-1 N={N} k={k}: {rec.detail}"

    _gate("criterion-04 [DN, K1, K2, T-1]", 120.0, work)


def test_criterion_05_one_point_oracle_equivalence():
    def work():
        dn = do_norbury_table(3, 6)
        for N in range(1, 6):
            moms = exp_mean_moments(N, 6)
            assert moms[0] == N
            for m in range(1, 7):
                oracle = complex_wishart_moment((m,), "N", "N")
                assert moms[m] == oracle(N), f"N={N} m={m}"
                if N == 1:
                    assert moms[m] == math.factorial(m), f"collapse m={m}"
                ge = genus_extract(oracle, 1)
                for g, c in ge.items():
                    assert dn.value(g, m - 2 * g) == c, f"genus m={m} g={g}"
                assert lag_moment_from_table(dn, m) == oracle, f"table m={m}"

    _gate("criterion-05 [rep-N, 3-t]", 60.0, work)


def test_criterion_06_two_point_oracle_equivalence():
    def work():
        for N in (1, 2, 3):
            tp = two_point_series(N, 5)
            assert tp.coefficient(1, 1) == 1, f"u1u2 at N={N}"
            for m1 in range(6):
                for m2 in range(6 - m1):
                    if m1 == 0 and m2 == 0:
                        continue
                    got = tp.coefficient(m1, m2)
                    if min(m1, m2) == 0:
                        assert got == 0, f"boundary ({m1},{m2}) N={N}: {got}"
                        continue
                    want = connected_moments((m1, m2))(N)
                    want /= math.factorial(m1) * math.factorial(m2)
                    assert got == want, f"({m1},{m2}) N={N}: {got} != {want}"

    _gate("criterion-06 [W2]", 120.0, work)


def test_criterion_07_fractional_genus_branch():
    def work():
        table = glag_k1_table(8, 12)
        expected = {
            2: {0: 1, 1: 1},
            3: {0: 2, 1: 3, 2: 1},
            4: {0: 5, 1: 10, 2: 7, 3: 2},
            5: {0: 14, 1: 35, 2: 40, 3: 25, 4: 6},
        }
        for e, coeffs in expected.items():
            got = glag_series_coefficient(table, e)
            for q in range(6):
                assert got.coefficient(-q) == coeffs.get(q, 0), f"x^-{e} N^-{q}"
            assert got(1) == math.factorial(e), f"x^-{e} at N=1"
        for m in range(1, 6):
            assert glag_moment_from_table(table, m) == complex_wishart_moment(
                (m,), "N", "N+1"
            ), f"moment m={m}"
        recs = glag_w1_ode_check(table)
        bad = [r.id for r in recs if not r.ok]
        assert recs and not bad, f"W1: {bad[:3]}"

    _gate("criterion-07 [8-t, W1]", 60.0, work)


def test_criterion_08_gaussian_branch():
    def work():
        table = gauss_hz_table(6)
        assert [table.value(2, k) for k in range(2)] == [21, 105], "genus-2 row"
        assert genus_extract(gue_moment(8), 1)[2] == 21, "eps_2(8)"
        recs = gauss_gue_check(table, 12)
        bad = [r.id for r in recs if not r.ok]
        assert recs and not bad, f"recurrence-gue: {bad[:3]}"

    _gate("criterion-08 [recurrence]", 30.0, work)


def test_criterion_09_constraint_families():
    def work():
        table = vk_table(6)
        recs = consistency_identity_check(table, 6)
        assert all(r.ok for r in recs), "consistency"
        for g in range(1, 7):
            row = table.row(g)
            for r in range(2 * g + 2):
                s = sum(Fraction(k**r if k or r == 0 else 0) * a
                        for k, a in row.items())
                assert s == 0, f"asym-{r} at g={g}: {s}"
        dn = do_norbury_table(5, 20)
        for g in range(6):
            got = a_to_C(table.row(g), g, 20)
            want = [dn.value(g, n) for n in range(21)]
            assert got == want, f"a-to-C at g={g}"

    _gate("criterion-09 [asym, consistency, a-to-C]", 30.0, work)


def test_criterion_10_closed_form_checks():
    def work():
        ratios = {
            w30_planar_check(1, 1, 1),
            w30_planar_check(2, 1, 1),
            w30_planar_check(2, 2, 1),
        }
        assert len(ratios) == 1, f"W30 ratios differ: {sorted(ratios)}"
        recs = w11_check(7)
        bad = [r.id for r in recs if not r.ok]
        assert recs and not bad, f"W11: {bad}"

    _gate("criterion-10 [W30, W11]", 30.0, work)


def test_performance_gate_large_tables():
    def work():
        t0 = time.perf_counter()
        dn = do_norbury_table(200, 30)
        dt_dn = time.perf_counter() - t0
        assert dn.value(0, 2) == 2 and dn.value(200, 0) == 0
        assert dt_dn < 10.0, f"3-t table g<=200 took {dt_dn:.2f}s"
        t0 = time.perf_counter()
        gb = gauss_hz_table(200)
        dt_g = time.perf_counter() - t0
        assert gb.value(2, 1) == 105
        assert dt_g < 10.0, f"recurrence table g<=200 took {dt_g:.2f}s"

    _gate("performance [3-t, recurrence @ g<=200]", 25.0, work)
