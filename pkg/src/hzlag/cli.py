"""Command-line front end: table generation, oracle queries, verification
suites, exact serialization, and a deterministic cache.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage
error, 3 internal error.  All output is byte-deterministic for identical
arguments; wall time is never serialized.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .exact import rat_str, rat_str_explicit
from .recursions import (
    GaussBTable,
    HalfGenusTable,
    LagCTable,
    VTable,
    consistency_form,
    do_norbury_table,
    gauss_gue_check,
    gauss_hz_table,
    glag_k1_table,
    glag_moment_from_table,
    glag_w1_ode_check,
    lag_moment_from_table,
    laguerre_ode_check,
    vk_table,
)
from .reports import RunReport, record
from .residues import (
    IDENTITY_TAGS,
    exp_mean_moments,
    fab,
    two_point_series,
    verify_identity,
    verify_ode,
    verify_t1,
)
from .spectral import a_to_C, consistency_identity_check, s_series, vk_series, w11_check, w30_planar_check
from .wick import complex_wishart_moment, connected_moments, genus_extract, gue_moment

USAGE_ERROR = 2
INTERNAL_ERROR = 3

# hard generation bounds (keep runaway requests from consuming the machine)
GEN_LIMITS = {"gmax": 1000, "nmax": 2000, "rmax2": 400, "k": 64, "order": 4000}


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------


def cache_dir() -> Path:
    env = os.environ.get("HZLAG_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "hzlag"


def cache_path(kind: str, args: dict) -> Path:
    key = json.dumps({"tool": __version__, "kind": kind, "args": args}, sort_keys=True)
    digest = hashlib.sha256(key.encode()).hexdigest()[:32]
    return cache_dir() / f"{kind}-{digest}.json"


def cached_bytes(kind: str, args: dict, compute, use_cache: bool) -> bytes:
    """Return compute() (bytes), reading/writing the cache when enabled."""
    if not use_cache:
        return compute()
    path = cache_path(kind, args)
    if path.exists():
        return path.read_bytes()
    data = compute()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    return data


# ---------------------------------------------------------------------------
# table serialization
# ---------------------------------------------------------------------------

ENSEMBLE_KEYS = {
    "laguerre": ("g", "n"),
    "gauss": ("g", "k"),
    "vk": ("g", "k"),
    "glag-k1": ("r2", "n"),
}


def build_table(ensemble: str, bounds: dict):
    if ensemble == "laguerre":
        return do_norbury_table(bounds["gmax"], bounds["nmax"])
    if ensemble == "gauss":
        return gauss_hz_table(bounds["gmax"])
    if ensemble == "vk":
        return vk_table(bounds["gmax"])
    if ensemble == "glag-k1":
        return glag_k1_table(bounds["rmax2"], bounds["nmax"])
    raise UsageError(f"unknown ensemble {ensemble!r}")


def table_payload(ensemble: str, bounds: dict) -> dict:
    table = build_table(ensemble, bounds)
    k1, k2 = ENSEMBLE_KEYS[ensemble]
    entries = [
        {k1: a, k2: b, "value": rat_str(v)}
        for (a, b), v in sorted(table.entries.items())
    ]
    return {
        "schema": "hzlag-table/1",
        "ensemble": ensemble,
        "bounds": bounds,
        "entries": entries,
    }


def payload_to_json(payload: dict) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode()


def payload_to_csv(payload: dict) -> bytes:
    k1, k2 = ENSEMBLE_KEYS[payload["ensemble"]]
    out = io.StringIO()
    out.write(f"{k1},{k2},value\n")
    for e in payload["entries"]:
        out.write(f"{e[k1]},{e[k2]},{rat_str_explicit(Fraction(e['value']))}\n")
    return out.getvalue().encode()


def payload_to_table(payload: dict):
    """Rebuild a table object from a parsed JSON payload (no revalidation:
    the verify suites re-check constraints on whatever the payload holds)."""
    ensemble = payload["ensemble"]
    k1, k2 = ENSEMBLE_KEYS[ensemble]
    entries = {
        (int(e[k1]), int(e[k2])): Fraction(e["value"]) for e in payload["entries"]
    }
    b = payload["bounds"]
    if ensemble == "laguerre":
        return LagCTable(b["gmax"], b["nmax"], entries)
    if ensemble == "gauss":
        return GaussBTable(b["gmax"], entries)
    if ensemble == "vk":
        return VTable(b["gmax"], entries)
    return HalfGenusTable(b["rmax2"], b["nmax"], entries)


def load_table(ensemble: str, bounds: dict, use_cache: bool):
    raw = cached_bytes(
        "gen", {"ensemble": ensemble, **bounds},
        lambda: payload_to_json(table_payload(ensemble, bounds)),
        use_cache,
    )
    return payload_to_table(json.loads(raw))


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------


def suite_identities(args) -> RunReport:
    rep = RunReport("identities", tool_version=__version__)
    for tag in IDENTITY_TAGS:
        rep.extend(verify_identity(tag, args.amax, args.bmax, args.nmax))
    return rep


def suite_odes(args) -> RunReport:
    rep = RunReport("odes", tool_version=__version__)
    for N in range(1, min(args.nmax, 10) + 1):
        rep.checks.append(verify_ode("DN", N))
    for N in range(1, min(args.nmax, 8) + 1):
        rep.checks.append(verify_ode("K1", N))
    for N in range(1, min(args.nmax, 6) + 1):
        rep.checks.append(verify_ode("K2", N))
    for N in range(1, min(args.nmax, 6) + 1):
        for k in range(3):
            rep.checks.append(verify_t1(N, k))
    return rep


def suite_crosscheck(args) -> RunReport:
    rep = RunReport("crosscheck", tool_version=__version__)
    mmax = min(args.mmax, 6)
    # one-point: residue route vs Wick oracle
    for N in range(1, 6):
        mom = exp_mean_moments(N, mmax)
        for m in range(mmax + 1):
            want = complex_wishart_moment((m,))(N) if m else Fraction(N)
            rep.checks.append(
                record(f"rep-N-wick[N={N},m={m}]", "rep-N", mom[m] == want,
                       f"residue {mom[m]} wick {want}")
            )
    # genus grading of the symbolic oracle vs the recursion table
    dn = do_norbury_table(3, mmax)
    for m in range(1, mmax + 1):
        ge = genus_extract(complex_wishart_moment((m,)), 1)
        ok = all(dn.value(g, m - 2 * g) == c for g, c in ge.items())
        rep.checks.append(record(f"3-t-wick[m={m}]", "3-t", ok, f"grading {ge}"))
        total = sum(dn.value(g, m - 2 * g) for g in range(m // 2 + 1))
        rep.checks.append(
            record(f"gamma-collapse[m={m}]", "rep-N",
                   total == math.factorial(m), f"sum {total}")
        )
    # two-point: residue route vs connected Wick oracle
    for N in range(1, 4):
        tp = two_point_series(N, 5)
        ok, detail = True, ""
        for m1 in range(6):
            for m2 in range(6 - m1):
                if m1 == m2 == 0:
                    continue
                got = tp.coefficient(m1, m2)
                if min(m1, m2) == 0:
                    want = Fraction(0)  # connected part against tr(1) vanishes
                else:
                    want = connected_moments((m1, m2))(N) / (
                        math.factorial(m1) * math.factorial(m2))
                if got != want:
                    ok, detail = False, f"(m1={m1},m2={m2}): {got} vs {want}"
                    break
        rep.checks.append(record(f"W2-wick[N={N}]", "W2", ok, detail))
    # Gaussian branch vs pairing oracle
    rep.extend(gauss_gue_check(load_table("gauss", {"gmax": 3}, args.cache), 12))
    # rectangular k = 1 branch vs Wick oracle
    ht = load_table("glag-k1", {"rmax2": 5, "nmax": 8}, args.cache)
    for m in range(1, 6):
        got = glag_moment_from_table(ht, m)
        want = complex_wishart_moment((m,), "N", "N+1")
        rep.checks.append(
            record(f"8-t-wick[m={m}]", "8-t", got == want, f"table {got} wick {want}")
        )
    # closed forms
    rep.extend(w11_check(7))
    ratios = {t: w30_planar_check(*t) for t in ((1, 1, 1), (2, 1, 1), (2, 2, 1))}
    rep.checks.append(
        record("W30[constant-ratio]", "W30", len(set(ratios.values())) == 1,
               f"ratios {ratios}")
    )
    return rep


def suite_constraints(args) -> RunReport:
    rep = RunReport("constraints", tool_version=__version__)
    gmax = min(args.gmax, 6)
    vt = load_table("vk", {"gmax": gmax}, args.cache)
    rep.extend(consistency_identity_check(vt, gmax))
    for g in range(1, gmax + 1):
        row = vt.row(g)
        for r in range(2 * g + 2):
            s = sum(Fraction(k) ** r * v for k, v in row.items())
            rep.checks.append(
                record(f"asym-r[g={g},r={r}]", "asym-r", s == 0, f"moment {s}")
            )
    # a-row expansion vs three-term recursion table
    dn = load_table("laguerre", {"gmax": 5, "nmax": 20}, args.cache)
    for g in range(min(gmax, 5) + 1):
        cs = a_to_C(vt.row(g), g, 20)
        ok = all(cs[n] == dn.value(g, n) for n in range(21))
        rep.checks.append(
            record(f"a-to-C[g={g}]", "rec-v2", ok, f"row expansion {cs[:6]}...")
        )
    # operator-equation verifiers
    rep.extend(laguerre_ode_check(load_table("laguerre", {"gmax": 3, "nmax": 10}, args.cache)))
    rep.extend(glag_w1_ode_check(load_table("glag-k1", {"rmax2": 4, "nmax": 8}, args.cache)))
    # integrality expectations
    for name, table in (
        ("laguerre", dn),
        ("gauss", load_table("gauss", {"gmax": min(args.gmax, 8)}, args.cache)),
    ):
        bad = table.integrality_violations()
        rep.checks.append(
            record(f"integrality[{name}]", "C1g", not bad, f"violations {bad[:5]}")
        )
    return rep


SUITES = {
    "identities": suite_identities,
    "odes": suite_odes,
    "crosscheck": suite_crosscheck,
    "constraints": suite_constraints,
}


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _write_out(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode())


def cmd_gen(args) -> int:
    ensemble = args.ensemble
    bounds: dict = {}
    if ensemble in ("laguerre",):
        bounds = {"gmax": args.gmax, "nmax": args.nmax}
    elif ensemble in ("gauss", "vk"):
        bounds = {"gmax": args.gmax}
    else:
        bounds = {"rmax2": args.rmax2, "nmax": args.nmax}
    for key, v in bounds.items():
        if v is None:
            raise UsageError(f"gen {ensemble} requires --{key}")
        if v > GEN_LIMITS[key if key != "rmax2" else "rmax2"]:
            raise UsageError(f"--{key} {v} exceeds limit {GEN_LIMITS[key]}")
        if v < 0:
            raise UsageError(f"--{key} must be >= 0")
    if ensemble == "gauss" and bounds["gmax"] < 1:
        raise UsageError("gen gauss requires --gmax >= 1")
    data = cached_bytes(
        "gen", {"ensemble": ensemble, **bounds},
        lambda: payload_to_json(table_payload(ensemble, bounds)),
        not args.no_cache,
    )
    if args.format == "csv":
        data = payload_to_csv(json.loads(data))
    _write_out(data, args.out)
    return 0


def cmd_oracle(args) -> int:
    try:
        pattern = tuple(int(p) for p in args.mu.split(","))
    except ValueError as e:
        raise UsageError(f"bad --mu {args.mu!r}") from e
    fn = connected_moments if args.connected else complex_wishart_moment
    print(fn(pattern, args.rows, args.cols))
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [SUITES[n](args) for n in names]
    payload = {
        "schema": "hzlag-report/1",
        "tool_version": __version__,
        "suites": [r.sorted().to_dict() for r in reports],
    }
    if args.out:
        Path(args.out).write_bytes(
            (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode()
        )
    ok = True
    for r in reports:
        fails = r.failures()
        print(f"suite {r.suite}: {len(r.checks)} checks, {len(fails)} failures")
        for c in sorted(fails, key=lambda c: c.id):
            print(f"  FAIL {c.id} anchor={c.anchor} {c.detail}")
            ok = False
    return 0 if ok else 1


def cmd_series(args) -> int:
    if args.which == "vk":
        ser = vk_series(args.k, args.order).series
    else:
        if args.beta is None:
            raise UsageError("series skb requires --beta")
        ser = s_series(args.k, args.beta, args.order).series
    # exponents of x, descending (series exponent m means x^-m)
    items = [
        {"exponent": -m, "value": rat_str(ser.coefficient(m))}
        for m in range(ser.offset, ser.order + 1)
    ]
    _write_out((json.dumps(items, indent=2) + "\n").encode(), args.out)
    return 0


def cmd_eval_fab(args) -> int:
    value = fab(args.a, args.b).value
    if args.at is None:
        print(value)
        return 0
    point = Fraction(args.at)
    try:
        print(rat_str(value(point)))
    except ZeroDivisionError as e:
        raise UsageError(f"f_{{{args.a},{args.b}}} has a pole at {args.at}") from e
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hzlag", description=__doc__)
    p.add_argument("--version", action="version", version=f"hzlag {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an exact table")
    g.add_argument("ensemble", choices=list(ENSEMBLE_KEYS))
    g.add_argument("--gmax", type=int)
    g.add_argument("--nmax", type=int)
    g.add_argument("--rmax2", type=int, help="doubled half-genus bound 2r")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--out")
    g.add_argument("--no-cache", action="store_true")
    g.set_defaults(fn=cmd_gen)

    o = sub.add_parser("oracle", help="brute-force Wick moment")
    o.add_argument("--mu", required=True, help="comma-separated trace exponents")
    o.add_argument("--rows", default="N")
    o.add_argument("--cols", default="N")
    o.add_argument("--connected", action="store_true")
    o.set_defaults(fn=cmd_oracle)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    v.add_argument("--amax", type=int, default=10)
    v.add_argument("--bmax", type=int, default=10)
    v.add_argument("--nmax", type=int, default=10)
    v.add_argument("--gmax", type=int, default=6)
    v.add_argument("--mmax", type=int, default=6)
    v.add_argument("--no-cache", dest="cache", action="store_false")
    v.add_argument("--out")
    v.set_defaults(fn=cmd_verify)

    s = sub.add_parser("series", help="export a basis series as JSON")
    s.add_argument("which", choices=("vk", "skb"))
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--beta", type=int, choices=(0, 1))
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_series)

    e = sub.add_parser("eval-fab", help="print or evaluate f_{A,B}(u)")
    e.add_argument("--a", type=int, required=True)
    e.add_argument("--b", type=int, required=True)
    e.add_argument("--at", help="rational point p/q to evaluate at")
    e.set_defaults(fn=cmd_eval_fab)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except BrokenPipeError:
        return 0
    except Exception as e:  # pragma: no cover - defensive
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
