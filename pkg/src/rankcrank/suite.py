"""The complete verification suite behind ``rankcrank run-all``."""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import check_binomial_identity, check_f0_sum
from .checks import Check, VerificationError, all_ok, compare_series
from .diffops import D_a_from_jet, verify_theorem41
from .genfun import crank_gf, rank_gf, verify_theorem11
from .lambert import (
    Specialization,
    random_specialization,
    verify_chan,
    verify_jackson,
    verify_lewis,
    verify_watson,
)
from .partitions import residue_class_counts, statistic_table
from .pdeforge import (
    DaF_recurrence,
    F_series,
    QuasimodularExpr,
    assemble_main_theorem,
    check_binomial_display_jet,
    check_f0_identity,
    fit_quasimodular,
    normalize_corollary,
    verify_chan_specialized,
    verify_classic_pdes,
    verify_L_derivatives,
)

SCHEMA_VERSION = "1.0"

# per-item truncation orders: quick profile first, full (acceptance) profile second
PROFILES = ("quick", "full")


@dataclass(frozen=True)
class SuiteItem:
    name: str
    fn: Callable[[dict], Check]
    params: dict = field(default_factory=dict)


def _qe(d: dict) -> QuasimodularExpr:
    return QuasimodularExpr.from_dict(d)


# Printed D_a tables for (j, m) = (0, 2) and (1, 2), keys (a, b, c, d) -> coefficient.
PRINTED_DA = {
    (0, 2): [
        {(0, 0, 0, 0): Fraction(3, 2)},
        {(0, 0, 0, 0): Fraction(15, 4)},
        {(0, 0, 0, 0): 10, (1, 0, 0, 0): -15},
        {(0, 0, 0, 0): Fraction(225, 8), (1, 0, 0, 0): Fraction(-225, 2)},
        {(0, 0, 0, 0): 82, (1, 0, 0, 0): -600, (2, 0, 0, 0): 450, (0, 1, 0, 0): -195},
    ],
    (1, 2): [
        {(0, 0, 0, 0): Fraction(-1, 4)},
        {(0, 0, 0, 0): Fraction(5, 8)},
        {(0, 0, 0, 0): Fraction(-5, 4), (1, 0, 0, 0): Fraction(-15, 2)},
        {(0, 0, 0, 0): Fraction(25, 16), (1, 0, 0, 0): Fraction(225, 4)},
        {
            (0, 0, 0, 0): Fraction(1, 4),
            (1, 0, 0, 0): -225,
            (2, 0, 0, 0): -675,
            (0, 1, 0, 0): Fraction(-255, 2),
        },
    ],
}

# Printed normalized coefficients f_1..f_m for m = 1..4.
PRINTED_F = {
    1: [{(0, 0, 0, 0): 2, (1, 0, 0, 0): 6}],
    2: [
        {(1, 0, 0, 0): 60, (0, 0, 0, 0): 10},
        {(2, 0, 0, 0): 300, (0, 1, 0, 0): 10, (1, 0, 0, 0): 350, (0, 0, 0, 0): 24},
    ],
    3: [
        {(1, 0, 0, 0): 210, (0, 0, 0, 0): 28},
        {(0, 1, 0, 0): 210, (2, 0, 0, 0): 8820, (0, 0, 0, 0): 252, (1, 0, 0, 0): 4410},
        {
            (3, 0, 0, 0): 41160, (0, 1, 0, 0): 2450, (0, 0, 1, 0): 14, (0, 0, 0, 0): 720,
            (1, 0, 0, 0): 22736, (1, 1, 0, 0): 2940, (2, 0, 0, 0): 102900,
        },
    ],
    4: [
        {(1, 0, 0, 0): 504, (0, 0, 0, 0): 60},
        {(0, 1, 0, 0): 1260, (1, 0, 0, 0): 24948, (0, 0, 0, 0): 1308, (2, 0, 0, 0): 68040},
        {
            (1, 1, 0, 0): 136080, (0, 0, 1, 0): 504, (0, 1, 0, 0): 45360, (2, 0, 0, 0): 2449440,
            (1, 0, 0, 0): 403704, (3, 0, 0, 0): 2449440, (0, 0, 0, 0): 12176,
        },
        {
            (0, 0, 0, 0): 40320, (1, 0, 0, 0): 2126232, (0, 1, 0, 0): 404082, (0, 0, 1, 0): 9828,
            (1, 1, 0, 0): 2653560, (2, 0, 0, 0): 21820428, (1, 0, 1, 0): 9072,
            (3, 0, 0, 0): 47764080, (0, 0, 0, 1): 18, (2, 1, 0, 0): 1224720,
            (0, 2, 0, 0): 11340, (4, 0, 0, 0): 11022480,
        },
    ],
}


# ---------------------------------------------------------------------------
# individual items; each takes {"order": N, ...} and returns a Check


def item_theorem11(p: dict) -> Check:
    N = p["order"]
    return all_ok("theorem11", [verify_theorem11(k, N) for k in range(1, 7)], N)


def item_rank_crank_pde(p: dict) -> Check:
    c = verify_classic_pdes(p["order"])
    sub = next(s for s in c.sub if s.name == "rank_crank_pde")
    return Check("rank_crank_pde", sub.ok, p["order"], detail=sub.detail)


def item_order4_pde(p: dict) -> Check:
    c = verify_classic_pdes(p["order"])
    return all_ok("order4_pde", [s for s in c.sub if s.name != "rank_crank_pde"], p["order"])


def item_theorem41(p: dict) -> Check:
    N = p["order"]
    checks = [verify_theorem41(k, ell, N) for k in (3, 5, 7, 9) for ell in range(1, k)]
    return all_ok("theorem41", checks, N)


def item_da_tables(p: dict) -> Check:
    N = p["order"]
    checks = []
    for (j, m), rows in PRINTED_DA.items():
        for a, printed in enumerate(rows):
            s = DaF_recurrence(j, m, a, N)
            params = {"j": j, "m": m, "a": a}
            checks.append(compare_series("DaF_series", s, _qe(printed).to_series(N), params))
            fitted = fit_quasimodular(s, 2 * (a // 2))
            checks.append(Check("DaF_fit", fitted == _qe(printed), N, params, "" if fitted == _qe(printed) else str(fitted)))
    return all_ok("da_tables", checks, N)


def item_jets_vs_recurrence(p: dict) -> Check:
    N = p["order"]
    checks = []
    for m in range(1, p.get("m_max", 4) + 1):
        for j in range(m):
            Fs = F_series(j, m, 2 * m + 1, N)
            for a in range(2 * m + 1):
                checks.append(
                    compare_series(
                        "jet_vs_recurrence",
                        D_a_from_jet(Fs, a),
                        DaF_recurrence(j, m, a, N),
                        {"j": j, "m": m, "a": a},
                    )
                )
    return all_ok("jets_vs_recurrence", checks, N)


def item_main_theorem(p: dict) -> Check:
    checks = []
    for m, N in p["orders"].items():
        m = int(m)
        try:
            spec = normalize_corollary(assemble_main_theorem(m, N))
        except VerificationError as exc:
            checks.append(exc.check)
            continue
        checks.append(Check("corollary", True, N, {"m": m}))
        for jj, printed in enumerate(PRINTED_F[m], 1):
            fj = spec.f(jj)
            checks.append(
                compare_series("printed_f", fj, _qe(printed).to_series(fj.order), {"m": m, "j": jj})
            )
    return all_ok("main_theorem", checks, max(p["orders"].values()))


def item_chan_specialized(p: dict) -> Check:
    checks = [verify_chan_specialized(int(m), N) for m, N in p["orders"].items()]
    return all_ok("chan_specialized", checks, max(p["orders"].values()))


def item_lambert(p: dict) -> Check:
    N, trials, seed = p["order"], p["trials"], p["seed"]
    checks = [
        verify_watson(Specialization(2, (3,)), N),
        verify_lewis(Specialization(2, (3,)), N),
        verify_jackson(Specialization(2, (3, 5)), N, x_alt=7),
    ]
    for t in range(trials):
        s = seed + t
        checks.append(verify_watson(random_specialization("watson", 1, s), N))
        checks.append(verify_lewis(random_specialization("lewis", 1, s), N))
        checks.append(verify_jackson(random_specialization("jackson", 2, s), N))
    for m in p["chan_m"]:
        checks.append(verify_chan(m, random_specialization("chan", m, seed + m), p["chan_order"]))
    return all_ok("lambert", checks, N)


def item_combinatorial(p: dict) -> Check:
    n_max = p["n_max"]
    checks = []
    for stat, gf in (("rank", rank_gf), ("crank", crank_gf)):
        series = gf(n_max)
        table = statistic_table(stat, n_max)
        from_series = {}
        for n in range(n_max + 1):
            for mm, c in series[n].terms().items():
                if c:
                    from_series[(mm, n)] = int(c)
        ok = from_series == {k: v for k, v in table.items() if v}
        checks.append(Check(f"{stat}_enumeration", ok, n_max))
    for n in (4, 9, 14):
        counts = residue_class_counts("rank", n, 5)
        checks.append(Check("dyson_rank_mod5", len(set(counts)) == 1, n, {"n": n}, str(counts)))
    return all_ok("combinatorial", checks, n_max)


def item_arithmetic(p: dict) -> Check:
    checks = [
        Check(
            "binomial_identity",
            all(check_binomial_identity(ell, m) for ell in range(1, 25) for m in range(ell // 2 + 1)),
            0,
        ),
        Check("alternating_power_sum", all(check_f0_sum(m) for m in range(1, 13)), 0),
        Check("leading_coefficient", all(check_f0_identity(m) for m in range(1, 9)), 0),
        Check("binomial_display_jet", all(check_binomial_display_jet(m) for m in range(1, 7)), 0),
    ]
    N = p["order"]
    for m in range(1, 6):
        checks.append(verify_L_derivatives(m, 10, N))
    return all_ok("arithmetic", checks, N)


def suite_items(profile: str = "quick", trials: int = 3, seed: int = 1) -> list[SuiteItem]:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    full = profile == "full"
    return [
        SuiteItem("01_theorem11", item_theorem11, {"order": 40 if full else 20}),
        SuiteItem("02_rank_crank_pde", item_rank_crank_pde, {"order": 30 if full else 15}),
        SuiteItem("03_order4_pde", item_order4_pde, {"order": 25 if full else 15}),
        SuiteItem("04_theorem41", item_theorem41, {"order": 30 if full else 15}),
        SuiteItem("05_da_tables", item_da_tables, {"order": 30}),
        SuiteItem("06_jets_vs_recurrence", item_jets_vs_recurrence, {"order": 20 if full else 10}),
        SuiteItem(
            "07_main_theorem",
            item_main_theorem,
            {"orders": {1: 25, 2: 25, 3: 15, 4: 15} if full else {1: 15, 2: 15, 3: 10, 4: 8}},
        ),
        SuiteItem(
            "08_chan_specialized",
            item_chan_specialized,
            {"orders": {1: 25, 2: 25, 3: 15} if full else {1: 12, 2: 12, 3: 8}},
        ),
        SuiteItem(
            "09_lambert",
            item_lambert,
            {
                "order": 30 if full else 15,
                "trials": trials,
                "seed": seed,
                "chan_m": [3, 4, 5],
                "chan_order": 15 if full else 10,
            },
        ),
        SuiteItem("10_combinatorial", item_combinatorial, {"n_max": 15}),
        SuiteItem("11_arithmetic", item_arithmetic, {"order": 12 if full else 8}),
    ]


def run_item(item: SuiteItem) -> dict:
    t0 = time.perf_counter()
    try:
        check = item.fn(item.params)
        ok, detail = check.ok, check.detail
    except Exception as exc:  # reported, not raised: the suite itemizes failures
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return {
        "name": item.name,
        "params": _jsonable(item.params),
        "order": _item_order(item.params),
        "status": "PASS" if ok else "FAIL",
        "detail": detail,
        "wall_time": round(time.perf_counter() - t0, 3),
    }


def _item_order(params: dict) -> int:
    if "orders" in params:
        return max(params["orders"].values())
    return params.get("order", params.get("n_max", 0))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("RANKCRANK_JOBS", "1")))
    except ValueError:
        return 1


def run_all(profile: str = "quick", jobs: int | None = None, trials: int = 3, seed: int = 1) -> dict:
    items = suite_items(profile, trials, seed)
    jobs = default_jobs() if jobs is None else jobs
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_item, items))
    else:
        results = [run_item(it) for it in items]
    results.sort(key=lambda r: r["name"])
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "run-all",
        "profile": profile,
        "ok": all(r["status"] == "PASS" for r in results),
        "items": results,
    }
