"""Command-line front end: ``rankcrank expand|verify|emit|run-all``.

Exit status is 0 when everything checked passes, 1 on a mathematical
mismatch and 2 on usage or resource errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Callable

from .checks import Check, VerificationError
from .partitions import ResourceLimitError, statistic_table

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
DEFAULT_ORDER = 25
DEFAULT_TRIALS = 3
DEFAULT_SEED = 1
MAX_ORDER = 200


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    sub: str | None = None
    order: int = DEFAULT_ORDER
    m: int | None = None
    k: int | None = None
    ell: int | None = None
    which: str | None = None
    stat: str | None = None
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    fmt: str = "text"
    out: str | None = None
    profile: str = "quick"
    jobs: int | None = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if not 1 <= self.order <= MAX_ORDER:
            raise UsageError(f"order must be in 1..{MAX_ORDER}")
        if self.trials < 1:
            raise UsageError("trials must be positive")
        return self


def env_default_order() -> int:
    raw = os.environ.get("RANKCRANK_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_ORDER


# ---------------------------------------------------------------------------
# reporting


def _report(name: str, check: Check, wall: float, params: dict) -> dict:
    return {
        "name": name,
        "params": {k: v for k, v in params.items() if v is not None},
        "order": check.order,
        "status": "PASS" if check.ok else "FAIL",
        "detail": check.detail,
        "wall_time": round(wall, 3),
    }


def _print_report(rep: dict, stream=None):
    stream = stream or sys.stdout
    params = " ".join(f"{k}={v}" for k, v in rep["params"].items() if k != "order")
    line = f"{rep['status']} {rep['name']} {params} order={rep['order']} ({rep['wall_time']:.2f}s)"
    print(line.replace("  ", " "), file=stream)
    if rep["status"] != "PASS" and rep["detail"]:
        print(f"  first divergence: {rep['detail']}", file=stream)


def _timed(fn: Callable[[], Check]) -> tuple[Check, float]:
    t0 = time.perf_counter()
    c = fn()
    return c, time.perf_counter() - t0


# ---------------------------------------------------------------------------
# expand


def _series_lines(s) -> list[str]:
    return [f"{n}\t{c}" for n, c in enumerate(s.coeffs)]


def cmd_expand(cfg: RunConfig) -> int:
    from . import genfun

    N = cfg.order
    if cfg.sub == "table":
        if cfg.stat not in ("rank", "crank"):
            raise UsageError("--stat must be rank or crank")
        table = statistic_table(cfg.stat, N)
        print("m\tn\tcount")
        for (mm, n), c in sorted(table.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            print(f"{mm}\t{n}\t{c}")
        return EXIT_OK
    if cfg.sub == "rank":
        s = genfun.rank_gf(N)
    elif cfg.sub == "crank":
        s = genfun.crank_gf(N)
    elif cfg.sub == "rankk":
        s = genfun.rank_k_lambert(_need(cfg.k, "--k"), N)
    elif cfg.sub == "sigma":
        k = _need(cfg.k, "--k")
        if k < 1 or k % 2 == 0:
            raise UsageError("--k must be odd and positive")
        s = genfun.appell_sigma(k, N).series
    elif cfg.sub == "g5":
        s = genfun.g5(N)
    else:
        raise UsageError(f"unknown expansion {cfg.sub!r}")
    print("n\tcoefficient")
    print("\n".join(_series_lines(s)))
    return EXIT_OK


def _need(v, flag):
    if v is None:
        raise UsageError(f"{flag} is required")
    return v


# ---------------------------------------------------------------------------
# verify


def _verify_check(cfg: RunConfig) -> tuple[str, Callable[[], Check], dict]:
    from . import diffops, genfun, lambert, pdeforge

    N = cfg.order
    sub = cfg.sub
    if sub == "thm11":
        k = _need(cfg.k, "--k")
        if k < 1:
            raise UsageError("--k must be positive")
        return "theorem11", lambda: genfun.verify_theorem11(k, N), {"k": k}
    if sub == "thm41":
        k = _need(cfg.k, "--k")
        if k < 1 or k % 2 == 0:
            raise UsageError("--k must be odd and positive")
        ells = [cfg.ell] if cfg.ell is not None else list(range(1, k))
        if any(not 1 <= e <= k - 1 for e in ells):
            raise UsageError(f"--l must be in 1..{k - 1}")

        def run41():
            from .checks import all_ok

            return all_ok("theorem41", [diffops.verify_theorem41(k, e, N) for e in ells], N, {"k": k})

        return "theorem41", run41, {"k": k, "l": cfg.ell}
    if sub == "pde":
        m = _need(cfg.m, "--m")
        if not 1 <= m <= 4:
            raise UsageError("--m must be in 1..4")

        def run_pde():
            try:
                pdeforge.normalize_corollary(pdeforge.assemble_main_theorem(m, N), fit=False)
            except VerificationError as exc:
                return exc.check
            return Check("corollary", True, N, {"m": m})

        return "pde", run_pde, {"m": m}
    if sub == "chan":
        m = _need(cfg.m, "--m")
        if m < 1:
            raise UsageError("--m must be positive")
        return "chan_specialized", lambda: pdeforge.verify_chan_specialized(m, N), {"m": m}
    if sub == "classic":
        return "classic_pdes", lambda: pdeforge.verify_classic_pdes(N), {}
    if sub == "lderiv":
        m = _need(cfg.m, "--m")
        if m < 1:
            raise UsageError("--m must be positive")
        a_max = 2 * m
        return "L_derivatives", lambda: pdeforge.verify_L_derivatives(m, a_max, N), {"m": m}
    if sub == "lambert":
        which = cfg.which
        if which not in ("watson", "jackson", "chan", "lewis"):
            raise UsageError("--which must be watson, jackson, chan or lewis")
        m = cfg.m
        if which == "chan" and (m is None or m < 1):
            raise UsageError("--m (positive) is required for chan")

        def run_lambert():
            from .checks import all_ok

            checks = []
            for t in range(cfg.trials):
                seed = cfg.seed + t
                if which == "watson":
                    checks.append(lambert.verify_watson(lambert.random_specialization("watson", 1, seed), N))
                elif which == "lewis":
                    checks.append(lambert.verify_lewis(lambert.random_specialization("lewis", 1, seed), N))
                elif which == "jackson":
                    checks.append(lambert.verify_jackson(lambert.random_specialization("jackson", 2, seed), N))
                else:
                    checks.append(lambert.verify_chan(m, lambert.random_specialization("chan", m, seed), N))
            return all_ok(which, checks, N)

        return which, run_lambert, {"m": m, "trials": cfg.trials, "seed": cfg.seed}
    raise UsageError(f"unknown verification {sub!r}")


def cmd_verify(cfg: RunConfig) -> int:
    name, fn, params = _verify_check(cfg)
    check, wall = _timed(fn)
    rep = _report(name, check, wall, params)
    if cfg.fmt == "json":
        print(json.dumps({"schema_version": _schema_version(), "command": "verify", "ok": check.ok, "items": [rep]}, indent=2))
    else:
        _print_report(rep)
    return EXIT_OK if check.ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# emit


def cmd_emit(cfg: RunConfig) -> int:
    from . import pdeforge

    if cfg.sub != "pde":
        raise UsageError("only `emit pde` is supported")
    m = _need(cfg.m, "--m")
    if not 1 <= m <= 6:
        raise UsageError("--m must be in 1..6")
    fmt = cfg.fmt if cfg.fmt in ("json", "latex") else "json"
    try:
        spec = pdeforge.normalize_corollary(pdeforge.assemble_main_theorem(m, cfg.order))
    except VerificationError as exc:
        print(f"FAIL pde m={m}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    text = pdeforge.emit_pde(spec, fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# run-all


def _schema_version() -> str:
    from .suite import SCHEMA_VERSION

    return SCHEMA_VERSION


def cmd_run_all(cfg: RunConfig) -> int:
    from .suite import run_all

    report = run_all(cfg.profile, jobs=cfg.jobs, trials=cfg.trials, seed=cfg.seed)
    for rep in report["items"]:
        _print_report(rep)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    print("ALL PASS" if report["ok"] else "FAILURES: " + ", ".join(r["name"] for r in report["items"] if r["status"] != "PASS"))
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    order_default = env_default_order()
    p = argparse.ArgumentParser(prog="rankcrank", description="Exact q-series expansions and identity checks.")
    cmds = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--order", "-N", type=int, default=order_default, help="truncation order in q")

    ex = cmds.add_parser("expand", help="print a q-expansion or a statistic table (TSV)")
    ex.add_argument("what", choices=["table", "rank", "crank", "rankk", "sigma", "g5"])
    ex.add_argument("--stat", choices=["rank", "crank"])
    ex.add_argument("--k", type=int)
    common(ex)

    ve = cmds.add_parser("verify", help="check an identity exactly through q^N")
    ve.add_argument("what", choices=["thm11", "thm41", "pde", "chan", "classic", "lderiv", "lambert"])
    ve.add_argument("--k", type=int)
    ve.add_argument("--l", dest="ell", type=int)
    ve.add_argument("--m", type=int)
    ve.add_argument("--which", choices=["watson", "jackson", "chan", "lewis"])
    ve.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    ve.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ve.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")
    common(ve)

    em = cmds.add_parser("emit", help="serialize a verified normalized PDE")
    em.add_argument("what", choices=["pde"])
    em.add_argument("--m", type=int, required=True)
    em.add_argument("--format", dest="fmt", choices=["json", "latex"], default="json")
    em.add_argument("--out")
    common(em)

    ra = cmds.add_parser("run-all", help="run the full verification suite")
    ra.add_argument("--profile", choices=["quick", "full"], default="quick")
    ra.add_argument("--jobs", type=int, default=None)
    ra.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    ra.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ra.add_argument("--out", help="write the JSON summary here")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        sub=getattr(ns, "what", None),
        order=getattr(ns, "order", DEFAULT_ORDER),
        m=getattr(ns, "m", None),
        k=getattr(ns, "k", None),
        ell=getattr(ns, "ell", None),
        which=getattr(ns, "which", None),
        stat=getattr(ns, "stat", None),
        trials=getattr(ns, "trials", DEFAULT_TRIALS),
        seed=getattr(ns, "seed", DEFAULT_SEED),
        fmt=getattr(ns, "fmt", "text"),
        out=getattr(ns, "out", None),
        profile=getattr(ns, "profile", "quick"),
        jobs=getattr(ns, "jobs", None),
    ).validate()


DISPATCH = {"expand": cmd_expand, "verify": cmd_verify, "emit": cmd_emit, "run-all": cmd_run_all}


def dispatch(cfg: RunConfig) -> int:
    try:
        return DISPATCH[cfg.command](cfg)
    except (UsageError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return dispatch(cfg)


if __name__ == "__main__":
    sys.exit(main())
