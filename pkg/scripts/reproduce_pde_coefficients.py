"""Assemble, verify and print the monic order-2m PDE coefficients f_1..f_m."""
from __future__ import annotations

import argparse
import time

from rankcrank.pdeforge import assemble_main_theorem, emit_pde, normalize_corollary


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=4)
    ap.add_argument("--order", type=int, default=15, help="q-order through which each PDE is checked")
    ap.add_argument("--latex", action="store_true")
    args = ap.parse_args()
    for m in range(1, args.m_max + 1):
        t0 = time.perf_counter()
        spec = normalize_corollary(assemble_main_theorem(m, args.order))
        dt = time.perf_counter() - t0
        print(f"m = {m}  (level {2 * m + 1}, f0 = {spec.f0}, checked through q^{args.order}, {dt:.2f}s)")
        if args.latex:
            print(emit_pde(spec, "latex"))
            continue
        for j in range(1, m + 1):
            print(f"  f_{j} = {spec.forms[m - j]}")


if __name__ == "__main__":
    main()
