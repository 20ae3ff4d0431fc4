"""Run the verification suite and write the JSON summary."""
from __future__ import annotations

import argparse
import json
import sys

from rankcrank.suite import run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--profile", choices=["quick", "full"], default="full")
    ap.add_argument("--jobs", type=int, default=None)
    ap.add_argument("--out", default="acceptance_report.json")
    args = ap.parse_args()
    report = run_all(args.profile, jobs=args.jobs)
    for item in report["items"]:
        print(f"{item['status']}  {item['name']:<24} {item['wall_time']:7.2f}s  {item['detail']}")
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    sys.exit(0 if report["ok"] else 1)


if __name__ == "__main__":
    main()
