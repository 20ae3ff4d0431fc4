"""Residue-class counts of rank and crank, showing the equal-class property."""
from __future__ import annotations

import argparse

from rankcrank.partitions import residue_class_counts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=30)
    args = ap.parse_args()
    print("stat\tmodulus\tn\tcounts\tequal")
    for modulus, residue in ((5, 4), (7, 5), (11, 6)):
        for stat in ("rank", "crank"):
            if stat == "rank" and modulus == 11:
                continue
            for n in range(residue, args.n_max + 1, modulus):
                counts = residue_class_counts(stat, n, modulus)
                print(f"{stat}\t{modulus}\t{n}\t{','.join(map(str, counts))}\t{len(set(counts)) == 1}")


if __name__ == "__main__":
    main()
