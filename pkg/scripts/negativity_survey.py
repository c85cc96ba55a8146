#!/usr/bin/env python3
"""Self-intersection survey over point-line incidence configurations.

Prints C^2 and C^2 / #curves for finite projective planes, generic line
arrangements, and collinear configurations, cross-checking the closed
forms against the brute-force incidence computation where cheap.
"""

import argparse
import sys

from linserlab.surfaces import (
    build_incidence,
    c_squared,
    c_squared_bruteforce,
    ratio_report,
)


def row(label: str, kind: str, params: dict, check: bool) -> None:
    cfg = build_incidence(kind, params)
    c2 = c_squared(cfg)
    note = ""
    if check:
        brute = c_squared_bruteforce(cfg)
        note = "  (brute ok)" if brute == c2 else f"  MISMATCH brute={brute}"
    print(f"{label:24s}  points={len(cfg.points):4d}  "
          f"lines={len(cfg.lines):4d}  C^2={c2:6d}  "
          f"ratio={ratio_report(cfg)!s:>8s}{note}")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-lines", type=int, default=8,
                    help="largest generic arrangement to survey")
    ap.add_argument("--max-collinear", type=int, default=12)
    args = ap.parse_args()

    for q in (2, 3, 5):
        row(f"projective plane q={q}", "projective_plane", {"q": q},
            check=q <= 3)
    for s in range(3, args.max_lines + 1):
        row(f"general lines s={s}", "general_lines", {"s": s}, check=True)
    for n in range(2, args.max_collinear + 1):
        row(f"collinear n={n}", "collinear", {"n": n}, check=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
