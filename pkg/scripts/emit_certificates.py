#!/usr/bin/env python3
"""Emit and re-verify emptiness certificates for the nine-cut family.

Writes one JSON document per n into --outdir and prints a summary row per
certificate.  Every document is re-read and verified from scratch before
the row is printed, so a nonzero exit means a real failure.
"""

import argparse
import json
import pathlib
import sys
import time

from linserlab.dumnicki import (
    certificate_to_json,
    paper_family,
    prove_empty,
    verify_certificate_json,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=10,
                    help="emit certificates for n = 1 .. N_MAX")
    ap.add_argument("--outdir", type=pathlib.Path,
                    default=pathlib.Path("certificates"))
    args = ap.parse_args()
    if args.n_max < 1:
        ap.error("--n-max must be >= 1")
    args.outdir.mkdir(parents=True, exist_ok=True)

    failures = 0
    for n in range(1, args.n_max + 1):
        t0 = time.monotonic()
        D, mults, cuts = paper_family(n)
        result = prove_empty(D, mults, cuts)
        doc = certificate_to_json(D, mults, result)
        path = args.outdir / f"family_n{n}.json"
        path.write_text(json.dumps(doc, indent=2))
        ok, detail = verify_certificate_json(json.loads(path.read_text()))
        dt = time.monotonic() - t0
        status = "ok" if ok else f"FAILED {detail}"
        print(f"n={n:2d}  degree={13 * n:3d}  points={len(D):4d}  "
              f"pieces={len(result.pieces)}  {dt:6.2f}s  {status}")
        if not ok:
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
