"""Support growth of nested truncations for the unimodular examples.

For each |a| = 1 example, sweeps every leading block of one large
truncation on a shared angle grid and writes a CSV of
(example, dim, max_support, min_step) rows.  max_support should approach
the predicted radius from below; min_step stays nonnegative up to
eigensolver roundoff.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from fockrange.numrange import sweep
from fockrange.truncation import build_truncation
from fockrange.verify import EXAMPLES

UNIMODULAR = ("3.2a", "3.2b", "3.2c")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dim", type=int, default=64, help="largest truncation")
    parser.add_argument("--angles", type=int, default=144, help="shared sweep grid")
    parser.add_argument("--step", type=int, default=4, help="dimension stride")
    parser.add_argument("--out", default="out/convergence.csv")
    args = parser.parse_args()

    rows = ["example,dim,max_support,min_step"]
    for example_id in UNIMODULAR:
        case = EXAMPLES[example_id]
        op = build_truncation(case.psi, case.phi, args.dim)
        previous = None
        for dim in range(args.step, args.dim + 1, args.step):
            support = sweep(op.leading_block(dim).entries, args.angles).support
            min_step = float(np.min(support - previous)) if previous is not None else float("nan")
            rows.append(f"{example_id},{dim},{float(support.max())!r},{min_step!r}")
            print(f"{example_id}  N={dim:<3d} max h = {support.max():.12f}  min step = {min_step:.3e}")
            previous = support
    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"\nwrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
