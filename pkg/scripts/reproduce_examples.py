"""Run every registered example end to end and save reports and plots.

Writes <outdir>/<id>.json (full run report) and <outdir>/<id>.svg
(swept hull with predicted regions) for each example id, then prints a
one-line verdict summary per claim.  Nonzero exit if any claim that is
expected to verify fails to.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from fockrange.render import render_report
from fockrange.verify import EXAMPLES, run_example

# the printed compression ellipse is recorded for comparison and is not
# expected to contain the swept hull
EXPECTED_UNVERIFIED = {"P2.1-lit"}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dim", type=int, default=64, help="truncation size")
    parser.add_argument("--angles", type=int, default=720, help="sweep angles")
    parser.add_argument("--outdir", default="out/examples", help="report directory")
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    failures = 0
    for example_id in sorted(EXAMPLES):
        report = run_example(example_id, N=args.dim, K=args.angles)
        (outdir / f"{example_id}.json").write_text(report.to_json(), encoding="utf-8")
        (outdir / f"{example_id}.svg").write_text(render_report(report), encoding="utf-8")
        for verdict in report.verdicts:
            ok = verdict["status"] == "Verified" or verdict["claim"] in EXPECTED_UNVERIFIED
            failures += 0 if ok else 1
            print(
                f"{example_id:>5}  {verdict['claim']:<10} {verdict['status']:<10} "
                f"margin={verdict['margin']:+.3e}  {verdict['note']}"
            )
    print(f"\nreports in {outdir}/")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
