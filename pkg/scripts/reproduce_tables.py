"""Print the three calculation tables of the worked line example.

    python scripts/reproduce_tables.py [--precision 3] [--out DIR]
"""

import argparse
from pathlib import Path

from genconchoid import GpcConfig, LineSegmentCurve, Point2, TableSpec, sample_gpc, write_csv
from genconchoid.output import BASE_COLUMNS, RAY_COLUMNS, BRANCH_COLUMNS

CONFIG = GpcConfig(
    focus=Point2(0, 0),
    curve=LineSegmentCurve(Point2(-3, 0), Point2(0, 1.5)),
    offset="l + sin(l)",
    m=18,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--precision", type=int, default=3)
    ap.add_argument("--out", type=Path, help="also write table1.csv .. table3.csv here")
    args = ap.parse_args()

    result = sample_gpc(CONFIG)
    for i, cols in enumerate((BASE_COLUMNS, RAY_COLUMNS, BRANCH_COLUMNS), start=1):
        text = write_csv(result, TableSpec(args.precision, cols))
        print(f"# table {i}")
        print(text)
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"table{i}.csv").write_text(text)


if __name__ == "__main__":
    main()
