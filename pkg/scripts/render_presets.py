"""Render every preset to SVG and JSON, and print a one-line summary for each.

    python scripts/render_presets.py [--out figures] [--rays]
"""

import argparse
import json
from pathlib import Path

from genconchoid.cli import PRESETS, run


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--rays", action="store_true", help="draw focal rays")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for name in PRESETS:
        svg, js = args.out / f"{name}.svg", args.out / f"{name}.json"
        argv = ["presets", name, "--svg", str(svg), "--json", str(js)]
        if args.rays:
            argv.append("--show-rays")
        code = run(argv)
        if code:
            print(f"{name:12s} exit {code}")
            continue
        result = json.loads(js.read_text())
        valid = sum(s["valid"] for s in result["samples"])
        print(f"{name:12s} f(l) = {result['config']['offset']:20s} valid {valid:3d}  dropped {result['dropped']}")


if __name__ == "__main__":
    main()
