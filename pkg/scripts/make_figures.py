"""Write CSV and SVG for figures 1-5 into a directory, verifying each.

    python3 scripts/make_figures.py --out figures
"""

import argparse
import sys
from pathlib import Path

from prime_interference.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description="regenerate all figures")
    ap.add_argument("--out", default="figures")
    ap.add_argument("--tmax", default="100")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    status = 0
    for n in range(1, 6):
        code = 0
        for fmt in ("csv", "svg"):
            path = out / f"figure{n}.{fmt}"
            code |= cli_main(["figure", str(n), "--tmax", args.tmax, "--format", fmt, "--out", str(path)])
        status |= code
        print(f"figure {n}: {'verified' if code == 0 else 'VERIFICATION FAILED'} -> {out}/figure{n}.{{csv,svg}}")
    sys.exit(status)


if __name__ == "__main__":
    main()
