"""Calibration run behind the analysis thresholds.

For each zero budget this prints
  * the largest prominence (fraction of max |S| or |T|) of any peak that is
    attributed to a prime power with the wrong sign, or to a class whose
    expected value is zero; DEFAULT_PROMINENCE must sit above it;
  * the smallest prominence of the survivor and ramified peaks in the combined
    mod-q reconstruction; SURVIVOR_PROMINENCE must sit below it;
  * the suppression ratio of the combined reconstruction;
  * how many prime powers the zeta reconstruction recovers at several
    prominence levels.

    python3 scripts/calibrate_thresholds.py [--height 250] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import math

import numpy as np

from prime_interference.analysis import (
    DEFAULT_PROMINENCE,
    SPIKE_SIGN,
    SURVIVOR_PROMINENCE,
    dedekind_survivor_check,
    detect_peaks,
    prime_powers,
)
from prime_interference.characters import parse_character_id
from prime_interference.lfunction import find_zeros
from prime_interference.reconstruction import Grid, dedekind_reconstruction, reconstruct

IDS = ("1.1", "3.2", "4.3", "5.4", "5.2", "5.3")
FLOOR = 1e-4  # smallest prominence considered at all


def budgets(height):
    out = {"first 50": dict(count=50), "first 100": dict(count=100), "gamma <= 100": dict(height=100.0)}
    if height >= 150:
        out["gamma <= 150"] = dict(height=150.0)
    return out


def worst_misattribution(R, chi):
    worst, where = 0.0, None
    for comp in ("S",) if chi.is_real else ("S", "T"):
        for p in detect_peaks(R, FLOOR, component=comp, modulus=chi.modulus):
            if p.nearest_pp is None:
                continue
            v = chi(p.nearest_pp)
            want = v.real if comp == "S" else v.imag
            sign = 0 if abs(want) < 1e-12 else SPIKE_SIGN * int(math.copysign(1, want))
            if (sign == 0 or np.sign(p.amplitude) != sign) and p.prominence > worst:
                worst, where = p.prominence, f"{comp}@{p.nearest_pp}"
    return worst, where


def survivor_floor(R, q):
    peaks = detect_peaks(R, FLOOR, modulus=q)
    best = {}
    for p in peaks:
        if p.nearest_pp is not None:
            best[p.nearest_pp] = max(best.get(p.nearest_pp, 0.0), p.prominence)
    targets = [n for n in prime_powers(2, 50) if math.gcd(n, q) > 1 or (n % q == 1 and parse_prime(n))]
    return min(best.get(n, 0.0) for n in targets), targets


def parse_prime(n):
    return n > 1 and all(n % d for d in range(2, math.isqrt(n) + 1))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--height", type=float, default=250.0)
    ap.add_argument("--json")
    args = ap.parse_args()

    zeros = {c: find_zeros(parse_character_id(c), args.height) for c in IDS}
    grid = Grid()
    result = {}
    for name, sel in budgets(args.height).items():
        lists = {c: z.truncate(**sel) for c, z in zeros.items()}
        row = {"zeros": {c: len(z) for c, z in lists.items()}}
        worst = {}
        for cid in IDS[1:]:
            chi = parse_character_id(cid)
            conj = None if chi.is_real else lists[chi.conjugate().id]
            worst[cid] = worst_misattribution(reconstruct(lists[cid], grid, conjugate=conj), chi)
        row["misattributed"] = {c: [round(w, 4), at] for c, (w, at) in worst.items()}
        for q in (3, 5):
            R = dedekind_reconstruction(q, lists, grid)
            floor, _ = survivor_floor(R, q)
            rep = dedekind_survivor_check(R, q)
            row[f"dedekind_{q}"] = {"survivor_min_prominence": round(floor, 4), "suppression": round(rep.suppression, 4)}
        Z = reconstruct(lists["1.1"], grid)
        pp = prime_powers(2, 50)
        cover = {}
        for level in (0.05, 0.1, 0.15, 0.2, 0.3, 0.4):
            got = {p.nearest_pp for p in detect_peaks(Z, level) if p.nearest_pp}
            cover[str(level)] = f"{len(got)}/{len(pp)}"
        row["zeta_coverage"] = cover
        result[name] = row

        print(f"== {name}: zeros {row['zeros']}")
        for c, (w, at) in worst.items():
            print(f"   {c}: worst misattributed prominence {w:.3f} at {at}")
        for q in (3, 5):
            d = row[f"dedekind_{q}"]
            print(f"   dedekind mod {q}: weakest survivor prominence {d['survivor_min_prominence']:.3f}, "
                  f"suppression {d['suppression']:.3f}")
        print(f"   zeta prime-power coverage by prominence: {cover}")

    top = max(w for row in result.values() for w, _ in row["misattributed"].values())
    low = min(row[f"dedekind_{q}"]["survivor_min_prominence"] for row in result.values() for q in (3, 5))
    print(f"\nlargest misattributed prominence {top:.3f}; DEFAULT_PROMINENCE = {DEFAULT_PROMINENCE}")
    print(f"weakest survivor prominence {low:.3f}; SURVIVOR_PROMINENCE = {SURVIVOR_PROMINENCE}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(result, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
