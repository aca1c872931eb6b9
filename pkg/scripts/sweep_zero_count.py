"""How the verdicts depend on the number of zeros.

For each budget of the first N zeros per L-function, prints the number of
sign violations at the default prominence for every character, the mod-5
suppression ratio and whether all mod-5 survivors are found.

    python3 scripts/sweep_zero_count.py --counts 10 25 50 100 150
"""

import argparse

from prime_interference.analysis import dedekind_survivor_check, separation_report
from prime_interference.characters import parse_character_id
from prime_interference.lfunction import find_zeros
from prime_interference.reconstruction import Grid, dedekind_reconstruction, reconstruct

IDS = ("1.1", "3.2", "4.3", "5.4", "5.2", "5.3")


def main():
    ap = argparse.ArgumentParser(description="zero-count sweep")
    ap.add_argument("--counts", type=int, nargs="+", default=[10, 25, 50, 75, 100, 150])
    ap.add_argument("--height", type=float, default=300.0)
    args = ap.parse_args()
    zeros = {c: find_zeros(parse_character_id(c), args.height) for c in IDS}
    grid = Grid()
    print("count " + " ".join(f"{c:>5}" for c in IDS[1:]) + "  suppression  survivors")
    for n in args.counts:
        lists = {c: z.truncate(count=n) for c, z in zeros.items()}
        cells = []
        for cid in IDS[1:]:
            chi = parse_character_id(cid)
            conj = None if chi.is_real else lists[chi.conjugate().id]
            rep = separation_report(reconstruct(lists[cid], grid, conjugate=conj), chi)
            cells.append(f"{len(rep.violations):>5}")
        d = dedekind_survivor_check(dedekind_reconstruction(5, lists, grid), 5)
        found = all({**d.survivors, **d.ramified}.values())
        print(f"{n:>5} " + " ".join(cells) + f"  {d.suppression:>11.3f}  {'all' if found else 'missing'}")


if __name__ == "__main__":
    main()
