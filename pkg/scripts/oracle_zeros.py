"""Independent arbitrary-precision oracle for the zero finder tests.

Uses only mpmath (its own Dirichlet series and loggamma) and hardcoded
character tables, so nothing here shares code with the package.  Output is
frozen into tests/data/oracle.json.

    python scripts/oracle_zeros.py > tests/data/oracle.json
"""
import json
import sys

import mpmath as mp

mp.mp.dps = 30

I = mp.mpc(0, 1)

# value lists indexed by n mod q, as mpmath.dirichlet expects
TABLES = {
    "1.1": (1, [1]),
    "3.2": (3, [0, 1, -1]),
    "4.3": (4, [0, 1, 0, -1]),
    "5.4": (5, [0, 1, -1, -1, 1]),
    "5.2": (5, [0, 1, I, -I, -1]),
    "5.3": (5, [0, 1, -I, I, -1]),
}


def gauss(q, vals):
    return mp.fsum(vals[a % q] * mp.expjpi(2 * mp.mpf(a) / q) for a in range(1, q + 1))


def make_z(q, vals):
    a = 0 if mp.chop(vals[q - 1] - 1) == 0 else 1
    eps = gauss(q, vals) / (I ** a * mp.sqrt(q))
    half = mp.arg(eps) / 2

    def L(t):
        s = mp.mpf(1) / 2 + I * t
        if q == 1:
            return mp.zeta(s)
        return mp.dirichlet(s, vals)

    def theta(t):
        return t / 2 * mp.log(mp.mpf(q) / mp.pi) + mp.im(mp.loggamma((mp.mpf(1) / 2 + I * t + a) / 2)) - half

    def Z(t):
        return mp.re(mp.expj(theta(t)) * L(t))

    return Z, L


def zeros(label, tmax, step=0.02):
    q, vals = TABLES[label]
    Z, L = make_z(q, vals)
    out = []
    t = mp.mpf(step)
    prev = Z(t)
    while t < tmax:
        t2 = t + step
        cur = Z(t2)
        if prev * cur < 0:
            out.append(mp.findroot(Z, (t, t2), solver="anderson"))
        t, prev = t2, cur
    return out, L


def main():
    res = {"zeros": {}, "counts_T100": {}, "abs_L_at_zero": {}}
    for label in TABLES:
        zs, L = zeros(label, 100)
        res["zeros"][label] = [mp.nstr(z, 15) for z in zs[:10]]
        res["counts_T100"][label] = len(zs)
        res["abs_L_at_zero"][label] = float(abs(L(zs[0])))
    res["zeta_half"] = mp.nstr(mp.zeta(0.5), 15)
    res["hurwitz"] = {
        "1/3 at 1/2+50i": [mp.nstr(v, 17) for v in (mp.re(mp.zeta(mp.mpc(0.5, 50), mp.mpf(1) / 3)),
                                                   mp.im(mp.zeta(mp.mpc(0.5, 50), mp.mpf(1) / 3)))],
        "0.2 at 1/2+150i": [mp.nstr(v, 17) for v in (mp.re(mp.zeta(mp.mpc(0.5, 150), mp.mpf(1) / 5)),
                                                    mp.im(mp.zeta(mp.mpc(0.5, 150), mp.mpf(1) / 5)))],
        "0.75 at 0.5+199i": [mp.nstr(v, 17) for v in (mp.re(mp.zeta(mp.mpc(0.5, 199), mp.mpf(3) / 4)),
                                                     mp.im(mp.zeta(mp.mpc(0.5, 199), mp.mpf(3) / 4)))],
    }
    # dense scan below t = 1 for every character above
    low = {}
    for label in TABLES:
        q, vals = TABLES[label]
        Z, _ = make_z(q, vals)
        pts = [Z(mp.mpf(k) / 200) for k in range(1, 201)]
        low[label] = sum(1 for u, v in zip(pts, pts[1:]) if u * v < 0)
    res["sign_changes_below_1"] = low
    json.dump(res, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
