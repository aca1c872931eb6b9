"""Acceptance criteria 1-10, one test each.

Every test prints a single ``criterion N ...: PASS|FAIL`` line before
asserting; under pytest the lines are repeated in the terminal summary. Run directly with
``python3 tests/test_acceptance.py`` for just the summary lines.
"""

import contextlib
import io
import json
import math
import os
import subprocess
import sys
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

from prime_interference import cli
from prime_interference.analysis import (
    SUPPRESSION_RATIO,
    cancellation_residual,
    dedekind_survivor_check,
    detect_peaks,
    prime_power_base,
    psi_chi_exact,
    psi_chi_oracle,
    separation_report,
    von_mangoldt,
)
from prime_interference.characters import enumerate_characters, euler_phi, parse_character_id
from prime_interference.lfunction import expected_zero_count, find_zeros
from prime_interference.reconstruction import Grid, dedekind_reconstruction, reconstruct

DATA = Path(__file__).parent / "data"
IDS = ("1.1", "3.2", "4.3", "5.4", "5.2", "5.3")
GRID = Grid()


# filled by emit(); conftest prints it in the terminal summary
RESULT_LINES: dict[int, str] = {}


def emit(n, title, ok, detail=""):
    line = f"criterion {n:>2} {title}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    RESULT_LINES[n] = line
    print(line, flush=True)
    return ok


def _zeros(height):
    return {c: find_zeros(parse_character_id(c), height) for c in IDS}


@pytest.fixture(scope="module")
def z250(zero_lists):
    return zero_lists


@pytest.fixture(scope="module")
def z100(z250):
    return {c: z.truncate(height=100.0) for c, z in z250.items()}


@pytest.fixture(scope="module")
def n100(z250):
    return {c: z.truncate(count=100) for c, z in z250.items()}


def _recon(lists, cid):
    chi = parse_character_id(cid)
    conj = None if chi.is_real else lists[chi.conjugate().id]
    return reconstruct(lists[cid], GRID, conjugate=conj)


# 1 -------------------------------------------------------------------------------------


def check_zero_accuracy(z100):
    oracle = json.loads((DATA / "oracle.json").read_text())
    worst, bad = 0.0, []
    for cid in IDS:
        want = np.array([float(g) for g in oracle["zeros"][cid]])
        got = np.array(z100[cid].gammas[: len(want)])
        worst = max(worst, float(np.max(np.abs(got - want))))
        n, smooth = len(z100[cid]), expected_zero_count(parse_character_id(cid), 100.0)
        if abs(n - smooth) > 2:
            bad.append(f"{cid}: {n} vs {smooth:.2f}")
    ok = worst < 1e-6 and not bad
    counts = " ".join(f"{c}:{len(z100[c])}" for c in IDS)
    return ok, f"max |gamma - oracle| = {worst:.1e}; counts to 100 {counts}" + (f"; off: {bad}" if bad else "")


def test_criterion_1_zero_finder_accuracy(z100):
    ok, detail = check_zero_accuracy(z100)
    assert emit(1, "zero-finder accuracy", ok, detail), detail


# 2 -------------------------------------------------------------------------------------


def check_real_sine(z100):
    worst = max(float(np.max(np.abs(_recon(z100, c).t_values))) for c in ("3.2", "4.3"))
    return worst < 1e-12, f"max |T| = {worst:.1e}"


def test_criterion_2_real_character_sine_vanishing(z100):
    ok, detail = check_real_sine(z100)
    assert emit(2, "real-character sine vanishing", ok, detail), detail


# 3 -------------------------------------------------------------------------------------


def check_sign_separation(n100):
    groups = {"4.3": ({1}, {3}), "3.2": ({1}, {2}), "5.4": ({1, 4}, {2, 3})}
    notes, ok = [], True
    for cid, (plus, minus) in groups.items():
        chi = parse_character_id(cid)
        rep = separation_report(_recon(n100, cid), chi)
        amps = {r: c.mean_amplitude for r, c in rep.per_class.items()}
        signs_a = {np.sign(amps[r]) for r in plus if r in amps}
        signs_b = {np.sign(amps[r]) for r in minus if r in amps}
        split = len(signs_a) == 1 and len(signs_b) == 1 and signs_a != signs_b
        peaks = sum(c.matched_peaks for c in rep.per_class.values())
        ok &= rep.ok and split and set(amps) == plus | minus
        notes.append(f"{cid}: {peaks} peaks, {len(rep.violations)} violations")
    return ok, "; ".join(notes)


def test_criterion_3_sign_separation(n100):
    ok, detail = check_sign_separation(n100)
    assert emit(3, "sign separation mod 3/4/5", ok, detail), detail


# 4 -------------------------------------------------------------------------------------


def check_complementarity(n100):
    notes, ok = [], True
    for cid in ("5.2", "5.3"):
        R = _recon(n100, cid)
        s_cls = {p.residue_class for p in detect_peaks(R, component="S", modulus=5) if p.nearest_pp}
        t_cls = {p.residue_class for p in detect_peaks(R, component="T", modulus=5) if p.nearest_pp}
        ok &= bool(s_cls) and bool(t_cls) and s_cls <= {1, 4} and t_cls <= {2, 3}
        notes.append(f"{cid}: S classes {sorted(s_cls)}, T classes {sorted(t_cls)}")
    return ok, "; ".join(notes)


def test_criterion_4_complex_complementarity(n100):
    ok, detail = check_complementarity(n100)
    assert emit(4, "complex-character complementarity mod 5", ok, detail), detail


# 5 -------------------------------------------------------------------------------------


def check_conjugate_cancellation(z100):
    res = cancellation_residual(_recon(z100, "5.2"), _recon(z100, "5.3"))
    return res < 1e-10, f"max |T1 + T3| = {res:.1e}"


def test_criterion_5_conjugate_cancellation(z100):
    ok, detail = check_conjugate_cancellation(z100)
    assert emit(5, "conjugate cancellation", ok, detail), detail


# 6 -------------------------------------------------------------------------------------


def check_dedekind(z100):
    R = dedekind_reconstruction(5, z100, GRID)
    rep = dedekind_survivor_check(R, 5)
    found = {**rep.survivors, **rep.ramified}
    need = {11, 31, 41, 5, 25}
    ok = (
        set(found) == need
        and all(found.values())
        and rep.suppression is not None
        and rep.suppression < SUPPRESSION_RATIO
        and rep.cancellation_residual < 1e-10
    )
    detail = (
        f"peaks at {sorted(n for n, v in found.items() if v)}; suppression {rep.suppression:.3f} "
        f"< {SUPPRESSION_RATIO}; max |T| = {rep.cancellation_residual:.1e}"
    )
    return ok, detail


def test_criterion_6_dedekind_interference(z100):
    ok, detail = check_dedekind(z100)
    assert emit(6, "Dedekind interference mod 5", ok, detail), detail


# 7 -------------------------------------------------------------------------------------


def _cli(args):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(args)
    return code, out.getvalue()


def check_mod6():
    code, text = _cli(["characters", "--modulus", "6"])
    reported = code == 0 and "no primitive nontrivial character modulo 6" in text and "induced from modulus 3" in text
    _, r6 = _cli(["reconstruct", "--modulus", "6", "--label", "5"])
    _, r3 = _cli(["reconstruct", "--modulus", "3", "--label", "2"])
    same = r6 == r3 and len(r3) > 0
    return reported and same, f"report ok: {reported}; 6.5 CSV identical to 3.2: {same}"


def test_criterion_7_mod6_redundancy():
    ok, detail = check_mod6()
    assert emit(7, "mod-6 redundancy", ok, detail), detail


# 8 -------------------------------------------------------------------------------------


def check_psi_jumps(limit=1000):
    bad = []
    for q in (3, 4, 5):
        for chi in enumerate_characters(q):
            prev_exact, prev = Counter(), 0j
            for n in range(2, limit + 1):
                cur_exact = psi_chi_exact(chi, n)
                jump = cur_exact - prev_exact
                p, v = prime_power_base(n), chi(n)
                want = Counter({(p, v.turn): 1}) if p and not v.is_zero else Counter()
                cur = psi_chi_oracle(chi, n)
                step = v.real * von_mangoldt(n) if not v.is_zero else 0.0
                if jump != want or abs((cur.real - prev.real) - step) > 1e-12 * (1 + abs(cur.real)):
                    bad.append(f"{chi.id} n={n}")
                prev_exact, prev = cur_exact, cur
    return not bad, f"{len(bad)} mismatching steps over n <= {limit}" + (f": {bad[:3]}" if bad else "")


def test_criterion_8_oracle_consistency():
    ok, detail = check_psi_jumps()
    assert emit(8, "psi oracle step consistency", ok, detail), detail


# 9 -------------------------------------------------------------------------------------


def check_orthogonality():
    worst = 0.0
    for q in range(1, 21):
        chars = enumerate_characters(q)
        for n in range(1, q + 1):
            if math.gcd(n, q) != 1:
                continue
            total = sum(c(n).to_complex() for c in chars)
            want = euler_phi(q) if n % q == 1 % q else 0
            worst = max(worst, abs(total - want))
    return worst < 1e-12, f"max deviation {worst:.1e} over q <= 20"


def test_criterion_9_orthogonality():
    ok, detail = check_orthogonality()
    assert emit(9, "orthogonality", ok, detail), detail


# 10 ------------------------------------------------------------------------------------


def _run_cli(args, threads, tmp):
    env = dict(os.environ)
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        env[var] = str(threads)
    subprocess.run([sys.executable, "-m", "prime_interference", *args, "--out", str(tmp)], env=env, check=True)
    return tmp.read_bytes()


def check_determinism(tmp_path):
    runs = {
        "csv": ["figure", "4", "--format", "csv"],
        "svg": ["figure", "4", "--format", "svg"],
        "dedekind-csv": ["dedekind", "--modulus", "5", "--format", "csv"],
    }
    same = {}
    for name, args in runs.items():
        a = _run_cli(args, 1, tmp_path / f"{name}.1")
        b = _run_cli(args, 8, tmp_path / f"{name}.8")
        c = _run_cli(args, 1, tmp_path / f"{name}.1b")
        same[name] = a == b == c
    return all(same.values()), ", ".join(f"{k} identical: {v}" for k, v in same.items())


def test_criterion_10_determinism(tmp_path):
    ok, detail = check_determinism(tmp_path)
    assert emit(10, "determinism across thread counts", ok, detail), detail


def _main():
    import tempfile

    zs = _zeros(250.0)
    by_height = {c: z.truncate(height=100.0) for c, z in zs.items()}
    by_count = {c: z.truncate(count=100) for c, z in zs.items()}
    checks = [
        (1, "zero-finder accuracy", lambda: check_zero_accuracy(by_height)),
        (2, "real-character sine vanishing", lambda: check_real_sine(by_height)),
        (3, "sign separation mod 3/4/5", lambda: check_sign_separation(by_count)),
        (4, "complex-character complementarity mod 5", lambda: check_complementarity(by_count)),
        (5, "conjugate cancellation", lambda: check_conjugate_cancellation(by_height)),
        (6, "Dedekind interference mod 5", lambda: check_dedekind(by_height)),
        (7, "mod-6 redundancy", check_mod6),
        (8, "psi oracle step consistency", check_psi_jumps),
        (9, "orthogonality", check_orthogonality),
    ]
    results = [emit(n, t, *f()) for n, t, f in checks]
    with tempfile.TemporaryDirectory() as d:
        results.append(emit(10, "determinism across thread counts", *check_determinism(Path(d))))
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(_main())
