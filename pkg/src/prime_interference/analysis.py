"""Ground truth and verification: von Mangoldt sums, peak finding, class reports.

Sign convention: a prime power n = p^k shows up in the symmetric
reconstruction of chi as a spike of sign +Re chi(n) in S and +Im chi(n) in
T (for zeta, every spike is positive).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
from scipy.signal import find_peaks

from .characters import DirichletCharacter, enumerate_characters, parse_character_id
from .reconstruction import GridError, Reconstruction

__all__ = [
    "Peak",
    "ClassSummary",
    "SeparationReport",
    "CharacterMismatchError",
    "DEFAULT_PROMINENCE",
    "SURVIVOR_PROMINENCE",
    "SUPPRESSION_RATIO",
    "SPIKE_SIGN",
    "von_mangoldt",
    "prime_power_base",
    "prime_powers",
    "default_match_tol",
    "psi_chi_oracle",
    "psi_chi_exact",
    "detect_peaks",
    "separation_report",
    "cancellation_residual",
    "dedekind_survivor_check",
    "amplitude_at",
]

# calibrated with scripts/calibrate_thresholds.py
DEFAULT_PROMINENCE = 0.4
SURVIVOR_PROMINENCE = 0.05
SUPPRESSION_RATIO = 0.25
SPIKE_SIGN = 1


class CharacterMismatchError(ValueError):
    pass


def prime_power_base(n: int) -> int | None:
    """p if n = p^k (k >= 1), else None. Trial division."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
        p += 1 if p == 2 else 2
    return n


def von_mangoldt(n: int) -> float:
    p = prime_power_base(n)
    return math.log(p) if p else 0.0


def prime_powers(lo: float, hi: float) -> list[int]:
    return [n for n in range(max(2, math.ceil(lo)), math.floor(hi) + 1) if prime_power_base(n)]


def default_match_tol(x_min: float, x_max: float) -> float:
    """Half the smallest log-gap between consecutive prime powers in range."""
    pp = prime_powers(x_min, x_max)
    if len(pp) < 2:
        return 0.05
    return 0.5 * min(math.log(b / a) for a, b in zip(pp, pp[1:]))


def psi_chi_oracle(chi: DirichletCharacter, x: float) -> complex:
    """sum_{n <= x} chi(n) Lambda(n) by direct enumeration."""
    re: list[float] = []
    im: list[float] = []
    for n in range(2, math.floor(x) + 1):
        lam = von_mangoldt(n)
        if lam:
            v = chi(n).to_complex()
            re.append(v.real * lam)
            im.append(v.imag * lam)
    return complex(math.fsum(re), math.fsum(im))


def psi_chi_exact(chi: DirichletCharacter, x: float) -> Counter:
    """Exact form of psi_chi_oracle: Counter {(p, turn): multiplicity}.

    The value is sum over keys of multiplicity * e^{2 pi i turn} * log p;
    zero character values are dropped.
    """
    out: Counter = Counter()
    for n in range(2, math.floor(x) + 1):
        p = prime_power_base(n)
        if p:
            v = chi(n)
            if not v.is_zero:
                out[(p, v.turn)] += 1
    return out


# --- peaks -----------------------------------------------------------------


@dataclass(frozen=True)
class Peak:
    x: float
    amplitude: float
    nearest_pp: int | None
    pp_distance: float
    residue_class: int | None
    prominence: float = 0.0
    component: str = "S"


def _modulus_of(R: Reconstruction) -> int:
    qs = [parse_character_id(c).modulus for c in R.character_ids] or [1]
    return reduce(lambda a, b: a * b // math.gcd(a, b), qs, 1)


def detect_peaks(
    R: Reconstruction,
    prominence: float = DEFAULT_PROMINENCE,
    match_tol: float | None = None,
    component: str = "S",
    modulus: int | None = None,
) -> list[Peak]:
    """Local maxima of |S| (or |T|) whose prominence exceeds
    ``prominence * max |S|``.

    Each peak is attributed to the nearest prime power in log x when within
    ``match_tol``. Endpoints count as candidates (the grid is padded with 0).
    """
    if prominence <= 0:
        raise ValueError("prominence must be positive")
    y = R.component(component)
    a = np.abs(y)
    top = float(a.max()) if a.size else 0.0
    if top == 0.0:
        return []
    if match_tol is None:
        match_tol = default_match_tol(R.grid.x_min, R.grid.x_max)
    q = modulus or _modulus_of(R)
    u = np.log(R.x)
    padded = np.concatenate(([0.0], a, [0.0]))
    idx, props = find_peaks(padded, prominence=prominence * top)
    pp = prime_powers(R.grid.x_min * math.exp(-match_tol), R.grid.x_max * math.exp(match_tol))
    log_pp = np.log(np.asarray(pp, dtype=float)) if pp else np.empty(0)
    out = []
    for i, prom in zip(idx - 1, props["prominences"]):
        if log_pp.size:
            j = int(np.argmin(np.abs(log_pp - u[i])))
            dist = float(abs(log_pp[j] - u[i]))
            near = pp[j] if dist <= match_tol else None
        else:
            dist, near = math.inf, None
        out.append(
            Peak(
                x=float(R.x[i]),
                amplitude=float(y[i]),
                nearest_pp=near,
                pp_distance=dist,
                residue_class=None if near is None else near % q,
                prominence=float(prom / top),
                component=component,
            )
        )
    return out


def amplitude_at(R: Reconstruction, n: float, component: str = "S") -> float:
    """Value of S (or T) at x = n, linearly interpolated in log x."""
    u = np.log(R.x)
    return float(np.interp(math.log(n), u, R.component(component)))


# --- reports ---------------------------------------------------------------


@dataclass
class ClassSummary:
    matched_peaks: int = 0
    mean_amplitude: float = 0.0
    expected_sign: int = 0


@dataclass
class SeparationReport:
    modulus: int
    per_class: dict[int, ClassSummary]
    violations: list[Peak] = field(default_factory=list)
    cancellation_residual: float | None = None
    t_per_class: dict[int, ClassSummary] = field(default_factory=dict)
    character_id: str = ""
    failures: list[str] = field(default_factory=list)
    survivors: dict[int, bool] = field(default_factory=dict)
    ramified: dict[int, bool] = field(default_factory=dict)
    suppression: float | None = None

    @property
    def ok(self) -> bool:
        return not self.violations and not self.failures

    def to_table(self) -> str:
        head = f"separation report for {self.character_id or 'mod ' + str(self.modulus)}"
        lines = [head, "-" * len(head)]
        for name, table in (("S", self.per_class), ("T", self.t_per_class)):
            if not table:
                continue
            lines.append(f"{name}-peaks  class  count  mean_amplitude  expected_sign")
            for r in sorted(table):
                c = table[r]
                lines.append(f"         {r:>5}  {c.matched_peaks:>5}  {c.mean_amplitude:>14.6g}  {c.expected_sign:>+13d}")
        if self.survivors:
            lines.append("survivors: " + " ".join(f"{p}:{'yes' if ok else 'NO'}" for p, ok in sorted(self.survivors.items())))
        if self.ramified:
            lines.append("ramified:  " + " ".join(f"{p}:{'yes' if ok else 'NO'}" for p, ok in sorted(self.ramified.items())))
        if self.suppression is not None:
            lines.append(f"suppression ratio: {self.suppression:.6g}")
        if self.cancellation_residual is not None:
            lines.append(f"max |T|: {self.cancellation_residual:.3e}")
        for v in self.violations:
            lines.append(
                f"VIOLATION {v.component}-peak at x={v.x:.6g} (p^k={v.nearest_pp}, class {v.residue_class}) "
                f"amplitude {v.amplitude:.6g}"
            )
        for f in self.failures:
            lines.append(f"FAILED {f}")
        lines.append("verdict: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines) + "\n"

    def to_keyvalue(self) -> str:
        out = [
            f"modulus={self.modulus}",
            f"character={self.character_id}",
            f"verdict={'pass' if self.ok else 'fail'}",
            f"violations={len(self.violations)}",
        ]
        if self.cancellation_residual is not None:
            out.append(f"cancellation_residual={self.cancellation_residual:.6e}")
        if self.suppression is not None:
            out.append(f"suppression={self.suppression:.6g}")
        blocks = ["\n".join(out)]
        for name, table in (("S", self.per_class), ("T", self.t_per_class)):
            for r in sorted(table):
                c = table[r]
                blocks.append(
                    f"[{name}.class.{r}]\nmatched_peaks={c.matched_peaks}\n"
                    f"mean_amplitude={c.mean_amplitude:.6g}\nexpected_sign={c.expected_sign}"
                )
        for p, ok in sorted(self.survivors.items()):
            blocks.append(f"[survivor.{p}]\nfound={str(ok).lower()}")
        for p, ok in sorted(self.ramified.items()):
            blocks.append(f"[ramified.{p}]\nfound={str(ok).lower()}")
        for i, f in enumerate(self.failures):
            blocks.append(f"[failure.{i}]\nreason={f}")
        return "\n\n".join(blocks) + "\n"


def _sign(v: float, eps: float = 1e-12) -> int:
    return 0 if abs(v) <= eps else (1 if v > 0 else -1)


def _summaries(peaks: list[Peak], expected) -> dict[int, ClassSummary]:
    groups: dict[int, list[float]] = {}
    for p in peaks:
        if p.nearest_pp is not None:
            groups.setdefault(p.residue_class, []).append(p.amplitude)
    return {
        r: ClassSummary(len(v), float(np.mean(v)), expected(r))
        for r, v in groups.items()
    }


def separation_report(
    R: Reconstruction,
    chi: DirichletCharacter,
    prominence: float = DEFAULT_PROMINENCE,
    match_tol: float | None = None,
) -> SeparationReport:
    """Compare matched peaks against the character table.

    An S-peak at p^k is a violation when its sign differs from
    SPIKE_SIGN * sign(Re chi(p^k)), including Re chi(p^k) = 0. For complex
    characters the T-peaks are checked the same way against Im chi(p^k).
    """
    if chi.id not in R.character_ids:
        raise CharacterMismatchError(f"reconstruction built from {R.character_ids}, not {chi.id}")
    q = chi.modulus
    comps = ["S"] if chi.is_real else ["S", "T"]
    report = SeparationReport(q, {}, character_id=chi.id)
    for comp in comps:
        peaks = detect_peaks(R, prominence, match_tol, comp, modulus=q)
        part = (lambda n: chi(n).real) if comp == "S" else (lambda n: chi(n).imag)
        for p in peaks:
            if p.nearest_pp is None:
                continue
            want = SPIKE_SIGN * _sign(part(p.nearest_pp))
            if want == 0 or _sign(p.amplitude) != want:
                report.violations.append(p)
        table = _summaries(peaks, lambda r: SPIKE_SIGN * _sign(part(r)))
        if comp == "S":
            report.per_class = table
        else:
            report.t_per_class = table
    if chi.is_real:
        report.cancellation_residual = float(np.max(np.abs(R.t_values)))
    return report


def cancellation_residual(R1: Reconstruction, R2: Reconstruction) -> float:
    """max over the grid of |T1 + T2|."""
    if R1.grid != R2.grid:
        raise GridError("reconstructions live on different grids")
    return float(np.max(np.abs(R1.t_values + R2.t_values)))


def dedekind_survivor_check(
    R: Reconstruction,
    q: int,
    prominence: float = SURVIVOR_PROMINENCE,
    match_tol: float | None = None,
    suppression_ratio: float = SUPPRESSION_RATIO,
    t_tol: float = 1e-10,
) -> SeparationReport:
    """Check a combined reconstruction for the split/ramified survivor pattern.

    Survivors are the primes p = 1 (mod q) and the prime powers of primes
    dividing q. Class amplitudes are |S| at the prime powers themselves.
    """
    chars = enumerate_characters(q)
    needed = {"1.1"} | {c.id for c in chars if c.is_primitive}
    if q > 1 and not needed <= set(R.character_ids):
        missing = sorted(needed - set(R.character_ids))
        raise CharacterMismatchError(f"combined reconstruction lacks {', '.join(missing)}")
    if match_tol is None:
        match_tol = default_match_tol(R.grid.x_min, R.grid.x_max)
    peaks = detect_peaks(R, prominence, match_tol, "S", modulus=q)
    matched = {p.nearest_pp for p in peaks if p.nearest_pp is not None}
    pp = prime_powers(R.grid.x_min, R.grid.x_max)

    def expected(r: int) -> int:
        if math.gcd(r, q) > 1:
            return SPIKE_SIGN
        total = sum(c(r).real for c in chars)
        return SPIKE_SIGN * _sign(total, 1e-9)

    report = SeparationReport(q, {}, character_id=f"dedekind mod {q}")
    classes: dict[int, list[float]] = {}
    for n in pp:
        classes.setdefault(n % q, []).append(abs(amplitude_at(R, n)))
    for r, amps in classes.items():
        count = sum(1 for n in matched if n % q == r)
        report.per_class[r] = ClassSummary(count, float(np.mean(amps)), expected(r))

    for n in pp:
        base = prime_power_base(n)
        if q > 1 and math.gcd(n, q) > 1:
            report.ramified[n] = n in matched
        elif base == n and n % q == 1 % q:
            report.survivors[n] = n in matched
    for n, ok in {**report.survivors, **report.ramified}.items():
        if not ok:
            report.failures.append(f"no matched peak at survivor {n}")

    if q > 1:
        surv = [abs(amplitude_at(R, n)) for n in pp if n % q == 1]
        supp = [abs(amplitude_at(R, n)) for n in pp if math.gcd(n, q) == 1 and n % q != 1]
        if surv and supp:
            report.suppression = float(np.mean(supp) / np.mean(surv))
            if not report.suppression < suppression_ratio:
                report.failures.append(
                    f"suppressed classes reach {report.suppression:.3f} of the survivor mean "
                    f"(limit {suppression_ratio})"
                )
    report.cancellation_residual = float(np.max(np.abs(R.t_values)))
    if not report.cancellation_residual < t_tol:
        report.failures.append(f"max |T| = {report.cancellation_residual:.3e} exceeds {t_tol:g}")
    return report
