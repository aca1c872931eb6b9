"""Dirichlet L-functions on the critical line and their zeros.

L(s, chi) is assembled from Hurwitz zeta values,

    L(s, chi) = q^{-s} * sum_{a mod q} chi(a) * zeta(s, a/q),

each evaluated by Euler-Maclaurin summation in double precision. Zeros on
Re s = 1/2 are located as sign changes of the rotated (real) function
Z_chi(t) and refined by bisection.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.special import loggamma

from .characters import (
    DirichletCharacter,
    ImprimitiveCharacterError,
    gauss_sum,
    parse_character_id,
)

__all__ = [
    "EvalParams",
    "ZeroList",
    "PoleError",
    "PrecisionWarning",
    "ResidualImaginaryError",
    "MissedZeroWarning",
    "ZeroListFormatError",
    "hurwitz_zeta",
    "l_value",
    "hardy_z",
    "theta",
    "expected_zero_count",
    "find_zeros",
    "import_zeros",
    "export_zeros",
    "read_zeros",
    "write_zeros",
]

# B_2, B_4, ..., B_30
_BERNOULLI = [
    1 / 6,
    -1 / 30,
    1 / 42,
    -1 / 30,
    5 / 66,
    -691 / 2730,
    7 / 6,
    -3617 / 510,
    43867 / 798,
    -174611 / 330,
    854513 / 138,
    -236364091 / 2730,
    8553103 / 6,
    -23749461029 / 870,
    8615841276005 / 14322,
]
_EM_COEFFS = [b / math.factorial(2 * k + 2) for k, b in enumerate(_BERNOULLI)]

MAX_T = 500.0


class PoleError(ZeroDivisionError):
    """Evaluation requested at the pole s = 1."""


class PrecisionWarning(UserWarning):
    """Euler-Maclaurin parameters are too small for the requested height."""


class MissedZeroWarning(UserWarning):
    """Zero count disagrees with the counting formula by more than 2."""


class ResidualImaginaryError(ArithmeticError):
    """Rotated L-value is not real on the critical line."""


class ZeroListFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class EvalParams:
    """Numerical knobs.

    ``euler_maclaurin_terms=None`` picks N = max(50, 4|t|) per call.
    """

    euler_maclaurin_terms: int | None = None
    bernoulli_terms: int = 8
    bisection_tol: float = 1e-9
    scan_step: float = 0.05

    def __post_init__(self):
        n = self.euler_maclaurin_terms
        if n is not None and n < 10:
            raise ValueError("euler_maclaurin_terms must be >= 10")
        if not 1 <= self.bernoulli_terms <= len(_BERNOULLI):
            raise ValueError("bernoulli_terms must be in [1, 15]")
        if not 1e-12 <= self.bisection_tol <= 1e-3:
            raise ValueError("bisection_tol must be in [1e-12, 1e-3]")
        if not 0 < self.scan_step <= 0.5:
            raise ValueError("scan_step must be in (0, 0.5]")

    def terms_for(self, height: float) -> int:
        if self.euler_maclaurin_terms is not None:
            return self.euler_maclaurin_terms
        return max(50, int(math.ceil(4 * abs(height))))


DEFAULT_PARAMS = EvalParams()


@dataclass(frozen=True)
class ZeroList:
    """Positive ordinates of zeros 1/2 + i*gamma of one L-function."""

    character_id: str
    gammas: tuple[float, ...] = ()
    source: str = "computed"
    t_max: float = 0.0

    def __post_init__(self):
        g = tuple(float(x) for x in self.gammas)
        object.__setattr__(self, "gammas", g)
        if self.source not in ("computed", "imported"):
            raise ValueError(f"unknown source {self.source!r}")
        parse_character_id(self.character_id)
        for i, x in enumerate(g):
            if not x > 0:
                raise ValueError(f"zero ordinates must be positive, got {x}")
            if i and not x - g[i - 1] > 1e-6:
                raise ValueError(f"zero ordinates must be strictly ascending (entry {i}: {x})")

    @property
    def character(self) -> DirichletCharacter:
        return parse_character_id(self.character_id)

    def __len__(self) -> int:
        return len(self.gammas)

    def array(self) -> np.ndarray:
        return np.asarray(self.gammas, dtype=float)

    def truncate(self, *, count: int | None = None, height: float | None = None) -> ZeroList:
        g = self.gammas
        if height is not None:
            g = tuple(x for x in g if x <= height)
        if count is not None:
            g = g[:count]
        t_max = self.t_max if height is None else min(height, self.t_max or height)
        return ZeroList(self.character_id, g, self.source, t_max)


# --- Hurwitz zeta ------------------------------------------------------------


def _as_array(s) -> tuple[np.ndarray, bool]:
    arr = np.asarray(s, dtype=complex)
    return np.atleast_1d(arr), arr.ndim == 0


def _em_tail(s: np.ndarray, base: float, m_terms: int, regularized: bool) -> np.ndarray:
    """Tail of sum_{n >= N} (n + alpha)^{-s} with base = N + alpha.

    With ``regularized`` the 1/(s-1) pole of the integral term is removed
    (only meaningful at s = 1, where it becomes -log(base)).
    """
    log_b = math.log(base)
    b_pow = np.exp(-s * log_b)
    if regularized:
        tail = -log_b + 0.5 * b_pow
    else:
        tail = base * b_pow / (s - 1) + 0.5 * b_pow
    # rising factorial s (s+1) ... (s+2k), times base^{-s-2k-1}
    rising = s.copy()
    power = b_pow / base
    inv_b2 = 1.0 / (base * base)
    for k in range(m_terms):
        tail = tail + _EM_COEFFS[k] * rising * power
        rising = rising * (s + 2 * k + 1) * (s + 2 * k + 2)
        power = power * inv_b2
    return tail


def _em_check(s: np.ndarray, base: float, m_terms: int) -> float:
    """Size of the first omitted correction relative to base^{-sigma}."""
    if m_terms >= len(_EM_COEFFS):
        coeff = abs(_EM_COEFFS[-1]) * 4.0  # growth ratio of the next Bernoulli quotient
    else:
        coeff = abs(_EM_COEFFS[m_terms])
    mag = np.abs(s)
    for j in range(1, 2 * m_terms + 1):
        mag = mag * np.abs(s + j)
    return float(np.max(coeff * mag / base ** (2 * m_terms + 1)))


def _hurwitz(s: np.ndarray, alpha: float, params: EvalParams, regularized: bool = False) -> np.ndarray:
    height = float(np.max(np.abs(s.imag))) if s.size else 0.0
    n_terms = params.terms_for(height)
    m_terms = params.bernoulli_terms
    base = n_terms + alpha
    if _em_check(s, base, m_terms) > 1e-12:
        warnings.warn(
            f"Euler-Maclaurin with N={n_terms}, M={m_terms} is unreliable at |Im s|={height:.1f}",
            PrecisionWarning,
            stacklevel=3,
        )
    if regularized:
        head = np.full(s.shape, np.sum(1.0 / (np.arange(n_terms, dtype=float) + alpha)), dtype=complex)
        return head + _em_tail(s, base, m_terms, regularized)
    logs = np.log(np.arange(n_terms, dtype=float) + alpha)
    head = np.zeros(s.shape, dtype=complex)
    # chunk to bound memory for long grids
    chunk = max(1, 2_000_000 // n_terms)
    for i in range(0, s.size, chunk):
        head[i : i + chunk] = np.exp(-np.outer(s[i : i + chunk], logs)).sum(axis=1)
    return head + _em_tail(s, base, m_terms, regularized)


def hurwitz_zeta(s, alpha: float, params: EvalParams = DEFAULT_PARAMS):
    """zeta(s, alpha) = sum_{n >= 0} (n + alpha)^{-s} for 0 < alpha <= 1.

    Accepts a scalar or an array of complex ``s``; issues a
    :class:`PrecisionWarning` when N is too small for the height.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    arr, scalar = _as_array(s)
    if np.any(arr == 1):
        raise PoleError("zeta(s, alpha) has a pole at s = 1")
    out = _hurwitz(arr, float(alpha), params)
    return complex(out[0]) if scalar else out


def _coprime_residues(chi: DirichletCharacter) -> list[tuple[int, complex]]:
    q = chi.modulus
    if q == 1:
        return [(1, 1 + 0j)]
    return [(a, chi.value(a).to_complex()) for a in range(1, q) if math.gcd(a, q) == 1]


def l_value(s, chi: DirichletCharacter, params: EvalParams = DEFAULT_PARAMS):
    """L(s, chi) via the Hurwitz decomposition; scalar or array ``s``.

    At s = 1 a non-principal character gives the finite value
    -(1/q) sum chi(a) psi(a/q), obtained from the regularised tails.
    """
    arr, scalar = _as_array(s)
    q = chi.modulus
    at_one = arr == 1
    if np.any(at_one) and chi.is_principal:
        raise PoleError(f"L(s, {chi.id}) has a pole at s = 1")
    total = np.zeros(arr.shape, dtype=complex)
    rest = ~at_one
    terms = _coprime_residues(chi)
    if np.any(rest):
        sr = arr[rest]
        acc = np.zeros(sr.shape, dtype=complex)
        for a, v in terms:
            acc = acc + v * _hurwitz(sr, a / q, params)
        total[rest] = np.exp(-sr * math.log(q)) * acc
    if np.any(at_one):
        s1 = np.ones(1, dtype=complex)
        acc = 0j
        for a, v in terms:
            acc += v * complex(_hurwitz(s1, a / q, params, regularized=True)[0])
        total[at_one] = acc / q
    return complex(total[0]) if scalar else total


# --- rotation to the real line --------------------------------------------


@dataclass(frozen=True)
class _Rotation:
    chi: DirichletCharacter
    a: int = field(init=False)
    half_root_phase: float = field(init=False)

    def __post_init__(self):
        chi = self.chi
        if not chi.is_primitive:
            raise ImprimitiveCharacterError(
                f"{chi.id} is imprimitive; use its inducing character {chi.primitive_inducer().id}"
            )
        a = chi.parity
        q = chi.modulus
        eps = gauss_sum(chi) / (1j**a * math.sqrt(q))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "half_root_phase", cmath.phase(eps) / 2)

    def theta(self, t: np.ndarray) -> np.ndarray:
        q = self.chi.modulus
        g = loggamma((0.5 + 1j * t + self.a) / 2).imag
        return 0.5 * t * math.log(q / math.pi) + g - self.half_root_phase


def theta(t, chi: DirichletCharacter):
    """Phase theta_chi(t) making exp(i theta) L(1/2 + it, chi) real."""
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = _Rotation(chi).theta(arr)
    return float(out[0]) if np.ndim(t) == 0 else out


def _hardy_z(t: np.ndarray, rot: _Rotation, params: EvalParams) -> np.ndarray:
    lv = l_value(0.5 + 1j * t, rot.chi, params)
    rotated = np.exp(1j * rot.theta(t)) * lv
    bad = np.abs(rotated.imag) > 1e-8 * (1 + np.abs(rotated.real))
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ResidualImaginaryError(
            f"Z_{rot.chi.id}({t[i]:.6f}) has imaginary residue {rotated.imag[i]:.3e}"
        )
    return rotated.real


def hardy_z(t, chi: DirichletCharacter, params: EvalParams = DEFAULT_PARAMS):
    """Real-valued Z_chi(t) = exp(i theta_chi(t)) L(1/2 + it, chi)."""
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = _hardy_z(arr, _Rotation(chi), params)
    return float(out[0]) if np.ndim(t) == 0 else out


def expected_zero_count(chi: DirichletCharacter, height: float) -> float:
    """Smooth count of zeros with 0 < gamma <= height.

    (theta(T) - theta(0)) / pi, plus one for the pole of zeta. The leading
    term is (T / 2 pi) log(q T / (2 pi e)).
    """
    rot = _Rotation(chi)
    th = rot.theta(np.array([height, 0.0]))
    return (th[0] - th[1]) / math.pi + (1.0 if chi.modulus == 1 else 0.0)


# --- zero finding -----------------------------------------------------------


def find_zeros(chi: DirichletCharacter, t_max: float, params: EvalParams = DEFAULT_PARAMS) -> ZeroList:
    """All zeros 1/2 + i gamma with 0 < gamma <= t_max, by sign changes of Z."""
    if not 0 < t_max <= MAX_T:
        raise ValueError(f"t_max must lie in (0, {MAX_T}]")
    rot = _Rotation(chi)
    n_steps = int(math.ceil(t_max / params.scan_step))
    grid = np.linspace(0.0, t_max, n_steps + 1)
    grid[0] = min(params.scan_step, t_max) * 1e-3
    z = _hardy_z(grid, rot, params)
    left = np.flatnonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)
    exact = np.flatnonzero(z[1:] == 0) + 1
    lo = grid[left].copy()
    hi = grid[left + 1].copy()
    zlo = z[left].copy()
    while lo.size and np.max(hi - lo) > params.bisection_tol:
        mid = 0.5 * (lo + hi)
        zm = _hardy_z(mid, rot, params)
        same = np.sign(zm) == np.sign(zlo)
        lo = np.where(same, mid, lo)
        zlo = np.where(same, zm, zlo)
        hi = np.where(same, hi, mid)
    found = np.concatenate([0.5 * (lo + hi), grid[exact]])
    gammas = tuple(float(g) for g in np.sort(found) if g <= t_max)
    zl = ZeroList(chi.id, gammas, "computed", float(t_max))
    expected = expected_zero_count(chi, t_max)
    if abs(len(gammas) - expected) > 2:
        warnings.warn(
            f"{chi.id}: found {len(gammas)} zeros up to {t_max}, counting formula gives {expected:.1f}; "
            "scan_step may be too coarse",
            MissedZeroWarning,
            stacklevel=2,
        )
    return zl


# --- file format -----------------------------------------------------------


def export_zeros(zl: ZeroList) -> str:
    lines = [f"# character {zl.character_id}"]
    if zl.t_max:
        lines.append(f"# t_max {zl.t_max:.9f}")
    lines.extend(f"{g:.9f}" for g in zl.gammas)
    return "\n".join(lines) + "\n"


def import_zeros(stream: str | Iterable[str], expect: str | None = None) -> ZeroList:
    """Parse the zero-list text format.

    ``expect`` optionally names the character the file must describe.
    """
    lines = stream.splitlines() if isinstance(stream, str) else list(stream)
    if not lines or not lines[0].startswith("# character"):
        raise ZeroListFormatError("first line must be '# character q.label'", 1)
    head = lines[0].split()
    if len(head) != 3:
        raise ZeroListFormatError("first line must be '# character q.label'", 1)
    char_id = head[2]
    try:
        chi = parse_character_id(char_id)
    except ValueError as exc:
        raise ZeroListFormatError(str(exc), 1) from None
    if expect is not None and parse_character_id(expect) != chi:
        raise ZeroListFormatError(f"file describes {chi.id}, expected {expect}", 1)
    t_max = 0.0
    gammas: list[float] = []
    for no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "t_max":
                try:
                    t_max = float(parts[1])
                except (IndexError, ValueError):
                    raise ZeroListFormatError(f"bad t_max line {raw!r}", no) from None
            continue
        try:
            g = float(line)
        except ValueError:
            raise ZeroListFormatError(f"not a number: {raw!r}", no) from None
        if not math.isfinite(g) or g <= 0:
            raise ZeroListFormatError(f"zero ordinate must be positive and finite, got {line}", no)
        if gammas and not g - gammas[-1] > 1e-6:
            raise ZeroListFormatError(f"ordering violation: {line} does not exceed {gammas[-1]!r}", no)
        gammas.append(g)
    return ZeroList(chi.id, tuple(gammas), "imported", t_max)


def read_zeros(path, expect: str | None = None) -> ZeroList:
    with open(path, encoding="utf-8") as fh:
        return import_zeros(fh.read(), expect)


def write_zeros(zl: ZeroList, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(export_zeros(zl))
