"""Cosine/sine superpositions built from zero ordinates.

For one L-function with zero ordinates gamma,

    S(x) = -sum cos(gamma log x),    T(x) = -sum sin(gamma log x).

Under the symmetric convention the negative ordinates -gamma' (gamma' a zero
of the conjugate character) are included too, so S and T become the real
and imaginary parts of -sum_rho x^{i gamma} over all zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .characters import DirichletCharacter, enumerate_characters, parse_character_id
from .lfunction import ZeroList

__all__ = [
    "Grid",
    "Reconstruction",
    "GridError",
    "ConventionMismatchError",
    "MissingZeroListError",
    "POSITIVE",
    "SYMMETRIC",
    "reconstruct",
    "combine",
    "dedekind_reconstruction",
    "psi_model",
    "to_csv",
]

POSITIVE = "positive_gamma"
SYMMETRIC = "symmetric"
_CONVENTIONS = (POSITIVE, SYMMETRIC)


class GridError(ValueError):
    pass


class ConventionMismatchError(ValueError):
    pass


class MissingZeroListError(KeyError):
    pass


@dataclass(frozen=True)
class Grid:
    x_min: float = 2.0
    x_max: float = 50.0
    n_points: int = 4000
    spacing: str = "log_uniform"

    def __post_init__(self):
        if not self.x_min > 0:
            raise GridError(f"x_min must be positive, got {self.x_min}")
        if not self.x_max > self.x_min:
            raise GridError("x_max must exceed x_min")
        if self.n_points < 2:
            raise GridError("n_points must be >= 2")
        if self.spacing not in ("log_uniform", "linear"):
            raise GridError(f"unknown spacing {self.spacing!r}")

    def points(self) -> np.ndarray:
        # i / (n - 1) is formed first so that refining n -> 2n - 1 reproduces
        # the old points bit for bit
        frac = np.arange(self.n_points) / (self.n_points - 1)
        if self.spacing == "linear":
            x = self.x_min + frac * (self.x_max - self.x_min)
        else:
            lo, hi = math.log(self.x_min), math.log(self.x_max)
            x = np.exp(lo + frac * (hi - lo))
        x[0], x[-1] = self.x_min, self.x_max
        return x

    def log_points(self) -> np.ndarray:
        return np.log(self.points())


@dataclass(frozen=True, eq=False)
class Reconstruction:
    grid: Grid
    s_values: np.ndarray
    t_values: np.ndarray
    character_ids: tuple[str, ...]
    zero_count: int
    convention: str = SYMMETRIC
    weighted: bool = False
    x: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.x is None:
            object.__setattr__(self, "x", self.grid.points())
        if len(self.s_values) != self.grid.n_points or len(self.t_values) != self.grid.n_points:
            raise ValueError("series length does not match the grid")

    def component(self, name: str) -> np.ndarray:
        if name == "S":
            return self.s_values
        if name == "T":
            return self.t_values
        raise ValueError(f"component must be 'S' or 'T', got {name!r}")


def _wave_sums(u: np.ndarray, gammas: np.ndarray, weights: np.ndarray | None):
    """sum_j w_j cos(g_j u), sum_j w_j sin(g_j u), accumulated in list order.

    The fixed sequential order makes each grid value independent of the rest
    of the grid and of any threading.
    """
    c = np.zeros_like(u)
    s = np.zeros_like(u)
    for j, g in enumerate(gammas):
        ph = g * u
        if weights is None:
            c += np.cos(ph)
            s += np.sin(ph)
        else:
            c += weights[j] * np.cos(ph)
            s += weights[j] * np.sin(ph)
    return c, s


def _modulus_weights(gammas: np.ndarray) -> np.ndarray:
    return 1.0 / np.hypot(0.5, gammas)


def _conjugate_list(zl: ZeroList, conjugate: ZeroList | None) -> ZeroList:
    chi = zl.character
    if chi.is_real:
        if conjugate is not None and conjugate.character != chi:
            raise ConventionMismatchError(f"{zl.character_id} is real; got conjugate list {conjugate.character_id}")
        return zl if conjugate is None else conjugate
    if conjugate is None:
        raise ConventionMismatchError(
            f"symmetric convention for complex {zl.character_id} needs the zero list of {chi.conjugate().id}"
        )
    if conjugate.character != chi.conjugate():
        raise ConventionMismatchError(
            f"conjugate of {zl.character_id} is {chi.conjugate().id}, got {conjugate.character_id}"
        )
    return conjugate


def reconstruct(
    zl: ZeroList,
    grid: Grid,
    convention: str = SYMMETRIC,
    weighted: bool = False,
    conjugate: ZeroList | None = None,
) -> Reconstruction:
    """S and T on ``grid`` from the zeros in ``zl``.

    ``conjugate`` supplies the zeros of the conjugate character, needed for
    complex characters under the symmetric convention.
    """
    if convention not in _CONVENTIONS:
        raise ValueError(f"convention must be one of {_CONVENTIONS}")
    u = grid.log_points()
    g = zl.array()
    c, s = _wave_sums(u, g, _modulus_weights(g) if weighted else None)
    count = len(g)
    if convention == SYMMETRIC:
        other = _conjugate_list(zl, conjugate)
        g2 = other.array()
        c2, s2 = _wave_sums(u, g2, _modulus_weights(g2) if weighted else None)
        # -gamma' contributes cos(gamma' u) - i sin(gamma' u)
        s_vals = -c - c2
        t_vals = s2 - s
        count += len(g2)
    else:
        s_vals, t_vals = -c, -s
    return Reconstruction(grid, s_vals, t_vals, (zl.character_id,), count, convention, weighted)


def combine(parts: Sequence[Reconstruction], coefficients: Sequence[float] | None = None) -> Reconstruction:
    """Pointwise linear combination of reconstructions on one grid."""
    if not parts:
        raise ValueError("nothing to combine")
    if coefficients is None:
        coefficients = [1.0] * len(parts)
    if len(coefficients) != len(parts):
        raise ValueError("one coefficient per part is required")
    grid = parts[0].grid
    for p in parts[1:]:
        if p.grid != grid:
            raise GridError("cannot combine reconstructions on different grids")
    s = np.zeros(grid.n_points)
    t = np.zeros(grid.n_points)
    for p, k in zip(parts, coefficients):
        if k == 1.0:
            s = s + p.s_values
            t = t + p.t_values
        else:
            s = s + k * p.s_values
            t = t + k * p.t_values
    ids = tuple(i for p in parts for i in p.character_ids)
    conv = parts[0].convention if all(p.convention == parts[0].convention for p in parts) else "mixed"
    return Reconstruction(
        grid,
        s,
        t,
        ids,
        sum(p.zero_count for p in parts),
        conv,
        any(p.weighted for p in parts),
        parts[0].x,
    )


def _factor_characters(q: int) -> list[DirichletCharacter]:
    """Zeta followed by the primitive nontrivial characters mod q."""
    if q == 1:
        return [DirichletCharacter(1, 1)]
    return [DirichletCharacter(1, 1)] + [c for c in enumerate_characters(q) if c.is_primitive]


def dedekind_reconstruction(q: int, zero_lists: Mapping[str, ZeroList], grid: Grid) -> Reconstruction:
    """Sum of the symmetric reconstructions of zeta and every primitive character mod q.

    Each complex character is paired with its conjugate so the sine parts
    cancel exactly.
    """
    chars = _factor_characters(q)
    for c in chars:
        if c.id not in zero_lists:
            raise MissingZeroListError(f"no zero list for character {c.id}")
    parts = []
    for c in chars:
        conj = None if c.is_real else zero_lists[c.conjugate().id]
        parts.append(reconstruct(zero_lists[c.id], grid, SYMMETRIC, False, conj))
    # add each complex pair before the running sum so their sines cancel bit for bit
    ordered: list[Reconstruction] = []
    seen = set()
    for c, part in zip(chars, parts):
        if c.id in seen:
            continue
        seen.add(c.id)
        if c.is_real:
            ordered.append(part)
        else:
            partner = parts[chars.index(c.conjugate())]
            seen.add(c.conjugate().id)
            ordered.append(combine([part, partner]))
    return combine(ordered)


def psi_model(
    chi: DirichletCharacter | str,
    zl: ZeroList,
    grid: Grid,
    conjugate: ZeroList | None = None,
) -> Reconstruction:
    """-sum_rho x^rho / rho over the zeros (both signs of gamma).

    S is the real part and T the imaginary part. No main term and no
    trivial-zero terms.
    """
    if isinstance(chi, str):
        chi = parse_character_id(chi)
    if zl.character != chi:
        raise ConventionMismatchError(f"zero list is for {zl.character_id}, not {chi.id}")
    other = _conjugate_list(zl, conjugate)
    u = grid.log_points()
    env = np.exp(0.5 * u)
    re = np.zeros_like(u)
    im = np.zeros_like(u)
    # rho = 1/2 + i g, and the reflected zeros 1/2 - i g' from the conjugate
    rhos = [complex(0.5, g) for g in zl.gammas] + [complex(0.5, -g) for g in other.gammas]
    for rho in rhos:
        inv = 1 / rho
        ph = rho.imag * u
        c, s = np.cos(ph), np.sin(ph)
        re += c * inv.real - s * inv.imag
        im += s * inv.real + c * inv.imag
    return Reconstruction(grid, -env * re, -env * im, (chi.id,), len(rhos), SYMMETRIC, True)


def to_csv(parts: Sequence[Reconstruction] | Reconstruction, labels: Sequence[str] | None = None) -> str:
    """CSV text with a '#' header; columns x,S,T (suffixed per part when several)."""
    if isinstance(parts, Reconstruction):
        parts = [parts]
    grid = parts[0].grid
    for p in parts[1:]:
        if p.grid != grid:
            raise GridError("CSV parts must share a grid")
    header = []
    for i, p in enumerate(parts):
        tag = f"[{labels[i]}]" if labels else ""
        header.append(
            f"# series{tag} characters={','.join(p.character_ids)} zero_count={p.zero_count} "
            f"convention={p.convention} weighted={str(p.weighted).lower()}"
        )
    if len(parts) == 1:
        cols = ["x", "S", "T"]
    else:
        names = labels or [",".join(p.character_ids) for p in parts]
        cols = ["x"] + [f"{c}[{n}]" for n in names for c in ("S", "T")]
    rows = [",".join(cols)]
    x = parts[0].x
    for i in range(grid.n_points):
        vals = [f"{x[i]:.12g}"]
        for p in parts:
            vals.append(f"{p.s_values[i]:.12g}")
            vals.append(f"{p.t_values[i]:.12g}")
        rows.append(",".join(vals))
    return "\n".join(header + rows) + "\n"
