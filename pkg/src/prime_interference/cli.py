"""Command line front end.

    prime-interference characters --modulus 6
    prime-interference zeros --modulus 4 --label 3 --tmax 100 --out z4.txt
    prime-interference reconstruct --zeros-file z4.txt --format csv
    prime-interference analyze --modulus 5 --label 2
    prime-interference dedekind --modulus 5 --format report
    prime-interference figure 5 --tmax 100 --format csv

Precedence: flags, then PI_TMAX / PI_POINTS, then built-in defaults.
Exit status 0 on success, 1 on a pipeline or verification failure, 2 on bad
flags.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from . import analysis, characters, lfunction, plotting, reconstruction
from .analysis import SeparationReport
from .characters import DirichletCharacter
from .lfunction import EvalParams, ZeroList
from .reconstruction import Grid, Reconstruction

COMMANDS = ("characters", "zeros", "reconstruct", "analyze", "dedekind", "figure")
DEFAULT_TMAX = 100.0
DEFAULT_POINTS = 4000


class PipelineError(Exception):
    def __init__(self, module: str, message: str):
        self.module = module
        super().__init__(f"{module}: {message}")


@dataclass
class RunConfig:
    command: str
    modulus: int | None = None
    character_label: int | None = None
    tmax: float = DEFAULT_TMAX
    count: int | None = None
    zeros_files: list[str] = field(default_factory=list)
    x_min: float = 2.0
    x_max: float = 50.0
    points: int = DEFAULT_POINTS
    convention: str = reconstruction.SYMMETRIC
    weighted: bool = False
    prominence: float | None = None
    output_path: str | None = None
    format: str | None = None
    figure: int | None = None
    scan_step: float = 0.05
    tol: float = 1e-9

    @property
    def grid(self) -> Grid:
        return Grid(self.x_min, self.x_max, self.points)

    @property
    def params(self) -> EvalParams:
        return EvalParams(bisection_tol=self.tol, scan_step=self.scan_step)


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise PipelineError("cli", f"environment variable {name}={raw!r} is not a number") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prime-interference",
        description="Oscillatory reconstructions from zeros of Dirichlet L-functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, modulus=True, label=True, zeros=True, grid=True, model=True):
        if modulus:
            p.add_argument("--modulus", type=int)
        if label:
            p.add_argument("--label", type=int, help="Conrey label of the character")
        if zeros:
            p.add_argument("--tmax", type=float, help="zero scan ceiling (env PI_TMAX, default 100)")
            p.add_argument("--count", type=int, help="use only the first COUNT zeros (raises the scan ceiling if needed)")
            p.add_argument("--scan-step", type=float, default=0.05)
            p.add_argument("--tol", type=float, default=1e-9)
        if grid:
            p.add_argument("--xmin", type=float, default=2.0)
            p.add_argument("--xmax", type=float, default=50.0)
            p.add_argument("--points", type=int, help="grid points (env PI_POINTS, default 4000)")
            if model:
                p.add_argument("--convention", choices=("positive", "symmetric"), default="symmetric")
                p.add_argument("--weighted", action="store_true", help="weight each zero by 1/|rho|")
            p.add_argument("--prominence", type=float, help="peak prominence as a fraction of max |S|")
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("characters", help="list the characters modulo q")
    common(p, label=False, zeros=False, grid=False)
    p = sub.add_parser("zeros", help="compute zeros and write a zero-list file")
    common(p, grid=False)
    p = sub.add_parser("reconstruct", help="emit S and T for one character")
    common(p)
    p.add_argument("--zeros-file", action="append", default=[], help="zero-list file; repeat for the conjugate list")
    p.add_argument("--format", choices=("csv", "svg", "report"), default="csv")
    p = sub.add_parser("analyze", help="peak/sign separation report for one character")
    common(p)
    p.add_argument("--zeros-file", action="append", default=[])
    p.add_argument("--format", choices=("csv", "svg", "report"), default="report")
    p = sub.add_parser("dedekind", help="combine zeta and all primitive characters mod q")
    common(p, label=False, model=False)
    p.add_argument("--zeros-file", action="append", default=[])
    p.add_argument("--format", choices=("csv", "svg", "report"), default="report")
    p = sub.add_parser("figure", help="data and plot for figure 1-5, with verification")
    p.add_argument("figure", type=int, choices=range(1, 6), metavar="N")
    common(p, modulus=False, label=False, model=False)
    p.add_argument("--format", choices=("csv", "svg", "report"), default="csv")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    cfg.modulus = getattr(ns, "modulus", None)
    cfg.character_label = getattr(ns, "label", None)
    tmax = getattr(ns, "tmax", None)
    cfg.tmax = tmax if tmax is not None else _env_float("PI_TMAX", DEFAULT_TMAX)
    cfg.count = getattr(ns, "count", None)
    cfg.zeros_files = list(getattr(ns, "zeros_file", []) or [])
    cfg.x_min = getattr(ns, "xmin", 2.0)
    cfg.x_max = getattr(ns, "xmax", 50.0)
    pts = getattr(ns, "points", None)
    cfg.points = pts if pts is not None else int(_env_float("PI_POINTS", DEFAULT_POINTS))
    conv = getattr(ns, "convention", "symmetric")
    cfg.convention = reconstruction.POSITIVE if conv == "positive" else reconstruction.SYMMETRIC
    cfg.weighted = getattr(ns, "weighted", False)
    cfg.prominence = getattr(ns, "prominence", None)
    cfg.output_path = ns.out
    cfg.format = getattr(ns, "format", None)
    cfg.figure = getattr(ns, "figure", None)
    cfg.scan_step = getattr(ns, "scan_step", 0.05)
    cfg.tol = getattr(ns, "tol", 1e-9)
    return cfg


# --- pipeline pieces -----------------------------------------------------------


def _character(cfg: RunConfig) -> DirichletCharacter:
    if cfg.modulus is None or cfg.character_label is None:
        raise PipelineError("cli", "--modulus and --label are required (or pass --zeros-file)")
    try:
        return DirichletCharacter(cfg.modulus, cfg.character_label)
    except ValueError as exc:
        raise PipelineError("characters", str(exc)) from None


def _primitive(chi: DirichletCharacter, notes: list[str]) -> DirichletCharacter:
    if chi.is_primitive:
        return chi
    base = chi.primitive_inducer()
    notes.append(f"{chi.id} is imprimitive; using the zeros of its inducing character {base.id}")
    return base


def _height_for_count(chi: DirichletCharacter, count: int, tmax: float) -> float:
    t = tmax
    while lfunction.expected_zero_count(chi, t) < count + 3 and t < lfunction.MAX_T:
        t = min(lfunction.MAX_T, t + 10.0)
    return t


class ZeroSource:
    """Zero lists from files or computed on demand, cached per character."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.cache: dict[str, ZeroList] = {}
        self.file_ids: list[str] = []
        for path in cfg.zeros_files:
            try:
                zl = lfunction.read_zeros(path)
            except (OSError, ValueError) as exc:
                raise PipelineError("lfunction", f"{path}: {exc}") from None
            self.cache[zl.character_id] = zl
            self.file_ids.append(zl.character_id)

    def get(self, chi: DirichletCharacter) -> ZeroList:
        zl = self.cache.get(chi.id)
        if zl is None:
            if self.cfg.zeros_files:
                raise PipelineError(
                    "lfunction", f"no zero list for {chi.id} among the given files (pass --zeros-file for it)"
                )
            t = self.cfg.tmax
            if self.cfg.count is not None:
                t = _height_for_count(chi, self.cfg.count, t)
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("error", lfunction.MissedZeroWarning)
                    zl = lfunction.find_zeros(chi, t, self.cfg.params)
            except (ValueError, ArithmeticError, lfunction.MissedZeroWarning) as exc:
                raise PipelineError("lfunction", str(exc)) from None
            self.cache[chi.id] = zl
        if self.cfg.count is not None:
            if len(zl) < self.cfg.count:
                raise PipelineError("lfunction", f"{chi.id}: only {len(zl)} zeros available, {self.cfg.count} requested")
            zl = zl.truncate(count=self.cfg.count)
        return zl


def _reconstruct(chi: DirichletCharacter, zeros: ZeroSource, cfg: RunConfig) -> Reconstruction:
    zl = zeros.get(chi)
    conj = None
    if cfg.convention == reconstruction.SYMMETRIC and not chi.is_real:
        conj = zeros.get(chi.conjugate())
    try:
        return reconstruction.reconstruct(zl, cfg.grid, cfg.convention, cfg.weighted, conj)
    except ValueError as exc:
        raise PipelineError("reconstruction", str(exc)) from None


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _prominence(cfg: RunConfig, default: float) -> float:
    return default if cfg.prominence is None else cfg.prominence


# --- commands -----------------------------------------------------------------------


def characters_report(q: int) -> str:
    chars = characters.enumerate_characters(q)
    lines = [f"Dirichlet characters modulo {q}: {len(chars)}"]
    lines.append("id        order  parity  real  primitive  conductor  induced_from")
    for c in chars:
        ind = "-" if c.is_primitive else c.primitive_inducer().id
        lines.append(
            f"{c.id:<9} {c.order:>5}  {'odd' if c.parity else 'even':>6}  {'yes' if c.is_real else 'no':>4}  "
            f"{'yes' if c.is_primitive else 'no':>9}  {c.conductor:>9}  {ind}"
        )
    if q <= 60:
        residues = [r for r in range(1, max(q, 2)) if math.gcd(r, q) == 1]
        lines.append("")
        lines.append("values as turns k/m (chi(n) = exp(2 pi i k/m)):")
        lines.append("id        " + " ".join(f"{r:>6}" for r in residues))
        for c in chars:
            vals = " ".join(f"{str(c(r).turn):>6}" for r in residues)
            lines.append(f"{c.id:<9} {vals}")
    nontrivial = [c for c in chars if not c.is_principal]
    prim = [c for c in nontrivial if c.is_primitive]
    lines.append("")
    if q > 1 and not prim:
        lines.append(f"no primitive nontrivial character modulo {q}")
    for c in nontrivial:
        if not c.is_primitive:
            lines.append(
                f"{c.id} is imprimitive, induced from modulus {c.conductor} ({c.primitive_inducer().id}); "
                "it adds no new oscillations"
            )
    return "\n".join(lines) + "\n"


def _cmd_characters(cfg: RunConfig) -> int:
    if cfg.modulus is None or cfg.modulus < 1:
        raise PipelineError("cli", "--modulus must be a positive integer")
    _write(cfg, characters_report(cfg.modulus))
    return 0


def _cmd_zeros(cfg: RunConfig) -> int:
    notes: list[str] = []
    chi = _primitive(_character(cfg), notes)
    zl = ZeroSource(cfg).get(chi)
    for n in notes:
        print(n, file=sys.stderr)
    _write(cfg, lfunction.export_zeros(zl))
    return 0


def _target(cfg: RunConfig, zeros: ZeroSource, notes: list[str]) -> DirichletCharacter:
    if cfg.modulus is None and zeros.file_ids:
        return zeros.cache[zeros.file_ids[0]].character
    return _primitive(_character(cfg), notes)


def _cmd_reconstruct(cfg: RunConfig) -> int:
    zeros = ZeroSource(cfg)
    notes: list[str] = []
    chi = _target(cfg, zeros, notes)
    R = _reconstruct(chi, zeros, cfg)
    for n in notes:
        print(n, file=sys.stderr)
    if cfg.format == "svg":
        peaks = analysis.detect_peaks(R, _prominence(cfg, analysis.DEFAULT_PROMINENCE))
        _write(cfg, plotting.emit_svg(R, peaks, plotting.SvgStyle(title=f"reconstruction for {chi.id}")))
    elif cfg.format == "report":
        _write(cfg, _summary(R))
    else:
        _write(cfg, reconstruction.to_csv(R))
    return 0


def _summary(R: Reconstruction) -> str:
    return (
        f"characters={','.join(R.character_ids)}\nzero_count={R.zero_count}\nconvention={R.convention}\n"
        f"weighted={str(R.weighted).lower()}\nmax_abs_S={np.max(np.abs(R.s_values)):.6g}\n"
        f"max_abs_T={np.max(np.abs(R.t_values)):.6e}\n"
    )


def _cmd_analyze(cfg: RunConfig) -> int:
    zeros = ZeroSource(cfg)
    notes: list[str] = []
    chi = _target(cfg, zeros, notes)
    if cfg.convention != reconstruction.SYMMETRIC:
        raise PipelineError("analysis", "separation reports need the symmetric convention")
    R = _reconstruct(chi, zeros, cfg)
    rep = analysis.separation_report(R, chi, _prominence(cfg, analysis.DEFAULT_PROMINENCE))
    for n in notes:
        print(n, file=sys.stderr)
    if cfg.format == "csv":
        _write(cfg, reconstruction.to_csv(R))
    elif cfg.format == "svg":
        peaks = analysis.detect_peaks(R, _prominence(cfg, analysis.DEFAULT_PROMINENCE))
        _write(cfg, plotting.emit_svg(R, peaks, plotting.SvgStyle(title=f"reconstruction for {chi.id}")))
    else:
        _write(cfg, rep.to_table() + "\n" + rep.to_keyvalue())
    return _verdict([rep])


def dedekind_lists(q: int, zeros: ZeroSource) -> dict[str, ZeroList]:
    chars = [DirichletCharacter(1, 1)] + [c for c in characters.enumerate_characters(q) if c.is_primitive and q > 1]
    return {c.id: zeros.get(c) for c in chars}


def _cmd_dedekind(cfg: RunConfig) -> int:
    q = cfg.modulus
    if q is None or q < 1:
        raise PipelineError("cli", "--modulus is required")
    zeros = ZeroSource(cfg)
    R = reconstruction.dedekind_reconstruction(q, dedekind_lists(q, zeros), cfg.grid)
    rep = analysis.dedekind_survivor_check(R, q, _prominence(cfg, analysis.SURVIVOR_PROMINENCE))
    if cfg.format == "csv":
        _write(cfg, reconstruction.to_csv(R))
    elif cfg.format == "svg":
        peaks = analysis.detect_peaks(R, _prominence(cfg, analysis.SURVIVOR_PROMINENCE), modulus=q)
        _write(cfg, plotting.emit_svg(R, peaks, plotting.SvgStyle(title=f"combined reconstruction, all characters mod {q}")))
    else:
        _write(cfg, rep.to_table() + "\n" + rep.to_keyvalue())
    return _verdict([rep])


def _verdict(reports: list[SeparationReport], extra: list[str] = ()) -> int:
    bad = [r for r in reports if not r.ok]
    for r in bad:
        print(f"analysis: verification failed for {r.character_id}", file=sys.stderr)
        for v in r.violations:
            print(f"  {v.component}-peak at x={v.x:.6g} attributed to {v.nearest_pp} has amplitude {v.amplitude:.4g}", file=sys.stderr)
        for f in r.failures:
            print(f"  {f}", file=sys.stderr)
    for e in extra:
        print(f"analysis: {e}", file=sys.stderr)
    return 1 if bad or extra else 0


def _real_check(R: Reconstruction, problems: list[str], tol: float = 1e-12) -> None:
    m = float(np.max(np.abs(R.t_values)))
    if not m < tol:
        problems.append(f"sine series of real {','.join(R.character_ids)} reaches {m:.3e}")


def figure_data(cfg: RunConfig) -> tuple[list[Reconstruction], list[str], list[SeparationReport], list[str], str]:
    """Reconstructions, column labels, verification reports, extra problems, title."""
    # figures always use the plain symmetric sums
    cfg = replace(cfg, convention=reconstruction.SYMMETRIC, weighted=False)
    zeros = ZeroSource(cfg)
    n = cfg.figure
    prom = _prominence(cfg, analysis.DEFAULT_PROMINENCE)
    problems: list[str] = []
    if n in (1, 2, 3):
        chi = {1: DirichletCharacter(3, 2), 2: DirichletCharacter(4, 3), 3: DirichletCharacter(5, 4)}[n]
        R = _reconstruct(chi, zeros, cfg)
        _real_check(R, problems)
        reps = [analysis.separation_report(R, chi, prom)]
        parts, labels = [R], [chi.id]
        if n == 1:
            Z = _reconstruct(DirichletCharacter(1, 1), zeros, cfg)
            _real_check(Z, problems)
            parts.append(Z)
            labels.append("1.1")
        titles = {
            1: "nontrivial character mod 3 against zeta",
            2: "nontrivial character mod 4",
            3: "quadratic character mod 5",
        }
        return parts, labels, reps, problems, titles[n]
    if n == 4:
        c1, c3 = DirichletCharacter(5, 2), DirichletCharacter(5, 3)
        R1, R3 = _reconstruct(c1, zeros, cfg), _reconstruct(c3, zeros, cfg)
        reps = [analysis.separation_report(R1, c1, prom), analysis.separation_report(R3, c3, prom)]
        res = analysis.cancellation_residual(R1, R3)
        if not res < 1e-10:
            problems.append(f"imaginary parts of 5.2 and 5.3 do not cancel: residual {res:.3e}")
        return [R1, R3], ["5.2", "5.3"], reps, problems, "complex conjugate characters mod 5"
    R = reconstruction.dedekind_reconstruction(5, dedekind_lists(5, zeros), cfg.grid)
    rep = analysis.dedekind_survivor_check(R, 5, _prominence(cfg, analysis.SURVIVOR_PROMINENCE))
    return [R], ["dedekind.5"], [rep], problems, "all characters mod 5 combined"


def _cmd_figure(cfg: RunConfig) -> int:
    parts, labels, reps, problems, title = figure_data(cfg)
    n = cfg.figure
    if cfg.format == "csv":
        _write(cfg, reconstruction.to_csv(parts, labels if len(parts) > 1 else None))
    elif cfg.format == "svg":
        _write(cfg, figure_svg(n, parts, labels, title))
    else:
        _write(cfg, "".join(r.to_table() + "\n" for r in reps))
    return _verdict(reports=reps, extra=problems)


def figure_svg(n: int, parts: list[Reconstruction], labels: list[str], title: str) -> str:
    style = plotting.SvgStyle(title=f"Figure {n}: {title}")
    S, T = plotting.S_COLOR, plotting.T_COLOR
    if n == 1:
        R, Z = parts
        gl = [p.nearest_pp for p in analysis.detect_peaks(R) if p.nearest_pp]
        panel = plotting.Panel(R.x, [plotting.Series("S [3.2]", R.s_values, S), plotting.Series("S [1.1] zeta", Z.s_values, T)], gl)
        return plotting.render_panels([panel], style)
    if n == 4:
        R1, R3 = parts
        gl = [p.nearest_pp for p in analysis.detect_peaks(R1) if p.nearest_pp]
        gl += [p.nearest_pp for p in analysis.detect_peaks(R1, component="T") if p.nearest_pp]
        a = plotting.Panel(
            R1.x,
            [plotting.Series("S [5.2]", R1.s_values, S), plotting.Series("S [5.3]", R3.s_values, T, dashed=True)],
            gl,
            "(a) real parts",
        )
        b = plotting.Panel(
            R1.x,
            [plotting.Series("T [5.2]", R1.t_values, S), plotting.Series("T [5.3]", R3.t_values, T)],
            gl,
            "(b) imaginary parts",
        )
        return plotting.render_panels([a, b], style)
    R = parts[0]
    if n == 5:
        # mark only the split and ramified classes
        peaks = analysis.detect_peaks(R, analysis.SURVIVOR_PROMINENCE, modulus=5)
        peaks = [p for p in peaks if p.residue_class in (0, 1)]
    else:
        peaks = analysis.detect_peaks(R)
    return plotting.emit_svg(R, peaks, style)


_DISPATCH = {
    "characters": _cmd_characters,
    "zeros": _cmd_zeros,
    "reconstruct": _cmd_reconstruct,
    "analyze": _cmd_analyze,
    "dedekind": _cmd_dedekind,
    "figure": _cmd_figure,
}


def run(cfg: RunConfig) -> int:
    return _DISPATCH[cfg.command](cfg)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, KeyError) as exc:
        mod = type(exc).__module__.rsplit(".", 1)[-1]
        print(f"error: {mod}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
