"""Prime-power interference patterns reconstructed from zeros of Dirichlet L-functions."""

from .analysis import (
    SeparationReport,
    dedekind_survivor_check,
    detect_peaks,
    psi_chi_oracle,
    separation_report,
    von_mangoldt,
)
from .characters import DirichletCharacter, enumerate_characters, gauss_sum
from .lfunction import EvalParams, ZeroList, find_zeros, hardy_z, l_value, read_zeros, write_zeros
from .reconstruction import Grid, Reconstruction, dedekind_reconstruction, reconstruct

__all__ = [
    "DirichletCharacter",
    "enumerate_characters",
    "gauss_sum",
    "EvalParams",
    "ZeroList",
    "find_zeros",
    "hardy_z",
    "l_value",
    "read_zeros",
    "write_zeros",
    "Grid",
    "Reconstruction",
    "reconstruct",
    "dedekind_reconstruction",
    "SeparationReport",
    "separation_report",
    "dedekind_survivor_check",
    "detect_peaks",
    "psi_chi_oracle",
    "von_mangoldt",
]
