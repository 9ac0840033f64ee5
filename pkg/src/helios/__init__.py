"""Biorthogonal multiwavelet Galerkin solver for 2D Helmholtz cavity scattering."""

from .assembly import AssembledSystem, assemble, assemble_fem, build_R_S, gram_1d
from .catalog import FAMILIES, get_family
from .experiments import (ExperimentConfig, ExperimentReport, manufactured_data,
                          relative_error, run_experiment, scattering_data)
from .interval_basis import build_level_basis, refinement_matrices
from .krylov import direct_solve, extreme_singular_values, gmres

__all__ = [
    "AssembledSystem", "ExperimentConfig", "ExperimentReport", "FAMILIES", "assemble",
    "assemble_fem", "build_R_S", "build_level_basis", "direct_solve",
    "extreme_singular_values", "get_family", "gmres", "gram_1d", "manufactured_data",
    "refinement_matrices", "relative_error", "run_experiment", "scattering_data",
]
