"""Travelling waves of a discrete chain with piecewise-quadratic on-site forcing.

Thin wrapper over the compiled extension module.
"""

from ._core import (  # noqa: F401
    FkwaveError,
    Grid,
    Params,
    SolverConfig,
    Stage1Solution,
    TwoTransSolution,
    WaveSolution,
    acceptance_names,
    blend_step,
    dispersion,
    even_carrier,
    front_profile,
    inversion_constants,
    kernel_roots,
    mollified_sign,
    odd_carrier,
    run_acceptance,
    simulate,
    solve_stage1,
    solve_stage2,
    solve_two_transition,
)

__all__ = [
    "FkwaveError",
    "Grid",
    "Params",
    "SolverConfig",
    "Stage1Solution",
    "TwoTransSolution",
    "WaveSolution",
    "acceptance_names",
    "blend_step",
    "dispersion",
    "even_carrier",
    "front_profile",
    "inversion_constants",
    "kernel_roots",
    "mollified_sign",
    "odd_carrier",
    "run_acceptance",
    "simulate",
    "solve_stage1",
    "solve_stage2",
    "solve_two_transition",
]
