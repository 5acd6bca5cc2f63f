"""Operator averaging expansions for perturbed quantum Hamiltonians."""

from ._core import (
    Error,
    Expansion,
    InputError,
    InvariantError,
    Model,
    Report,
    anharmonic,
    exact_eigenvalues,
    expand,
    henon_heiles,
    load_model,
    parse_model,
    run_compare,
    run_example,
    run_verify,
)

__all__ = [
    "Error",
    "Expansion",
    "InputError",
    "InvariantError",
    "Model",
    "Report",
    "anharmonic",
    "exact_eigenvalues",
    "expand",
    "henon_heiles",
    "load_model",
    "parse_model",
    "run_compare",
    "run_example",
    "run_verify",
]
