"""Ritz value bounds under subspace perturbation.

Matrices are NumPy arrays (real or complex). Structured results are plain
dicts and lists with the same layout as the ritzcheck JSON output.
"""

import json

from . import _core
from ._core import (
    CapacityError,
    ContractError,
    Error,
    InputDomainError,
    NumericalFailure,
    ParseError,
    RankError,
    ReproductionFailure,
    bound_names,
    classify_invariant,
    principal_angles,
    ritz_values,
    rng_algorithm,
    spread,
)

__all__ = [
    "CapacityError", "ContractError", "Error", "InputDomainError", "NumericalFailure", "ParseError", "RankError",
    "ReproductionFailure", "bound_names", "check", "classify_invariant", "majorization", "principal_angles",
    "properties", "repro_intermediate", "repro_sharp", "ritz_values", "rng_algorithm", "run_campaign", "spread",
]


def check(a, x, y, bounds=None, tol=1e-9, inv_tol=1e-8, orthonormalize=False):
    """One report dict per bound; `bounds` is a list of names or None for all."""
    if isinstance(bounds, str):
        bounds = [bounds]
    return json.loads(_core.check_json(a, x, y, bounds, tol, inv_tol, orthonormalize))


def majorization(x, y, strong=False, tol=1e-9):
    return json.loads(_core.majorization_json(list(x), list(y), strong, tol))


def run_campaign(trials=1000, seed=0, n=(2, 12), k=(1, 6), mode="invariant-x", spectrum="mixed",
                 angles="mixed", bounds=None, tol=1e-9, inv_tol=1e-8, jobs=1, max_shrink=5):
    return json.loads(_core.campaign_json(trials, seed, tuple(n), tuple(k), mode, spectrum, angles, bounds, tol,
                                          inv_tol, jobs, max_shrink))


def repro_sharp(m, angles):
    return json.loads(_core.repro_sharp_json(m, list(angles)))


def repro_intermediate():
    return json.loads(_core.repro_intermediate_json())


def properties(seed=0, trials=1000, tol=1e-9, max_n=8):
    return json.loads(_core.properties_json(seed, trials, tol, max_n))
