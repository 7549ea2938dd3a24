"""Exact classification of finite-dimensional left octonion modules.

The submodules are layered: ``linalg`` (exact rational matrices and
subspaces), ``octonion`` (the algebra), ``module`` (modules, invariants,
decompositions, submodules), ``clifford`` (Cl7 and its representations),
``verify`` (randomized identity suites), ``io`` and ``cli``.
"""

from .linalg import Matrix, Subspace
from .module import (
    OModule,
    canonical_form,
    conjecture_check,
    decompose,
    hom_space,
    submodule_generated,
    type_of,
)
from .octonion import E, Octonion

__all__ = [
    "E",
    "Matrix",
    "OModule",
    "Octonion",
    "Subspace",
    "canonical_form",
    "conjecture_check",
    "decompose",
    "hom_space",
    "submodule_generated",
    "type_of",
]
