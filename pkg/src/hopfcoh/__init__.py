"""Exact cohomology of finite flat group schemes.

A group scheme is carried around as its coordinate Hopf algebra, given by
structure constants over Z, Q, F_p or Z/n.  The subpackages split along the
pipeline: exact_linalg (Smith form, kernels, presentations), hopf_core
(axioms, duals, serialization), schemes (constructors and classification
helpers), rep (comodules, induction), cohomology (cochain complexes, cup
products), integrals (Frobenius structure, traces, torsion certificates).
"""

from .exact_linalg import (
    ZZ,
    QQ,
    GF,
    Zmod,
    Matrix,
    ModulePresentation,
    RingSpec,
)

__version__ = "0.1.0"

__all__ = [
    "ZZ",
    "QQ",
    "GF",
    "Zmod",
    "Matrix",
    "ModulePresentation",
    "RingSpec",
    "__version__",
]
