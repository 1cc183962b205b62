"""Exact computations in the Verlinde category Ver_p.

Objects are multiplicity vectors over the simples L_1..L_{p-1}; morphisms are
stored by isotypic blocks over F_p.  On top of this sit Lie algebras, Hopf
algebras, dual Harish-Chandra pairs and the A-points of GL(X).
"""

__version__ = "0.1.0"

from .verlinde_core import (  # noqa: E402
    VerMorphism,
    VerObject,
    ext_power,
    fusion,
    fusion_table,
    simple,
    sym_power,
    tensor,
    tensor_obj,
    unit,
)

__all__ = [
    "VerMorphism",
    "VerObject",
    "ext_power",
    "fusion",
    "fusion_table",
    "simple",
    "sym_power",
    "tensor",
    "tensor_obj",
    "unit",
    "__version__",
]
