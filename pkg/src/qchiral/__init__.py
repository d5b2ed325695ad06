"""Exact rewriting engine for Manin quantum matrix superalgebras, with
verification suites for the quantum super Grassmannian and chiral
Minkowski superspace built on it."""

__version__ = "0.1.0"

from .scalar import Q, QINV, Scalar  # noqa: E402
from .algebra import Element, FreeAlgebra  # noqa: E402
from .manin import AlgebraShape, ManinAlgebra, manin_algebra, normal_form, straighten_pair  # noqa: E402
from .localize import LocalizedAlgebra  # noqa: E402
from .tensor import GenMap, convolve, coproduct, counit, tensor, verify_morphism  # noqa: E402
from .textio import format_element, parse  # noqa: E402

__all__ = [
    "__version__",
    "Q",
    "QINV",
    "Scalar",
    "Element",
    "FreeAlgebra",
    "AlgebraShape",
    "ManinAlgebra",
    "manin_algebra",
    "normal_form",
    "straighten_pair",
    "LocalizedAlgebra",
    "GenMap",
    "convolve",
    "coproduct",
    "counit",
    "tensor",
    "verify_morphism",
    "format_element",
    "parse",
]
