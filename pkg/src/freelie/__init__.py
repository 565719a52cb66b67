"""Exact free Lie algebra computations over Z and Q."""

from .core import (
    AssocPoly,
    LieAlgebra,
    LieElement,
    bracket,
    element_from_json,
    element_to_json,
    eval_assoc,
    homogeneous_decomposition,
    normal_form,
    proportional,
)
from .errors import FreeLieError
from .expr import parse_expr, print_expr
from .words import (
    Alphabet,
    BasisElement,
    LyndonWord,
    lyndon_words,
    standard_factorization,
    witt_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AssocPoly",
    "BasisElement",
    "FreeLieError",
    "LieAlgebra",
    "LieElement",
    "LyndonWord",
    "bracket",
    "element_from_json",
    "element_to_json",
    "eval_assoc",
    "homogeneous_decomposition",
    "lyndon_words",
    "normal_form",
    "parse_expr",
    "print_expr",
    "proportional",
    "standard_factorization",
    "witt_dimension",
]
