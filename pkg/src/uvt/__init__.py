"""Exact computation in two-parameter quantum groups U_{v,t} of finite symmetric type."""

from .algebra import QuantumGroup, UElement, render_u, star_relations
from .cartan import CartanDatum, CartanError, from_type, type_a
from .centre import (
    CartanElement,
    CentreError,
    InvariantViolation,
    casimir,
    criterion,
    hc_xi,
    is_central,
    z_lambda,
)
from .freealg import FreeAlgebra, FreeElement
from .pairing import Pairing, PairingError
from .parser import ParseError, parse_element, parse_scalar, parse_weight
from .repmod import WeightModule, simple_module, verma_truncated
from .scalars import RationalFunction, render

__all__ = [
    "CartanDatum",
    "CartanElement",
    "CartanError",
    "CentreError",
    "FreeAlgebra",
    "FreeElement",
    "InvariantViolation",
    "Pairing",
    "PairingError",
    "ParseError",
    "QuantumGroup",
    "RationalFunction",
    "UElement",
    "WeightModule",
    "casimir",
    "criterion",
    "from_type",
    "hc_xi",
    "is_central",
    "parse_element",
    "parse_scalar",
    "parse_weight",
    "render",
    "render_u",
    "simple_module",
    "star_relations",
    "type_a",
    "verma_truncated",
    "z_lambda",
]
