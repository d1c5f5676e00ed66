"""
Pure library: free modules, coalgebras, Hopf algebras and the shipped instances.
"""
from .coalgebra import CoalgebraStructure
from .expression import parse_expression, render_element, render_tensor
from .freemod import BasisKey, Element, Tensor
from .hopf import BialgebraInstance, EndoMap
from .instances import build_instance

__all__ = [
    "BasisKey",
    "BialgebraInstance",
    "CoalgebraStructure",
    "Element",
    "EndoMap",
    "Tensor",
    "build_instance",
    "parse_expression",
    "render_element",
    "render_tensor",
]
