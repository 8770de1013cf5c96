"""Exact computations for quantum Grassmann superalgebras at roots of unity."""

from .scalars import CycNum, RootSpec, q_binom
from .superindex import Shape, SuperTuple

__all__ = ["CycNum", "RootSpec", "Shape", "SuperTuple", "q_binom"]
__version__ = "0.1.0"
