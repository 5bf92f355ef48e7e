"""Swap and singlet-projector entanglement witnesses for spin-s systems.

Exact operator polynomials in the two-site dot product, 6-j based
negativity for rotation-invariant states, brute-force oracles, and a
family of one-sided entanglement witnesses, served over a CLI and an
HTTP API.
"""

__version__ = "0.1.0"

from .numerics import DensityMatrix, ValidationError
from .spin_ops import SpinLabel

__all__ = ["DensityMatrix", "SpinLabel", "ValidationError", "__version__"]
