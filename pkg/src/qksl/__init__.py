"""Exact verification of spinor-bundle, Killing-connection and Wolf-space curvature identities."""

from .scalars import ExactMatrix, Scalar
from .rep_spaces import CheckResult

__all__ = ["ExactMatrix", "Scalar", "CheckResult"]
__version__ = "0.1.0"
