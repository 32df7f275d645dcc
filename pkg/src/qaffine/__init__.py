"""Exact Schubert calculus for flag varieties and the affine Grassmannian."""

from .cartan import AffineRoot, RootSystem, build
from .weyl import AffineElt, WeylElt

__all__ = ["AffineElt", "AffineRoot", "RootSystem", "WeylElt", "build"]
__version__ = "0.1.0"
