"""Exact tools for the tensor product semigroup Tens(G) of a complex reductive group."""
from .rootsys import build_root_system, Weight, RootSystemData

__all__ = ["build_root_system", "Weight", "RootSystemData"]
