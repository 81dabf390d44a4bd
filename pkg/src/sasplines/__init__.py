"""Dimensions of semialgebraic spline spaces over curved planar meshes."""

__version__ = "0.1.0"
