"""Curves on punctured surfaces, their complexes and coarse geometry."""

from .surface import IdealTriangulation, SurfaceSig, classify, standard_triangulation
from .curves import MultiCurve, NormalCurve, intersection_number, is_filling
from .farey import FareySlope, farey_distance

__all__ = [
    "FareySlope",
    "IdealTriangulation",
    "MultiCurve",
    "NormalCurve",
    "SurfaceSig",
    "classify",
    "farey_distance",
    "intersection_number",
    "is_filling",
    "standard_triangulation",
]

__version__ = "0.1.0"
