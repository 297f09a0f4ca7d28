"""Exact counting of k-gons and k-holes in small planar point sets."""

__version__ = "0.1.0"

from .census import GonClass, GonCount, InvariantViolation, count_gons, count_holes, crossing_number  # noqa: E402
from .geom import GeometryError, Point, PointSet, Polygon  # noqa: E402

__all__ = [
    "__version__", "GeometryError", "GonClass", "GonCount", "InvariantViolation", "Point", "PointSet",
    "Polygon", "count_gons", "count_holes", "crossing_number",
]
