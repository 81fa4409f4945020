"""Chord length and point distance distributions of right triangles."""
from .chord import chord_cdf, chord_pdf
from .distance import distance_cdf, distance_pdf, mean_distance
from .geometry import Line, Point2, RectangleBox, RightTriangle, chord_length, width
from .piecewise import Branch, PiecewiseEval
from .rectangle import cross_cdf, cross_pdf, rect_distance_cdf, rect_distance_pdf

__all__ = [
    "Branch", "Line", "PiecewiseEval", "Point2", "RectangleBox", "RightTriangle",
    "chord_cdf", "chord_length", "chord_pdf", "cross_cdf", "cross_pdf", "distance_cdf",
    "distance_pdf", "mean_distance", "rect_distance_cdf", "rect_distance_pdf", "width",
]
__version__ = "0.1.0"
