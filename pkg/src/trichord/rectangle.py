"""Distance distribution in an a x b rectangle (Ghosh) and between the two
right triangles obtained by cutting it along a diagonal.

A random pair in the rectangle lies in the same half with probability 1/2,
so ``g_R = (g + g2) / 2``, i.e. ``g2 = 2 g_R - g`` and ``G2 = 2 G_R - G``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .distance import (clamp_negative, distance_cdf_values, distance_pdf_values,
                       n_kernel_L2, star_kernel_L2)
from .geometry import RectangleBox, RightTriangle
from .piecewise import Branch, PiecewiseEval, locate


def rect_star(rect: RectangleBox, segment: int, t):
    """``H*_{R,k}(t)``."""
    a, b = rect.a, rect.b
    t = np.asarray(t, dtype=float)
    if segment == 1:
        return math.pi * rect.area_r - rect.perim_r * t + t * t
    if segment == 2:
        return -a * a - 2 * b * t + 2 * b * star_kernel_L2(t, a)
    if segment == 3:
        return (-(math.pi * rect.area_r + rect.c ** 2) - t * t
                + 2 * b * star_kernel_L2(t, a) + 2 * a * star_kernel_L2(t, b))
    raise ValueError(f"segment must be 1..3, got {segment!r}")


def rect_n(rect: RectangleBox, segment: int, t):
    """``Hn_{R,k}(t)``, a primitive of ``t * H*_{R,k}(t)``."""
    a, b = rect.a, rect.b
    t = np.asarray(t, dtype=float)
    if segment == 1:
        return math.pi * rect.area_r * t * t / 2 - rect.perim_r * t ** 3 / 3 + t ** 4 / 4
    if segment == 2:
        return -a * a * t * t / 2 - 2 * b * t ** 3 / 3 + 2 * b * n_kernel_L2(t, a)
    if segment == 3:
        return (-(math.pi * rect.area_r + rect.c ** 2) * t * t / 2 - t ** 4 / 4
                + 2 * b * n_kernel_L2(t, a) + 2 * a * n_kernel_L2(t, b))
    raise ValueError(f"segment must be 1..3, got {segment!r}")


@dataclass(frozen=True)
class RectKernelTables:
    left: tuple      # (0, a, b)
    n_left: tuple    # Hn_{R,k}(left_k)
    jn_prefix: tuple  # Jn_R at left_k


@lru_cache(maxsize=256)
def rect_tables(rect: RectangleBox) -> RectKernelTables:
    left = (0.0, rect.a, rect.b)
    n_left = tuple(float(rect_n(rect, k + 1, left[k])) for k in range(3))
    prefix = [0.0]
    for k in range(2):
        prefix.append(prefix[k] + float(rect_n(rect, k + 1, left[k + 1])) - n_left[k])
    return RectKernelTables(left, n_left, tuple(prefix))


def rect_pdf_formula(rect: RectangleBox, segment: int, t):
    t = np.asarray(t, dtype=float)
    return 2 * t / rect.area_r ** 2 * rect_star(rect, segment, t)


def rect_cdf_formula(rect: RectangleBox, segment: int, t):
    tab = rect_tables(rect)
    k = segment - 1
    jn = tab.jn_prefix[k] + rect_n(rect, segment, t) - tab.n_left[k]
    return 2 / rect.area_r ** 2 * jn


def _branches(rect: RectangleBox, t):
    return locate(t, (0.0, rect.a, rect.b, rect.c))


def rect_distance_pdf_values(rect: RectangleBox, t):
    """Vectorized ``g_R`` on ``[0,a) [a,b) [b,c]``; returns ``(values, branches)``."""
    t = np.asarray(t, dtype=float)
    branch = _branches(rect, t)
    branch = np.where(t == rect.c, Branch.SEG3, branch)
    out = np.zeros(t.shape)
    for k in range(1, 4):
        mask = branch == k
        if np.any(mask):
            out[mask] = rect_pdf_formula(rect, k, t[mask])
    values, _ = clamp_negative(out, 2 * math.pi * rect.c / rect.area_r)
    # SEG4 is never used for the rectangle; anything past c is ABOVE
    return values, np.where(branch == Branch.SEG4, Branch.ABOVE, branch)


def rect_distance_cdf_values(rect: RectangleBox, t):
    t = np.asarray(t, dtype=float)
    branch = _branches(rect, t)
    branch = np.where(branch >= Branch.SEG4, Branch.ABOVE, branch)
    out = np.where(branch == Branch.ABOVE, 1.0, 0.0)
    for k in range(1, 4):
        mask = branch == k
        if np.any(mask):
            out[mask] = rect_cdf_formula(rect, k, t[mask])
    return np.clip(out, 0.0, 1.0), branch


def rect_distance_pdf(rect: RectangleBox, t: float) -> PiecewiseEval:
    value, branch = rect_distance_pdf_values(rect, t)
    return PiecewiseEval(float(value), Branch(int(branch)))


def rect_distance_cdf(rect: RectangleBox, t: float) -> PiecewiseEval:
    value, branch = rect_distance_cdf_values(rect, t)
    return PiecewiseEval(float(value), Branch(int(branch)))


def cross_pdf_values(tri: RightTriangle, t):
    """``g2 = 2 g_R - g``; returns ``(values, n_clamped)``."""
    rect = RectangleBox.from_triangle(tri)
    g_r, _ = rect_distance_pdf_values(rect, t)
    g, _, _ = distance_pdf_values(tri, t)
    # rounding threshold relative to the peak of g_R (reached at or below a)
    peak = float(np.max(rect_distance_pdf_values(rect, np.linspace(0, rect.c, 257))[0]))
    return clamp_negative(2 * g_r - g, peak, tol=1e-9)


def cross_cdf_values(tri: RightTriangle, t):
    rect = RectangleBox.from_triangle(tri)
    g_r, _ = rect_distance_cdf_values(rect, t)
    g, _ = distance_cdf_values(tri, t)
    return np.clip(2 * g_r - g, 0.0, 1.0)


def cross_pdf(tri: RightTriangle, t: float) -> float:
    return float(cross_pdf_values(tri, t)[0])


def cross_cdf(tri: RightTriangle, t: float) -> float:
    return float(cross_cdf_values(tri, t))
