"""Density and distribution of the distance between two uniform random
points in a right triangle.

Both follow from the chord length distribution: with
``J*(t) = u * int_0^t F`` and ``Jn(t) = int_0^t s J*(s) ds``,

    g(t) = (2t/A) [pi + (J*(t) - u t) / A]
    G(t) = (1/A) [t^2 (pi - 2 u t / (3A)) + 2 Jn(t) / A]

``J*`` and ``Jn`` are assembled segment by segment from the primitives
``H_k*`` (of ``H_k``) and ``H_k^n`` (of ``t H_k*``).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .chord import _asin_ratio, _root
from .geometry import RightTriangle
from .piecewise import Branch, PiecewiseEval, locate

log = logging.getLogger(__name__)

NEGATIVE_TOL = 1e-12


class TranscriptionError(ArithmeticError):
    """A density came out clearly negative: some closed form is wrong."""


def star_kernel_L1(t, m):
    """Primitive of ``L1(t, m)``."""
    return 0.5 * (m * _root(t, m) + t * t * _asin_ratio(t, m))


def star_kernel_L2(t, m):
    """Primitive of ``L2(t, m)``."""
    return _root(t, m) + m * _asin_ratio(t, m)


def n_kernel_L1(t, m):
    """Primitive of ``t * L1*(t, m)``."""
    r = _root(t, m)
    return (5 * m / 3 * r ** 3 + m ** 3 * r + t ** 4 * _asin_ratio(t, m)) / 8


def n_kernel_L2(t, m):
    """Primitive of ``t * L2*(t, m)``."""
    r = _root(t, m)
    return r ** 3 / 3 + m / 2 * (m * r + t * t * _asin_ratio(t, m))


def star_measure(tri: RightTriangle, segment: int, t):
    """``H_k*(t)``, a primitive of the chord measure ``H_k``."""
    a, b, c, h = tri.a, tri.b, tri.c, tri.h
    th = tri.theta
    t = np.asarray(t, dtype=float)
    L1, L2 = star_kernel_L1, star_kernel_L2
    if segment == 1:
        return th[0] * t * t / 8
    if segment == 2:
        return th[1] * t * t / 8 + th[2] * L1(t, h) + c * L2(t, h)
    if segment == 3:
        return (a * t + th[3] * t * t / 2 + th[2] / 2 * L1(t, h) + c / 2 * L2(t, h)
                + b / (2 * a) * L1(t, a) + b / 2 * L2(t, a))
    if segment == 4:
        return (th[4] * t + th[5] * t * t / 8 + b / (2 * a) * L1(t, a) + b / 2 * L2(t, a)
                + a / (2 * b) * L1(t, b) + a / 2 * L2(t, b))
    raise ValueError(f"segment must be 1..4, got {segment!r}")


def n_measure(tri: RightTriangle, segment: int, t):
    """``H_k^n(t)``, a primitive of ``t * H_k*(t)``."""
    a, b, c, h = tri.a, tri.b, tri.c, tri.h
    th = tri.theta
    t = np.asarray(t, dtype=float)
    L1, L2 = n_kernel_L1, n_kernel_L2
    if segment == 1:
        return th[0] * t ** 4 / 32
    if segment == 2:
        return th[1] * t ** 4 / 32 + th[2] * L1(t, h) + c * L2(t, h)
    if segment == 3:
        return (a * t ** 3 / 3 + th[3] * t ** 4 / 8 + th[2] / 2 * L1(t, h) + c / 2 * L2(t, h)
                + b / (2 * a) * L1(t, a) + b / 2 * L2(t, a))
    if segment == 4:
        return (th[4] * t ** 3 / 3 + th[5] * t ** 4 / 32 + b / (2 * a) * L1(t, a)
                + b / 2 * L2(t, a) + a / (2 * b) * L1(t, b) + a / 2 * L2(t, b))
    raise ValueError(f"segment must be 1..4, got {segment!r}")


@dataclass(frozen=True)
class CumulantTables:
    """Per-triangle constants for the J*/Jn ladders.

    ``jstar_prefix[k]`` is ``J*`` at the left end of segment ``k+1`` and
    ``jn_prefix[k]`` likewise for ``Jn``; ``left`` holds the segment left
    ends ``(0, h, a, b)``.
    """

    left: tuple
    star_left: tuple   # H_k*(left_k)
    n_left: tuple      # H_k^n(left_k)
    jstar_prefix: tuple
    jn_prefix: tuple

    # named views used in tests and reports
    @property
    def J1_star_0h(self):
        return self.jstar_prefix[1]

    @property
    def K1_h(self):
        return self.jn_prefix[1]


def _build_tables(tri: RightTriangle) -> CumulantTables:
    left = (0.0, tri.h, tri.a, tri.b)
    right = (tri.h, tri.a, tri.b)
    star_left = tuple(float(star_measure(tri, k + 1, left[k])) for k in range(4))
    n_left = tuple(float(n_measure(tri, k + 1, left[k])) for k in range(4))
    jstar = [0.0]
    jn = [0.0]
    for k in range(3):
        x0, x1 = left[k], right[k]
        dstar = float(star_measure(tri, k + 1, x1)) - star_left[k]
        dn = (0.5 * (x1 * x1 - x0 * x0) * (jstar[k] - star_left[k])
              + float(n_measure(tri, k + 1, x1)) - n_left[k])
        jstar.append(jstar[k] + dstar)
        jn.append(jn[k] + dn)
    return CumulantTables(left, star_left, n_left, tuple(jstar), tuple(jn))


@lru_cache(maxsize=256)
def cumulant_tables(tri: RightTriangle) -> CumulantTables:
    return _build_tables(tri)


def jstar_segment(tri: RightTriangle, segment: int, t):
    """``J*(t)`` through the formula of ``segment`` (no dispatch)."""
    tab = cumulant_tables(tri)
    k = segment - 1
    return tab.jstar_prefix[k] + star_measure(tri, segment, t) - tab.star_left[k]


def jn_segment(tri: RightTriangle, segment: int, t):
    """``Jn(t)`` through the K-ladder of ``segment`` (no dispatch)."""
    tab = cumulant_tables(tri)
    k = segment - 1
    t = np.asarray(t, dtype=float)
    x0 = tab.left[k]
    return (tab.jn_prefix[k] + 0.5 * (t * t - x0 * x0) * (tab.jstar_prefix[k] - tab.star_left[k])
            + n_measure(tri, segment, t) - tab.n_left[k])


def pdf_formula(tri: RightTriangle, segment: int, t):
    t = np.asarray(t, dtype=float)
    A = tri.area
    return 2 * t / A * (math.pi + (jstar_segment(tri, segment, t) - tri.u * t) / A)


def cdf_formula(tri: RightTriangle, segment: int, t):
    t = np.asarray(t, dtype=float)
    A = tri.area
    return (t * t * (math.pi - 2 * tri.u * t / (3 * A)) + 2 * jn_segment(tri, segment, t) / A) / A


def clamp_negative(values, scale, tol=NEGATIVE_TOL):
    """Zero out rounding-level negatives; raise on real ones.

    Returns ``(values, n_clamped)``.
    """
    values = np.asarray(values, dtype=float)
    neg = values < 0
    if not np.any(neg):
        return values, 0
    if np.any(values < -tol * scale):
        worst = float(values.min())
        raise TranscriptionError(f"density {worst!r} below -{tol} * {scale!r}")
    n = int(neg.sum())
    log.debug("clamped %d rounding-level negative density values", n)
    return np.where(neg, 0.0, values), n


def distance_pdf_values(tri: RightTriangle, t):
    """Vectorized ``g``; returns ``(values, branch_codes, n_clamped)``.

    ``g(c)`` is evaluated by the last segment's formula (it is 0 up to
    rounding) and reported as SEG4.
    """
    t = np.asarray(t, dtype=float)
    branch = locate(t, tri.breakpoints)
    branch = np.where(t == tri.c, Branch.SEG4, branch)
    out = np.zeros(t.shape)
    for k in range(1, 5):
        mask = branch == k
        if np.any(mask):
            out[mask] = pdf_formula(tri, k, t[mask])
    # the bracket is O(pi); scale tolerance by the prefactor
    values, n = clamp_negative(out, 2 * math.pi * tri.c / tri.area)
    return values, branch, n


def distance_cdf_values(tri: RightTriangle, t):
    """Vectorized ``G``; returns ``(values, branch_codes)``."""
    t = np.asarray(t, dtype=float)
    branch = locate(t, tri.breakpoints)
    out = np.where(branch >= Branch.ABOVE, 1.0, 0.0)
    for k in range(1, 5):
        mask = branch == k
        if np.any(mask):
            out[mask] = cdf_formula(tri, k, t[mask])
    return np.clip(out, 0.0, 1.0), branch


def distance_pdf(tri: RightTriangle, t: float) -> PiecewiseEval:
    value, branch, n = distance_pdf_values(tri, t)
    return PiecewiseEval(float(value), Branch(int(branch)), clamped=bool(n))


def distance_cdf(tri: RightTriangle, t: float) -> PiecewiseEval:
    value, branch = distance_cdf_values(tri, t)
    return PiecewiseEval(float(value), Branch(int(branch)))


def integrate_segments(func, breakpoints, lo=None, hi=None, tol=1e-12):
    """Adaptive Gauss-Kronrod quadrature of ``func`` over consecutive
    breakpoint intervals, so that no kink sits inside a panel."""
    pts = sorted(set(float(x) for x in breakpoints))
    lo = pts[0] if lo is None else lo
    hi = pts[-1] if hi is None else hi
    edges = [lo] + [x for x in pts if lo < x < hi] + [hi]
    total = 0.0
    for x0, x1 in zip(edges[:-1], edges[1:]):
        if x1 > x0:
            val, _ = integrate.quad(func, x0, x1, epsabs=tol, epsrel=tol, limit=200)
            total += val
    return total


def mean_distance(tri: RightTriangle) -> float:
    return integrate_segments(lambda x: x * float(distance_pdf_values(tri, x)[0]),
                              tri.breakpoints)
