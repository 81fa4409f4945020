"""Closed-form chord length distribution of a right triangle and its density.

``F(s) = H_k(s) / u`` on the k-th segment of ``[0,h) [h,a) [a,b) [b,c)``,
where ``H_k`` is the invariant measure of lines whose chord is at most ``s``.
"""
from __future__ import annotations

import math

import numpy as np

from .geometry import RightTriangle
from .piecewise import Branch, PiecewiseEval, locate

# relative slack allowed on s >= m before a kernel refuses its argument
DOMAIN_TOL = 1e-9


def _ratio(s, m):
    """``m / s`` clamped into [0, 1]; raises if ``s < m`` beyond tolerance."""
    s = np.asarray(s, dtype=float)
    if np.any(s < m * (1 - DOMAIN_TOL)):
        raise ValueError(f"kernel argument below its lower limit {m!r}")
    with np.errstate(divide="ignore"):
        return np.minimum(m / s, 1.0)


def _root(s, m):
    """``sqrt(s^2 - m^2)`` with the radicand clamped at 0."""
    s = np.asarray(s, dtype=float)
    return np.sqrt(np.maximum((s - m) * (s + m), 0.0))


def _asin_ratio(s, m):
    """``arcsin(m / s)`` as ``atan2(m, sqrt(s^2 - m^2))``.

    Near ``s = m`` the quotient ``m / s`` loses the digits that the
    factored radicand keeps; using the same radicand everywhere keeps the
    cancelling square-root terms consistent.
    """
    _ratio(s, m)
    return np.arctan2(m, _root(s, m))


def kernel_L1(s, m):
    """``s * arcsin(m / s)``."""
    return s * _asin_ratio(s, m)


def kernel_L2(s, m):
    """``sqrt(1 - (m / s)^2)``."""
    _ratio(s, m)
    return _root(s, m) / s


def kernel_L1_prime(s, m):
    return _asin_ratio(s, m) - m / _root(s, m)


def kernel_L2_prime(s, m):
    return m * m / (s * s * _root(s, m))


def _pair_prime(s, m):
    """Derivative of ``L1(s,m) + m*L2(s,m)``.

    Every L1 term in the measures comes paired with ``m`` times the L2 term,
    and the two ``1/sqrt(s^2-m^2)`` singularities cancel; this is the
    cancelled form, finite at ``s = m``.
    """
    return _asin_ratio(s, m) - m * _root(s, m) / (s * s)


def chord_measure(tri: RightTriangle, segment: int, s):
    """``H_k(s)`` for segment ``k`` in 1..4, evaluated without dispatch."""
    a, b, c, h = tri.a, tri.b, tri.c, tri.h
    th = tri.theta
    s = np.asarray(s, dtype=float)
    if segment == 1:
        return th[0] * s / 4
    if segment == 2:
        return th[1] * s / 4 + th[2] * kernel_L1(s, h) + c * kernel_L2(s, h)
    if segment == 3:
        return (a + th[3] * s + th[2] / 2 * kernel_L1(s, h) + c / 2 * kernel_L2(s, h)
                + b / (2 * a) * kernel_L1(s, a) + b / 2 * kernel_L2(s, a))
    if segment == 4:
        return (th[4] + th[5] * s / 4 + b / (2 * a) * kernel_L1(s, a) + b / 2 * kernel_L2(s, a)
                + a / (2 * b) * kernel_L1(s, b) + a / 2 * kernel_L2(s, b))
    raise ValueError(f"segment must be 1..4, got {segment!r}")


def chord_measure_prime(tri: RightTriangle, segment: int, s):
    """``dH_k/ds``."""
    a, b, h = tri.a, tri.b, tri.h
    th = tri.theta
    s = np.asarray(s, dtype=float)
    if segment == 1:
        return np.full_like(s, th[0] / 4)
    if segment == 2:
        return th[1] / 4 + th[2] * _pair_prime(s, h)
    if segment == 3:
        return th[3] + th[2] / 2 * _pair_prime(s, h) + b / (2 * a) * _pair_prime(s, a)
    if segment == 4:
        return th[5] / 4 + b / (2 * a) * _pair_prime(s, a) + a / (2 * b) * _pair_prime(s, b)
    raise ValueError(f"segment must be 1..4, got {segment!r}")


def chord_cdf_values(tri: RightTriangle, s):
    """Vectorized ``F``; returns ``(values, branch_codes)``."""
    s = np.asarray(s, dtype=float)
    branch = locate(s, tri.breakpoints)
    out = np.where(branch >= Branch.ABOVE, 1.0, 0.0)
    for k in range(1, 5):
        mask = branch == k
        if np.any(mask):
            out[mask] = chord_measure(tri, k, s[mask]) / tri.u
    return np.clip(out, 0.0, 1.0), branch


def chord_pdf_values(tri: RightTriangle, s):
    """Vectorized ``f = F'``; at a breakpoint the right-hand derivative."""
    s = np.asarray(s, dtype=float)
    branch = locate(s, tri.breakpoints)
    out = np.zeros(s.shape)
    for k in range(1, 5):
        mask = branch == k
        if np.any(mask):
            out[mask] = chord_measure_prime(tri, k, s[mask]) / tri.u
    return out, branch


def chord_cdf(tri: RightTriangle, s: float) -> PiecewiseEval:
    value, branch = chord_cdf_values(tri, s)
    return PiecewiseEval(float(value), Branch(int(branch)))


def chord_pdf(tri: RightTriangle, s: float) -> PiecewiseEval:
    """Chord length density at ``s``.

    At ``s`` in ``{0, h, a, b}`` the right-hand limit is returned; at and
    beyond ``c`` the density is 0.
    """
    value, branch = chord_pdf_values(tri, s)
    return PiecewiseEval(float(value), Branch(int(branch)))


def mean_chord_length(tri: RightTriangle) -> float:
    """Cauchy's ``pi * area / u``."""
    return math.pi * tri.area / tri.u
