"""Independent oracles for the closed forms.

* :func:`measure_by_proof_integration` rebuilds the chord measure ``H_k(s)``
  by integrating strip breadths and widths over the line direction.
* :func:`piefke_pdf` turns any chord length CDF into a distance density.
* :func:`mc_point_distance` / :func:`mc_chord_length` simulate and compare
  against a reference CDF with the Kolmogorov-Smirnov statistic.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from scipy import integrate

from .chord import chord_cdf_values
from .distance import distance_cdf_values
from .geometry import (RectangleBox, RightTriangle, chord_lengths, sample_uniform_line_hitting,
                       sample_uniform_point)
from .rectangle import cross_cdf_values, rect_distance_cdf_values

HALF_PI = math.pi / 2
CHUNK = 1 << 20


# -- strip breadths and widths of the proof decomposition -------------------

def strip_b1(tri, s, phi):
    al = tri.alpha
    return s / 2 * (math.sin(2 * phi - al) + math.sin(al)) / math.cos(al)


def strip_b2(tri, s, phi):
    al = tri.alpha
    return s / 2 * (math.cos(2 * phi - al) + math.cos(al)) / math.sin(al)


def strip_b3(tri, s, phi):
    return -s / 2 * math.sin(2 * phi)


def width_w1(tri, phi):
    return tri.a * math.cos(phi - tri.alpha) / math.sin(tri.alpha)


def width_w2(tri, phi):
    return tri.a * math.sin(phi)


def width_w3(tri, phi):
    return -tri.a * math.cos(phi) / math.tan(tri.alpha)


def phi_angles(tri: RightTriangle, s: float) -> dict:
    """The direction limits phi1..phi4 that exist for chord bound ``s``."""
    a, al = tri.a, tri.alpha
    out = {}
    if s <= 0:
        return out
    x = a / s * math.cos(al)
    if x <= 1 + 1e-12:  # x = 1 exactly at s = h, up to rounding
        x = min(x, 1.0)
        out["phi1"] = al - math.acos(x)
        out["phi2"] = al + math.acos(x)
    if s >= a:
        out["phi3"] = math.pi - math.acos(min(a / s, 1.0))
    if s >= tri.b:
        out["phi4"] = math.pi - math.asin(min(a / s / math.tan(al), 1.0))
    return out


def _pieces(tri: RightTriangle, segment: int, s: float):
    b1 = lambda f: strip_b1(tri, s, f)  # noqa: E731
    b2 = lambda f: strip_b2(tri, s, f)  # noqa: E731
    b3 = lambda f: strip_b3(tri, s, f)  # noqa: E731
    w1 = lambda f: width_w1(tri, f)  # noqa: E731
    w2 = lambda f: width_w2(tri, f)  # noqa: E731
    w3 = lambda f: width_w3(tri, f)  # noqa: E731
    bb = lambda f: b1(f) + b2(f)  # noqa: E731
    b13 = lambda f: b1(f) + b3(f)  # noqa: E731
    b23 = lambda f: b2(f) + b3(f)  # noqa: E731
    q = HALF_PI + tri.alpha
    ang = phi_angles(tri, s)
    if segment == 1:
        return [(0, HALF_PI, bb), (HALF_PI, q, b13), (q, math.pi, b23)]
    if segment == 2:
        p1, p2 = ang["phi1"], ang["phi2"]
        return [(0, p1, bb), (p1, p2, w1), (p2, HALF_PI, bb),
                (HALF_PI, q, b13), (q, math.pi, b23)]
    if segment == 3:
        p2, p3 = ang["phi2"], ang["phi3"]
        return [(0, p2, w1), (p2, HALF_PI, bb), (HALF_PI, q, b13),
                (q, p3, b23), (p3, math.pi, w3)]
    p3, p4 = ang["phi3"], ang["phi4"]
    return [(0, HALF_PI, w1), (HALF_PI, p4, w2), (p4, q, b13),
            (q, p3, b23), (p3, math.pi, w3)]


def measure_by_proof_integration(tri: RightTriangle, segment: int, s: float,
                                 tol: float = 1e-12) -> float:
    """Measure of the lines with chord at most ``s``, for ``s`` in segment
    ``segment`` (closed at both ends), by quadrature over the direction."""
    bounds = {1: (0.0, tri.h), 2: (tri.h, tri.a), 3: (tri.a, tri.b), 4: (tri.b, tri.c)}
    if segment not in bounds:
        raise ValueError(f"segment must be 1..4, got {segment!r}")
    lo, hi = bounds[segment]
    if not lo <= s <= hi:
        raise ValueError(f"s={s!r} outside segment {segment} = [{lo}, {hi}]")
    total = 0.0
    for x0, x1, func in _pieces(tri, segment, float(s)):
        if x1 > x0:
            total += integrate.quad(func, x0, x1, epsabs=tol, epsrel=tol, limit=200)[0]
    return total


# -- Piefke's formula -------------------------------------------------------

def piefke_pdf(chord_cdf: Callable[[float], float], u: float, area: float, c: float,
               t: float, breakpoints=(), tol: float = 1e-13) -> float:
    """Distance density from a chord length CDF.

    Uses ``g(t) = (2t/A) [pi - (u/A)(t - int_0^t F)]``; ``breakpoints``
    (kinks of ``F``) are used to split the quadrature.
    """
    if t <= 0 or t > c:
        return 0.0
    edges = [0.0] + sorted(x for x in breakpoints if 0 < x < t) + [t]
    acc = 0.0
    for x0, x1 in zip(edges[:-1], edges[1:]):
        val, err = integrate.quad(chord_cdf, x0, x1, epsabs=tol, epsrel=tol, limit=200)
        if not math.isfinite(val):
            raise ArithmeticError("quadrature did not converge")
        acc += val
    return 2 * t / area * (math.pi - u / area * (t - acc))


def piefke_pdf_from_density(chord_pdf: Callable[[float], float], u: float, area: float,
                            c: float, t: float, breakpoints=(), tol: float = 1e-13) -> float:
    """The un-integrated form ``g(t) = (2ut/A^2) int_t^c (s-t) f(s) ds``."""
    if t <= 0 or t > c:
        return 0.0
    edges = [t] + sorted(x for x in breakpoints if t < x < c) + [c]
    acc = sum(integrate.quad(lambda s: (s - t) * chord_pdf(s), x0, x1,
                             epsabs=tol, epsrel=tol, limit=200)[0]
              for x0, x1 in zip(edges[:-1], edges[1:]))
    return 2 * u * t / area ** 2 * acc


def triangle_piefke_pdf(tri: RightTriangle, t: float) -> float:
    return piefke_pdf(lambda s: float(chord_cdf_values(tri, s)[0]), tri.u, tri.area, tri.c,
                      t, breakpoints=tri.breakpoints)


# -- Monte Carlo ------------------------------------------------------------

@dataclass(frozen=True)
class CrossPair:
    """One point in ``tri`` and one in the other half of its rectangle."""

    tri: RightTriangle


Domain = Union[RightTriangle, RectangleBox, CrossPair]


@dataclass
class EcdfSummary:
    n: int
    sorted_samples: np.ndarray = field(repr=False)
    ks_distance: float
    seed: int

    def ecdf(self, x):
        return np.searchsorted(self.sorted_samples, x, side="right") / self.n

    def mean(self) -> float:
        return float(self.sorted_samples.mean())


def ks_statistic(sorted_samples, reference_cdf) -> float:
    """Two-sided KS distance between the ECDF of ``sorted_samples`` and a CDF."""
    x = np.asarray(sorted_samples, dtype=float)
    n = x.size
    if n == 0:
        raise ValueError("need at least one sample")
    F = np.asarray(reference_cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


def reference_cdf(domain: Domain) -> Callable:
    if isinstance(domain, RightTriangle):
        return lambda x: distance_cdf_values(domain, x)[0]
    if isinstance(domain, RectangleBox):
        return lambda x: rect_distance_cdf_values(domain, x)[0]
    if isinstance(domain, CrossPair):
        return lambda x: cross_cdf_values(domain.tri, x)
    raise TypeError(f"unsupported domain {domain!r}")


def _pair_chunk(domain: Domain, n: int, rng: np.random.Generator) -> np.ndarray:
    if isinstance(domain, RightTriangle):
        p = sample_uniform_point(domain, rng, n)
        q = sample_uniform_point(domain, rng, n)
    elif isinstance(domain, RectangleBox):
        box = np.array([domain.a, domain.b])
        p = rng.random((n, 2)) * box
        q = rng.random((n, 2)) * box
    elif isinstance(domain, CrossPair):
        tri = domain.tri
        p = sample_uniform_point(tri, rng, n)
        # point reflection through the box centre maps T onto the other half
        q = np.array([tri.a, tri.b]) - sample_uniform_point(tri, rng, n)
    else:
        raise TypeError(f"unsupported domain {domain!r}")
    return np.hypot(*(p - q).T)


def _chunked(draw: Callable[[int, np.random.Generator], np.ndarray], n: int, seed: int,
             workers: int) -> np.ndarray:
    # chunk layout depends only on n, so results do not depend on workers
    sizes = [CHUNK] * (n // CHUNK) + ([n % CHUNK] if n % CHUNK else [])
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(m, np.random.Generator(np.random.PCG64(ss))) for m, ss in zip(sizes, streams)]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda job: draw(*job), jobs))
    else:
        parts = [draw(*job) for job in jobs]
    return np.concatenate(parts)


def pair_distances(domain: Domain, n: int, seed: int, workers: int = 1) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    return _chunked(lambda m, rng: _pair_chunk(domain, m, rng), n, seed, workers)


def mc_point_distance(domain: Domain, n: int, seed: int, workers: int = 1,
                      reference: Optional[Callable] = None) -> EcdfSummary:
    d = np.sort(pair_distances(domain, n, seed, workers))
    ref = reference_cdf(domain) if reference is None else reference
    return EcdfSummary(n, d, ks_statistic(d, ref), seed)


def mc_chord_length(tri: RightTriangle, n: int, seed: int, workers: int = 1) -> EcdfSummary:
    if n < 1:
        raise ValueError("n must be >= 1")

    def draw(m, rng):
        p, psi = sample_uniform_line_hitting(tri, rng, m)
        return chord_lengths(tri, p, psi)

    s = np.sort(_chunked(draw, n, seed, workers))
    return EcdfSummary(n, s, ks_statistic(s, lambda x: chord_cdf_values(tri, x)[0]), seed)
