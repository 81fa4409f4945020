"""Named verification suites run by ``trichord verify``.

Every check returns a :class:`RunReport`; ``statistic`` is the worst error
for deterministic checks and the KS distance for simulations.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

import numpy as np

from . import chord, distance, rectangle, verify
from .geometry import RectangleBox, RightTriangle

SUITES = ("chord", "distance", "rectangle", "proof", "piefke", "mc")
UNIT_SQUARE_MEAN = (2 + math.sqrt(2) + 5 * math.asinh(1)) / 15


@dataclass
class RunReport:
    check: str
    seed: int | None
    n: int | None
    statistic: float
    threshold: float
    passed: bool
    wall_time: float

    @property
    def ks_distance(self) -> float:
        return self.statistic

    def line(self) -> str:
        d = asdict(self)
        d["statistic"] = f"{self.statistic:.3e}"
        d["threshold"] = f"{self.threshold:.1e}"
        d["wall_time"] = f"{self.wall_time:.3f}s"
        d["passed"] = "PASS" if self.passed else "FAIL"
        return " ".join(f"{k}={v}" for k, v in d.items())


def ks_threshold(n: int) -> float:
    """2e-3 at n = 1e6, 1e-3 at n >= 1e7, ~2/sqrt(n) below."""
    return max(1e-3, 2.0 / math.sqrt(n))


def _timed(name: str, threshold: float, fn: Callable[[], float], seed=None, n=None) -> RunReport:
    t0 = time.perf_counter()
    stat = float(fn())
    return RunReport(name, seed, n, stat, threshold, bool(stat < threshold),
                     time.perf_counter() - t0)


def _segments(tri: RightTriangle):
    bp = tri.breakpoints
    return [(k, lo, hi) for k, (lo, hi) in enumerate(zip(bp[:-1], bp[1:]), 1) if hi > lo]


def interior_grid(tri: RightTriangle, per_segment: int = 50) -> np.ndarray:
    return np.concatenate([np.linspace(lo, hi, per_segment + 2)[1:-1]
                           for _, lo, hi in _segments(tri)])


def breakpoint_jumps(tri: RightTriangle, formula: Callable, last_value: float = 1.0) -> float:
    """Largest disagreement of adjacent segment formulas at h, a, b, c."""
    segs = _segments(tri)
    worst = 0.0
    for (k, _, hi), (k2, _, _) in zip(segs[:-1], segs[1:]):
        worst = max(worst, abs(float(formula(tri, k, hi)) - float(formula(tri, k2, hi))))
    k, _, c = segs[-1]
    return max(worst, abs(float(formula(tri, k, c)) - last_value))


def _fd_mismatch(cdf, pdf, tri, step_of, margin_of, n_points):
    worst = 0.0
    for _, lo, hi in _segments(tri):
        width = hi - lo
        step, margin = step_of(width), margin_of(width)
        if width <= 2 * margin:
            continue
        x = np.linspace(lo + margin, hi - margin, n_points)
        fd = (cdf(x + step) - cdf(x - step)) / (2 * step)
        worst = max(worst, float(np.max(np.abs(pdf(x) - fd))))
    return worst


def chord_fd_mismatch(tri: RightTriangle, n_points: int = 1000) -> float:
    """Central differences of F against f, per segment.

    The step shrinks with narrow segments because f has a square-root
    cusp just right of each breakpoint; points keep 1% of the segment
    width from either end.
    """
    return _fd_mismatch(lambda x: chord.chord_cdf_values(tri, x)[0],
                        lambda x: chord.chord_pdf_values(tri, x)[0], tri,
                        lambda w: 1e-6 * min(tri.c, w), lambda w: 0.01 * w, n_points)


def distance_fd_mismatch(tri: RightTriangle, n_points: int = 1000) -> float:
    """Central differences of G against g, step ``1e-5 c``.

    G carries large cancelling terms, so the step cannot shrink; instead
    points stay at least 100 steps from every breakpoint.
    """
    step = 1e-5 * tri.c
    return _fd_mismatch(lambda x: distance.distance_cdf_values(tri, x)[0],
                        lambda x: distance.distance_pdf_values(tri, x)[0], tri,
                        lambda w: step, lambda w: max(0.01 * w, 100 * step), n_points)


def chord_suite(tri: RightTriangle) -> Iterator[RunReport]:
    yield _timed("chord.continuity", 1e-10,
                 lambda: breakpoint_jumps(tri, lambda t, k, s: chord.chord_measure(t, k, s) / t.u))

    def monotone():
        F, _ = chord.chord_cdf_values(tri, np.linspace(0, tri.c, 10_000))
        return max(0.0, -float(np.diff(F).min()))
    yield _timed("chord.monotone", 1e-12, monotone)
    yield _timed("chord.pdf_normalization", 1e-8, lambda: abs(distance.integrate_segments(
        lambda s: float(chord.chord_pdf_values(tri, s)[0]), tri.breakpoints) - 1))
    yield _timed("chord.pdf_vs_fd", 1e-5, lambda: chord_fd_mismatch(tri))


def distance_suite(tri: RightTriangle) -> Iterator[RunReport]:
    yield _timed("distance.pdf_continuity", 1e-10,
                 lambda: breakpoint_jumps(tri, distance.pdf_formula, 0.0))
    yield _timed("distance.cdf_continuity", 1e-10,
                 lambda: breakpoint_jumps(tri, distance.cdf_formula, 1.0))
    yield _timed("distance.pdf_normalization", 1e-8, lambda: abs(distance.integrate_segments(
        lambda t: float(distance.distance_pdf_values(tri, t)[0]), tri.breakpoints) - 1))
    yield _timed("distance.cdf_ladder_at_c", 1e-10,
                 lambda: abs(float(distance.cdf_formula(tri, 4, tri.c)) - 1))
    yield _timed("distance.pdf_vs_fd", 1e-6, lambda: distance_fd_mismatch(tri))
    yield _timed("distance.kernel_ladder", 1e-6, lambda: max(kernel_ladder_error(m / tri.c) for m in (tri.h, tri.a, tri.b)))


def kernel_ladder_error(m: float, n_points: int = 1000, relative: bool = False) -> float:
    """Worst FD mismatch of the four primitive identities on ``(m, 3m]``.

    The kernels have a square-root cusp at ``t = m``; points keep ``0.01 m``
    from it, the same margin the density checks use. The primitives grow
    like ``m^4``, so absolute errors are only meaningful at unit scale;
    ``relative`` divides each identity by the largest reference value.
    """
    t = np.linspace(1.01 * m, 3 * m, n_points)
    step = 1e-6 * m

    def d(fn):
        return (fn(t + step, m) - fn(t - step, m)) / (2 * step)
    errs = [
        d(distance.star_kernel_L1) - chord.kernel_L1(t, m),
        d(distance.star_kernel_L2) - chord.kernel_L2(t, m),
        d(distance.n_kernel_L1) - t * distance.star_kernel_L1(t, m),
        d(distance.n_kernel_L2) - t * distance.star_kernel_L2(t, m),
    ]
    refs = [chord.kernel_L1(t, m), chord.kernel_L2(t, m), t * distance.star_kernel_L1(t, m),
            t * distance.star_kernel_L2(t, m)]
    scale = [float(np.max(np.abs(r))) if relative else 1.0 for r in refs]
    return max(float(np.max(np.abs(e))) / s for e, s in zip(errs, scale))


def rectangle_suite(tri: RightTriangle) -> Iterator[RunReport]:
    square = RectangleBox(1, 1)
    yield _timed("rectangle.unit_square_mean", 1e-6, lambda: abs(distance.integrate_segments(
        lambda t: 1 - float(rectangle.rect_distance_cdf_values(square, t)[0]),
        (0, 1, square.c)) - UNIT_SQUARE_MEAN))
    rect = RectangleBox.from_triangle(tri)
    yield _timed("rectangle.pdf_normalization", 1e-8, lambda: abs(distance.integrate_segments(
        lambda t: float(rectangle.rect_distance_pdf_values(rect, t)[0]),
        (0, rect.a, rect.b, rect.c)) - 1))

    def cont():
        vals = []
        for x, k in ((rect.a, 1), (rect.b, 2)):
            if k == 2 and rect.a == rect.b:
                continue
            vals.append(abs(float(rectangle.rect_cdf_formula(rect, k, x))
                            - float(rectangle.rect_cdf_formula(rect, k + 1, x))))
            vals.append(abs(float(rectangle.rect_pdf_formula(rect, k, x))
                            - float(rectangle.rect_pdf_formula(rect, k + 1, x))))
        vals.append(abs(float(rectangle.rect_cdf_formula(rect, 3, rect.c)) - 1))
        return max(vals)
    yield _timed("rectangle.continuity", 1e-10, cont)

    def identity():
        t = np.linspace(0, tri.c, 1000)
        g2, _ = rectangle.cross_pdf_values(tri, t)
        g, _, _ = distance.distance_pdf_values(tri, t)
        g_r, _ = rectangle.rect_distance_pdf_values(rect, t)
        return np.max(np.abs((g + g2) - 2 * g_r))
    yield _timed("rectangle.mixture_identity", 1e-12, identity)


def proof_suite(tri: RightTriangle) -> Iterator[RunReport]:
    def worst():
        err = 0.0
        for k, lo, hi in _segments(tri):
            for s in np.linspace(lo, hi, 50):
                err = max(err, abs(verify.measure_by_proof_integration(tri, k, s)
                                   - float(chord.chord_measure(tri, k, s))))
        return err
    yield _timed("proof.measure_vs_closed_form", 1e-7, worst)


def piefke_suite(tri: RightTriangle) -> Iterator[RunReport]:
    def worst():
        t = interior_grid(tri, 50)
        return max(abs(verify.triangle_piefke_pdf(tri, x)
                       - float(distance.distance_pdf_values(tri, x)[0])) for x in t)
    yield _timed("piefke.pdf_vs_closed_form", 1e-6, worst)


def mc_suite(tri: RightTriangle, seed: int, n: int, workers: int = 1) -> Iterator[RunReport]:
    thr = ks_threshold(n)
    unit = tri.normalized()
    yield _timed("mc.triangle_distance", thr,
                 lambda: verify.mc_point_distance(unit, n, seed, workers).ks_distance, seed, n)
    yield _timed("mc.cross_distance", thr,
                 lambda: verify.mc_point_distance(verify.CrossPair(unit), n, seed, workers)
                 .ks_distance, seed, n)
    yield _timed("mc.rectangle_distance", thr,
                 lambda: verify.mc_point_distance(RectangleBox.from_triangle(unit), n, seed,
                                                  workers).ks_distance, seed, n)
    yield _timed("mc.chord_length", thr,
                 lambda: verify.mc_chord_length(tri, n, seed, workers).ks_distance, seed, n)


def run(suite: str, tri: RightTriangle, seed: int, n: int, workers: int = 1) -> Iterator[RunReport]:
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name == "chord":
            yield from chord_suite(tri)
        elif name == "distance":
            yield from distance_suite(tri)
        elif name == "rectangle":
            yield from rectangle_suite(tri)
        elif name == "proof":
            yield from proof_suite(tri)
        elif name == "piefke":
            yield from piefke_suite(tri)
        elif name == "mc":
            yield from mc_suite(tri, seed, n, workers)
        else:
            raise ValueError(f"unknown suite {name!r}")
