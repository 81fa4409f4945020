"""Right triangle and rectangle domains, lines under the motion-invariant
measure, chord clipping and the uniform samplers used by the oracles.

The triangle is always placed with C=(0,0), B=(a,0), A=(0,b) and a <= b.
Lines are ``{x cos(psi) + y sin(psi) = p}`` with the origin at C.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

TWO_PI = 2.0 * math.pi

# relative on-edge tolerance, in units of the hypotenuse
EDGE_TOL = 1e-12


def _check_length(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"{name} must be a positive finite length, got {value!r}")
    return value


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("point coordinates must be finite")

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class RightTriangle:
    """Right triangle with legs ``a <= b`` (swapped on construction if needed).

    All the constants the closed forms need are derived once here:
    hypotenuse ``c``, the angle ``alpha`` at A, the height ``h`` over the
    hypotenuse, perimeter ``u``, ``area`` and the six coefficients in
    ``theta`` (``theta[0]`` is the first one).
    """

    a: float
    b: float
    c: float = field(init=False)
    alpha: float = field(init=False)
    h: float = field(init=False)
    u: float = field(init=False)
    area: float = field(init=False)
    theta: tuple = field(init=False, repr=False)

    def __post_init__(self):
        a = _check_length("a", self.a)
        b = _check_length("b", self.b)
        if a > b:
            a, b = b, a
        c = math.hypot(a, b)
        alpha = math.atan2(a, b)
        r, q = a / b, b / a
        theta = (
            r * (2 * alpha + math.pi) + 2 * q * (math.pi - alpha) + 6,
            r * (2 * alpha - math.pi) - 2 * q * alpha + 6,
            r + q,
            1 - q * alpha,
            a + b,
            r * (2 * alpha - math.pi) - 2 * q * alpha + 2,
        )
        for name, value in [("a", a), ("b", b), ("c", c), ("alpha", alpha),
                            ("h", a * b / c), ("u", a + b + c),
                            ("area", a * b / 2), ("theta", theta)]:
            object.__setattr__(self, name, value)

    @property
    def breakpoints(self) -> tuple:
        return (0.0, self.h, self.a, self.b, self.c)

    @property
    def vertices(self) -> np.ndarray:
        """Rows A, B, C."""
        return np.array([[0.0, self.b], [self.a, 0.0], [0.0, 0.0]])

    @property
    def incenter(self) -> np.ndarray:
        r = (self.a + self.b - self.c) / 2
        return np.array([r, r])

    def scaled(self, factor: float) -> RightTriangle:
        return RightTriangle(self.a * factor, self.b * factor)

    def normalized(self) -> RightTriangle:
        """Similar triangle with unit hypotenuse."""
        return self.scaled(1.0 / self.c)

    def contains(self, x, y, tol: float = 1e-12):
        x = np.asarray(x)
        y = np.asarray(y)
        return (x >= -tol * self.a) & (y >= -tol * self.b) & (x / self.a + y / self.b <= 1 + tol)


@dataclass(frozen=True)
class RectangleBox:
    """Axis-aligned box ``[0,a] x [0,b]`` made of two copies of a right triangle."""

    a: float
    b: float
    c: float = field(init=False)
    area_r: float = field(init=False)
    perim_r: float = field(init=False)

    def __post_init__(self):
        a = _check_length("a", self.a)
        b = _check_length("b", self.b)
        if a > b:
            a, b = b, a
        for name, value in [("a", a), ("b", b), ("c", math.hypot(a, b)),
                            ("area_r", a * b), ("perim_r", 2 * (a + b))]:
            object.__setattr__(self, name, value)

    @classmethod
    def from_triangle(cls, tri: RightTriangle) -> RectangleBox:
        return cls(tri.a, tri.b)

    @property
    def triangle(self) -> RightTriangle:
        return RightTriangle(self.a, self.b)


@dataclass(frozen=True)
class Line:
    """A line ``g(p, psi)`` or, equivalently, a line at direction ``phi``.

    With ``convention="psi"`` the angle is the direction of the unit normal
    in ``[0, 2pi)`` and ``p >= 0`` is the distance from the origin. With
    ``convention="phi"`` the angle is the direction of the line itself in
    ``[0, pi)``; there ``p`` is signed, measured along the normal at
    ``phi + pi/2``, because a direction alone does not fix a side.
    """

    p: float
    angle: float
    convention: Literal["psi", "phi"] = "psi"

    def __post_init__(self):
        if not (math.isfinite(self.p) and math.isfinite(self.angle)):
            raise ValueError("line parameters must be finite")
        if self.convention == "psi":
            if self.p < 0:
                raise ValueError("p must be >= 0 in the psi convention")
            if not 0.0 <= self.angle < TWO_PI:
                raise ValueError("psi must lie in [0, 2pi)")
        elif self.convention == "phi":
            if not 0.0 <= self.angle < math.pi:
                raise ValueError("phi must lie in [0, pi)")
        else:
            raise ValueError(f"unknown convention {self.convention!r}")

    @classmethod
    def from_normal(cls, p: float, psi: float) -> Line:
        """Build a psi-form line from any real (p, psi), folding into range."""
        if p < 0:
            p, psi = -p, psi + math.pi
        return cls(float(p), float(psi % TWO_PI), "psi")

    @classmethod
    def through(cls, p1, p2) -> Line:
        (x1, y1), (x2, y2) = p1, p2
        dx, dy = x2 - x1, y2 - y1
        if dx == 0 and dy == 0:
            raise ValueError("points coincide")
        psi = math.atan2(dx, -dy)  # normal = direction rotated by -pi/2
        return cls.from_normal(x1 * math.cos(psi) + y1 * math.sin(psi), psi)

    @property
    def psi(self) -> float:
        return self.to_psi().angle

    @property
    def phi(self) -> float:
        return self.to_phi().angle

    def to_psi(self) -> Line:
        if self.convention == "psi":
            return self
        return Line.from_normal(self.p, self.angle + math.pi / 2)

    def to_phi(self) -> Line:
        if self.convention == "phi":
            return self
        direction = (self.angle - math.pi / 2) % TWO_PI
        if direction < math.pi:
            return Line(self.p, direction, "phi")
        # phi-form normal points at phi + pi/2, opposite to psi here
        return Line(-self.p, direction - math.pi, "phi")


def width(tri: RightTriangle, phi: float) -> float:
    """Breadth of ``tri`` perpendicular to the line direction ``phi``."""
    if not 0.0 <= phi <= math.pi:
        raise ValueError(f"phi must lie in [0, pi], got {phi!r}")
    a, alpha = tri.a, tri.alpha
    if phi < math.pi / 2:
        return a * math.cos(phi - alpha) / math.sin(alpha)
    if phi < math.pi / 2 + alpha:
        return a * math.sin(phi)
    return -a * math.cos(phi) / math.tan(alpha)


def projected_width(tri: RightTriangle, phi) -> np.ndarray:
    """Vertex-projection width, the brute-force counterpart of :func:`width`."""
    phi = np.asarray(phi, dtype=float)
    normal = np.stack([-np.sin(phi), np.cos(phi)], axis=-1)
    proj = normal @ tri.vertices.T
    return proj.max(axis=-1) - proj.min(axis=-1)


def support(tri: RightTriangle, psi, origin=None) -> np.ndarray:
    """Support function of ``tri`` about ``origin`` (default: the incenter)."""
    origin = tri.incenter if origin is None else np.asarray(origin, dtype=float)
    psi = np.asarray(psi, dtype=float)
    normal = np.stack([np.cos(psi), np.sin(psi)], axis=-1)
    return (normal @ (tri.vertices - origin).T).max(axis=-1)


def chord_lengths(tri: RightTriangle, p, psi) -> np.ndarray:
    """Vectorized chord length of lines ``x cos(psi) + y sin(psi) = p`` (origin C)."""
    p = np.asarray(p, dtype=float)
    psi = np.asarray(psi, dtype=float)
    cos, sin = np.cos(psi), np.sin(psi)
    x0, y0 = p * cos, p * sin
    dx, dy = -sin, cos
    lo = np.full(np.broadcast(p, psi).shape, -np.inf)
    hi = np.full_like(lo, np.inf)
    empty = np.zeros(lo.shape, dtype=bool)
    tol = EDGE_TOL
    # half-planes m . x <= k : -x <= 0, -y <= 0, x/a + y/b <= 1
    for mx, my, k, scale in ((-1.0, 0.0, 0.0, tri.c), (0.0, -1.0, 0.0, tri.c),
                             (1.0 / tri.a, 1.0 / tri.b, 1.0, 1.0)):
        md = mx * dx + my * dy
        slack = k - (mx * x0 + my * y0)
        parallel = np.abs(md) < 1e-15
        empty |= parallel & (slack < -tol * scale)
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = np.where(parallel, np.nan, slack / np.where(parallel, 1.0, md))
        hi = np.where(~parallel & (md > 0), np.minimum(hi, bound), hi)
        lo = np.where(~parallel & (md < 0), np.maximum(lo, bound), lo)
    length = np.where(empty, 0.0, np.maximum(hi - lo, 0.0))
    return np.where(length < tol * tri.c, 0.0, length)


def chord_length(tri: RightTriangle, line: Line) -> float:
    line = line.to_psi()
    return float(chord_lengths(tri, line.p, line.angle))


def barycentric_map(tri: RightTriangle, u1, u2) -> np.ndarray:
    """Square-root map of the unit square onto ``tri``; u1 = 0 gives A."""
    r = np.sqrt(np.asarray(u1, dtype=float))
    u2 = np.asarray(u2, dtype=float)
    A, B, C = tri.vertices
    return ((1 - r)[..., None] * A + (r * (1 - u2))[..., None] * B
            + (r * u2)[..., None] * C)


def sample_uniform_point(tri: RightTriangle, rng: np.random.Generator, size=None):
    """Uniform point(s) in ``tri``: a :class:`Point2`, or an ``(size, 2)`` array."""
    u = rng.random((1 if size is None else size, 2))
    pts = barycentric_map(tri, u[:, 0], u[:, 1])
    if size is None:
        return Point2(float(pts[0, 0]), float(pts[0, 1]))
    return pts


def line_acceptance_ratio(tri: RightTriangle) -> float:
    p_max = float(np.linalg.norm(tri.vertices - tri.incenter, axis=1).max())
    return tri.u / (TWO_PI * p_max)


def sample_uniform_line_hitting(tri: RightTriangle, rng: np.random.Generator,
                                size=None, max_rounds: int = 10_000):
    """Lines hitting ``tri``, uniform under ``dp dpsi``.

    Proposals are uniform on ``[0, p_max) x [0, 2pi)`` about the incenter,
    ``p_max`` being the largest vertex distance; a proposal is kept iff
    ``p`` is below the support function at ``psi``. Returns a :class:`Line`
    for ``size=None``, otherwise ``(p, psi)`` arrays about the origin C.
    """
    n = 1 if size is None else int(size)
    inc = tri.incenter
    p_max = float(np.linalg.norm(tri.vertices - inc, axis=1).max())
    ratio = tri.u / (TWO_PI * p_max)
    ps, psis = [], []
    have = 0
    for _ in range(max_rounds):
        if have >= n:
            break
        m = int((n - have) / ratio * 1.05) + 16
        p = rng.random(m) * p_max
        psi = rng.random(m) * TWO_PI
        keep = p < support(tri, psi, inc)
        ps.append(p[keep])
        psis.append(psi[keep])
        have += int(keep.sum())
    else:
        raise RuntimeError("line sampler exceeded its round limit")
    p = np.concatenate(ps)[:n]
    psi = np.concatenate(psis)[:n]
    # move the reference point from the incenter to C
    p = p + inc[0] * np.cos(psi) + inc[1] * np.sin(psi)
    psi = np.where(p < 0, psi + math.pi, psi) % TWO_PI
    p = np.abs(p)
    if size is None:
        return Line(float(p[0]), float(psi[0]), "psi")
    return p, psi
