"""Result type shared by every piecewise distribution function."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class Branch(enum.IntEnum):
    """Which piece of a piecewise formula produced a value.

    For a right triangle the segments are ``[0,h)``, ``[h,a)``, ``[a,b)``
    and ``[b,c)``; the rectangle functions only use the first three
    (``[0,a)``, ``[a,b)``, ``[b,c]``).
    """

    BELOW = 0
    SEG1 = 1
    SEG2 = 2
    SEG3 = 3
    SEG4 = 4
    ABOVE = 5


@dataclass(frozen=True)
class PiecewiseEval:
    value: float
    branch: Branch
    clamped: bool = False

    def __float__(self) -> float:
        return self.value


def locate(x, breakpoints) -> np.ndarray:
    """Branch index of ``x`` for half-open segments between ``breakpoints``.

    ``breakpoints`` starts at 0; anything at or beyond the last entry maps
    to one past the last segment. Empty segments (repeated breakpoints)
    are never reported.
    """
    return np.searchsorted(np.asarray(breakpoints, dtype=float),
                           np.asarray(x, dtype=float), side="right")
