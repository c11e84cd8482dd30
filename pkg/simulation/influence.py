"""Piecewise-linear strain influence lines for truss members.

Ordinates are dimensionless, zero at both supports and outside the span.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

CHORD = "chord-triangular"
DIAGONAL = "diagonal-bilinear"
SHAPES = (CHORD, DIAGONAL)


@dataclass(frozen=True)
class MemberModel:
    """
    A gauged member.

    chord-triangular: 0 -> 1 at `apex` (fraction of span) -> 0.
    diagonal-bilinear: 0 -> 1 at `apex` -> -negative_ratio at `reversal` -> 0.
    `scale` is microstrain per kN at unit ordinate; negative for compression.
    """
    label: str
    shape: str = CHORD
    scale: float = 0.1
    apex: float = 0.5
    reversal: float = 0.6
    negative_ratio: float = 0.5

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"shape must be one of {SHAPES}, got {self.shape!r}")
        if not 0.0 < self.apex < 1.0:
            raise ValueError(f"apex must lie in (0, 1), got {self.apex}")
        if self.shape == DIAGONAL:
            if not self.apex < self.reversal < 1.0:
                raise ValueError(f"reversal must lie in (apex, 1), got {self.reversal}")
            if not self.negative_ratio > 0:
                raise ValueError(f"negative_ratio must be positive, got {self.negative_ratio}")

    def breakpoints(self, span: float) -> Tuple[np.ndarray, np.ndarray]:
        if self.shape == CHORD:
            return np.array([0.0, self.apex * span, span]), np.array([0.0, 1.0, 0.0])
        return (np.array([0.0, self.apex * span, self.reversal * span, span]),
                np.array([0.0, 1.0, -self.negative_ratio, 0.0]))


def influence_ordinate(member: MemberModel, x, span: float):
    """Ordinate at position(s) x (metres from the entry support)."""
    if not span > 0:
        raise ValueError(f"span must be positive, got {span}")
    xs, ys = member.breakpoints(span)
    out = np.interp(x, xs, ys, left=0.0, right=0.0)
    return float(out) if np.ndim(out) == 0 else out


def default_members() -> Tuple[MemberModel, ...]:
    """Five gauged members: loc1/loc3 share the chord family, loc4/loc5 are diagonals.

    Magnitudes are synthetic.
    """
    return (
        MemberModel("loc1", CHORD, scale=0.085, apex=0.5),
        MemberModel("loc2", CHORD, scale=-0.06, apex=0.25),
        MemberModel("loc3", CHORD, scale=0.062, apex=0.5),
        MemberModel("loc4", DIAGONAL, scale=0.07, apex=0.35, reversal=0.45, negative_ratio=0.55),
        MemberModel("loc5", DIAGONAL, scale=-0.05, apex=0.55, reversal=0.65, negative_ratio=0.8),
    )
