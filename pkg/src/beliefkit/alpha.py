"""alpha-commonality / alpha-implicability transforms and the alpha-junctions.

The transfer matrices are n-fold Kronecker powers of a 2x2 block, so they are
applied as an n-stage butterfly (one 2x2 mix per bit) and inverted stage by
stage.  Dense matrices are only built on request, for small frames.

Row convention.  The alpha-commonality block ``[[1, 1], [alpha-1, 1]]`` gives
the plain superset sum at alpha = 1 with bit i = "element i present" on both
rows and columns.  The published alpha-implicability block
``[[1, 1], [1, alpha-1]]`` only reduces to the subset sum when its rows are
indexed by complement, so its rows are swapped here: ``[[1, alpha-1], [1, 1]]``.
Row order does not affect entrywise products, the combination rule or any
L_k norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import FrameTooLargeForMatrix, NotAMassImage, UnsupportedFamily
from .frame import MASS_SUM_TOL, MATRIX_CAP, Frame, MassFunction, same_frame
from .transforms import _stages

ALPHA_FAMILIES = ("aq", "ab")


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha={alpha!r} is not in [0, 1]")
    return alpha


def alpha_block(alpha: float, family: str) -> np.ndarray:
    alpha = _check_alpha(alpha)
    if family == "aq":
        return np.array([[1.0, 1.0], [alpha - 1.0, 1.0]])
    if family == "ab":
        return np.array([[1.0, alpha - 1.0], [1.0, 1.0]])
    raise UnsupportedFamily(f"unknown alpha family {family!r}; expected 'aq' or 'ab'")


def _butterfly(x: np.ndarray, block: np.ndarray) -> np.ndarray:
    a = np.array(x, dtype=np.float64)
    (t00, t01), (t10, t11) = block
    for low, high in _stages(a):
        new_low = t00 * low + t01 * high
        high *= t11
        high += t10 * low
        low[...] = new_low
    return a


def alpha_values(x: np.ndarray, alpha: float, family: str) -> np.ndarray:
    """Transfer-matrix product on a (batch of) mass vector(s)."""
    return _butterfly(x, alpha_block(alpha, family))


def alpha_inverse_values(f: np.ndarray, alpha: float, family: str) -> np.ndarray:
    # det = 2 - alpha >= 1, so every stage is invertible on [0, 1]
    return _butterfly(f, np.linalg.inv(alpha_block(alpha, family)))


def alpha_transfer_matrix(frame: Frame, alpha: float, family: str) -> np.ndarray:
    """Dense ``N x N`` transfer matrix (all Kronecker factors are equal, so order is moot)."""
    if frame.n > MATRIX_CAP:
        raise FrameTooLargeForMatrix(f"n={frame.n} exceeds the matrix cap {MATRIX_CAP}")
    block = alpha_block(alpha, family)
    return reduce(np.kron, [block] * frame.n)


@dataclass(frozen=True, eq=False)
class AlphaSetFunction:
    frame: Frame
    family: str
    alpha: float
    values: np.ndarray

    def __post_init__(self):
        if self.family not in ALPHA_FAMILIES:
            raise UnsupportedFamily(f"unknown alpha family {self.family!r}")
        _check_alpha(self.alpha)
        values = np.array(self.values, dtype=np.float64)
        values.flags.writeable = False
        object.__setattr__(self, "values", values)


def to_alpha(m: MassFunction, alpha: float, family: str) -> AlphaSetFunction:
    return AlphaSetFunction(m.frame, family, float(alpha), alpha_values(m.values, alpha, family))


def from_alpha(f: AlphaSetFunction) -> MassFunction:
    m = alpha_inverse_values(f.values, f.alpha, f.family)
    if m.min() < -1e-9 or abs(m.sum() - 1.0) > MASS_SUM_TOL:
        raise NotAMassImage(f"alpha-{f.family} function does not invert to a mass function")
    return MassFunction(f.frame, np.where(m < 0.0, 0.0, m))


def alpha_combine_values(x: np.ndarray, y: np.ndarray, alpha: float, mode: str) -> np.ndarray:
    family = _mode_family(mode)
    return alpha_inverse_values(
        alpha_values(x, alpha, family) * alpha_values(y, alpha, family), alpha, family
    )


def _mode_family(mode: str) -> str:
    if mode in ("∩", "conj", "conjunctive"):
        return "aq"
    if mode in ("∪", "disj", "disjunctive"):
        return "ab"
    raise ValueError(f"unknown combination mode {mode!r}")


def alpha_combine(m1: MassFunction, m2: MassFunction, alpha: float, mode: str) -> MassFunction:
    """alpha-conjunctive (``mode="∩"``) or alpha-disjunctive (``"∪"``) combination."""
    frame = same_frame(m1, m2)
    family = _mode_family(mode)
    product = to_alpha(m1, alpha, family).values * to_alpha(m2, alpha, family).values
    return from_alpha(AlphaSetFunction(frame, family, float(alpha), product))
