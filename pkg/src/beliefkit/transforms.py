"""Zeta/Moebius transforms on the subset lattice and the set-function families.

All kernels act on the last axis of an array of length ``N = 2**n`` and accept
arbitrary leading batch axes.  Each runs ``n`` vectorized butterfly stages, one
per bit, for ``O(n * 2**n)`` work.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAMassImage, UnsupportedFamily
from .frame import MASS_SUM_TOL, Frame, MassFunction

FAMILIES = ("bel", "pl", "q", "b")


def _nbits(size: int) -> int:
    n = size.bit_length() - 1
    if size != 1 << n:
        raise ValueError(f"length {size} is not a power of two")
    return n


def _stages(a: np.ndarray):
    """Yield ``(low, high)`` views of ``a`` for each bit: entries with that bit clear / set."""
    lead = a.shape[:-1]
    for i in range(_nbits(a.shape[-1])):
        view = a.reshape(lead + (-1, 2, 1 << i))
        yield view[..., 0, :], view[..., 1, :]


def superset_sum(x: np.ndarray) -> np.ndarray:
    """``y[A] = sum_{E >= A} x[E]``."""
    a = np.array(x, dtype=np.float64)
    for low, high in _stages(a):
        low += high
    return a


def superset_mobius(y: np.ndarray) -> np.ndarray:
    """Inverse of :func:`superset_sum`."""
    a = np.array(y, dtype=np.float64)
    for low, high in _stages(a):
        low -= high
    return a


def subset_sum(x: np.ndarray) -> np.ndarray:
    """``y[A] = sum_{E <= A} x[E]``."""
    a = np.array(x, dtype=np.float64)
    for low, high in _stages(a):
        high += low
    return a


def subset_mobius(y: np.ndarray) -> np.ndarray:
    """Inverse of :func:`subset_sum`."""
    a = np.array(y, dtype=np.float64)
    for low, high in _stages(a):
        high -= low
    return a


def complement_order(x: np.ndarray) -> np.ndarray:
    """Re-index by complement: ``out[A] = x[A^c]`` (a reversal of the last axis)."""
    return x[..., ::-1]


# Array-level families.  ``m`` is a (batch of) mass vector(s).

def commonality_values(m: np.ndarray) -> np.ndarray:
    return superset_sum(m)


def implicability_values(m: np.ndarray) -> np.ndarray:
    return subset_sum(m)


def plausibility_values(m: np.ndarray) -> np.ndarray:
    pl = 1.0 - complement_order(subset_sum(m))
    pl[..., 0] = 0.0
    return pl


def belief_values(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    return subset_sum(m) - m[..., :1]


def family_values(m: np.ndarray, family: str) -> np.ndarray:
    try:
        fn = _FORWARD[family]
    except KeyError:
        raise UnsupportedFamily(f"unknown set-function family {family!r}") from None
    return fn(m)


_FORWARD = {
    "q": commonality_values,
    "b": implicability_values,
    "pl": plausibility_values,
    "bel": belief_values,
}


@dataclass(frozen=True, eq=False)
class SetFunction:
    frame: Frame
    family: str
    values: np.ndarray

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedFamily(f"unknown set-function family {self.family!r}")
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (self.frame.N,):
            raise ValueError(f"expected {self.frame.N} values, got shape {values.shape}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __getitem__(self, mask: int) -> float:
        return float(self.values[mask])


def to_commonality(m: MassFunction) -> SetFunction:
    return SetFunction(m.frame, "q", commonality_values(m.values))


def to_implicability(m: MassFunction) -> SetFunction:
    return SetFunction(m.frame, "b", implicability_values(m.values))


def to_plausibility(m: MassFunction) -> SetFunction:
    return SetFunction(m.frame, "pl", plausibility_values(m.values))


def to_belief(m: MassFunction) -> SetFunction:
    return SetFunction(m.frame, "bel", belief_values(m.values))


def to_family(m: MassFunction, family: str) -> SetFunction:
    return SetFunction(m.frame, family, family_values(m.values, family))


def mass_values_of(values: np.ndarray, family: str) -> np.ndarray:
    """Unvalidated inverse transform of a (batch of) set-function vector(s)."""
    values = np.asarray(values, dtype=np.float64)
    if family == "q":
        return superset_mobius(values)
    if family == "b":
        return subset_mobius(values)
    if family == "pl":
        return subset_mobius(1.0 - complement_order(values))
    if family == "bel":
        # bel(Omega) = 1 - m(empty)
        return subset_mobius(values + (1.0 - values[..., -1:]))
    raise UnsupportedFamily(f"unknown set-function family {family!r}")


def mass_of(f: SetFunction) -> MassFunction:
    """Moebius inversion back to the mass function; raises if ``f`` is not a mass image."""
    m = mass_values_of(f.values, f.family)
    low = m.min()
    if low < -1e-9:
        raise NotAMassImage(f"{f.family}-function inverts to a negative mass {low!r}")
    if abs(m.sum() - 1.0) > MASS_SUM_TOL:
        raise NotAMassImage(f"{f.family}-function inverts to masses summing to {m.sum()!r}")
    return MassFunction(f.frame, np.where(m < 0.0, 0.0, m))


def contour(m: MassFunction) -> np.ndarray:
    """Plausibility of each singleton, in frame order."""
    pl = plausibility_values(m.values)
    return pl[1 << np.arange(m.frame.n)]
