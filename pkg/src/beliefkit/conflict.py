"""Consistency measures and degrees of conflict between two mass functions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .frame import FOCAL_EPS, MassFunction, same_frame, total_conflict
from .fusion import conjunctive
from .metrics import DistanceSpec, distance
from .transforms import contour

CLAMP_SLACK = 1e-12


def kappa(m1: MassFunction, m2: MassFunction) -> float:
    """Mass that the conjunctive combination puts on the empty set."""
    return conjunctive(m1, m2)[0]


def phi(m: MassFunction) -> float:
    return 1.0 - m[0]


def strong_phi(m: MassFunction) -> float:
    """Largest singleton plausibility (the sup-norm of the contour function)."""
    return float(contour(m).max())


def strong_conflict_K(m1: MassFunction, m2: MassFunction) -> float:
    return 1.0 - strong_phi(conjunctive(m1, m2))


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


def distance_conflict(m1: MassFunction, m2: MassFunction, spec: DistanceSpec) -> float:
    """``1 - d(m1 ∩ m2, m_∅)``, clamped to [0, 1]."""
    frame = same_frame(m1, m2)
    return _clamp(1.0 - distance(conjunctive(m1, m2), total_conflict(frame), spec))


def _focal_masks(m: MassFunction) -> np.ndarray:
    return np.flatnonzero(m.values > FOCAL_EPS)


def nonconflict(m1: MassFunction, m2: MassFunction, notion: str) -> bool:
    """``pairwise``: every focal set of m1 meets every focal set of m2.
    ``global``: all focal sets of both share a common element.
    """
    same_frame(m1, m2)
    f1, f2 = _focal_masks(m1), _focal_masks(m2)
    if notion == "pairwise":
        return bool(np.all((f1[:, None] & f2[None, :]) != 0))
    if notion == "global":
        common = m1.frame.full
        for a in np.concatenate([f1, f2]):
            common &= int(a)
        return common != 0
    raise ValueError(f"unknown non-conflict notion {notion!r}")


DEGREES = ("kappa", "K", "phi", "Phi", "C")


@dataclass
class ConflictReport:
    degree: str
    value: float
    inputs: list[str]
    flags: dict[str, bool] = field(default_factory=dict)
    spec: str | None = None

    def to_dict(self) -> dict:
        out = {"degree": self.degree, "value": self.value, "inputs": self.inputs, "flags": self.flags}
        if self.spec is not None:
            out["spec"] = self.spec
        return out


def conflict_report(
    degree: str,
    m1: MassFunction,
    m2: MassFunction | None = None,
    spec: DistanceSpec | None = None,
    inputs: list[str] | None = None,
) -> ConflictReport:
    """Evaluate one degree and package it with the non-conflict flags."""
    if degree in ("phi", "Phi"):
        value = phi(m1) if degree == "phi" else strong_phi(m1)
        return ConflictReport(degree, _clamp(value), inputs or ["m1"])
    if m2 is None:
        raise ValueError(f"degree {degree!r} needs two mass functions")
    if degree == "kappa":
        value = kappa(m1, m2)
    elif degree == "K":
        value = strong_conflict_K(m1, m2)
    elif degree == "C":
        if spec is None:
            raise ValueError("degree 'C' needs a distance spec")
        value = distance_conflict(m1, m2, spec)
    else:
        raise ValueError(f"unknown degree {degree!r}; expected one of {DEGREES}")
    flags = {
        "pairwise_nonconflicting": nonconflict(m1, m2, "pairwise"),
        "globally_nonconflicting": nonconflict(m1, m2, "global"),
    }
    return ConflictReport(
        degree, _clamp(value), inputs or ["m1", "m2"], flags, spec.name if spec else None
    )
