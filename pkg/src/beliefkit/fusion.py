"""Conjunctive and disjunctive combination, conditioning and evidential matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import FrameMismatch, FrameTooLargeForMatrix, FrameTooLargeForOracle
from .frame import MATRIX_CAP, Frame, MassFunction, categorical, same_frame
from .transforms import (
    commonality_values,
    implicability_values,
    subset_mobius,
    superset_mobius,
)

ORACLE_CAP = 12
LEQ_SLACK = 1e-12


def conjunctive_values(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Unnormalized conjunctive rule on raw (batched) mass vectors via the q-product."""
    return superset_mobius(commonality_values(x) * commonality_values(y))


def disjunctive_values(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Disjunctive rule on raw (batched) mass vectors via the b-product."""
    return subset_mobius(implicability_values(x) * implicability_values(y))


def _is_categorical_on(m: MassFunction, mask: int) -> bool:
    return m.values[mask] == 1.0 and np.count_nonzero(m.values) == 1


def conjunctive(m1: MassFunction, m2: MassFunction) -> MassFunction:
    frame = same_frame(m1, m2)
    # the vacuous mass function is the exact identity; skip the round trip
    if _is_categorical_on(m2, frame.full):
        return m1
    if _is_categorical_on(m1, frame.full):
        return m2
    return MassFunction(frame, conjunctive_values(m1.values, m2.values))


def disjunctive(m1: MassFunction, m2: MassFunction) -> MassFunction:
    frame = same_frame(m1, m2)
    if _is_categorical_on(m2, 0):
        return m1
    if _is_categorical_on(m1, 0):
        return m2
    return MassFunction(frame, disjunctive_values(m1.values, m2.values))


def combine_bruteforce(m1: MassFunction, m2: MassFunction, mode: str) -> MassFunction:
    """Literal double sum over all pairs of subsets; O(4**n) test oracle."""
    frame = same_frame(m1, m2)
    if frame.n > ORACLE_CAP:
        raise FrameTooLargeForOracle(f"n={frame.n} exceeds the oracle cap {ORACLE_CAP}")
    if mode in ("∩", "conj", "conjunctive"):
        op = np.bitwise_and
    elif mode in ("∪", "disj", "disjunctive"):
        op = np.bitwise_or
    else:
        raise ValueError(f"unknown combination mode {mode!r}")
    idx = np.arange(frame.N)
    target = op.outer(idx, idx)
    weights = np.outer(m1.values, m2.values)
    out = np.zeros(frame.N)
    np.add.at(out, target.ravel(), weights.ravel())
    return MassFunction(frame, out)


def condition(m: MassFunction, mask: int) -> MassFunction:
    """``m`` conditioned on subset ``mask`` (conjunction with the categorical ``m_E``)."""
    return conjunctive(m, categorical(m.frame, mask))


def _check_matrix_cap(frame: Frame):
    if frame.n > MATRIX_CAP:
        raise FrameTooLargeForMatrix(f"n={frame.n} exceeds the matrix cap {MATRIX_CAP}")


def _inclusion(N: int) -> np.ndarray:
    """Boolean matrix ``inc[A, B] = (A <= B)``."""
    idx = np.arange(N)
    return (idx[:, None] & idx[None, :]) == idx[:, None]


def specialization_entries(x: np.ndarray) -> np.ndarray:
    """Specialization matrix of a (batch of) mass vector(s), shape ``(..., N, N)``.

    Linear in ``x``, so it also gives ``S_1 - S_2`` from ``x = m_1 - m_2``.
    Column ``B`` is ``x`` conditioned on ``B``: its commonality is
    ``q_x(A) * [A <= B]``.
    """
    x = np.asarray(x, dtype=np.float64)
    N = x.shape[-1]
    q = commonality_values(x)
    cols = q[..., :, None] * _inclusion(N)
    # Moebius along the row axis: move it last, invert, move it back
    return np.swapaxes(superset_mobius(np.swapaxes(cols, -1, -2)), -1, -2)


def generalization_entries(x: np.ndarray) -> np.ndarray:
    """Generalization matrix; column ``B`` has implicability ``b_x(A) * [B <= A]``."""
    x = np.asarray(x, dtype=np.float64)
    N = x.shape[-1]
    b = implicability_values(x)
    cols = b[..., :, None] * _inclusion(N).T
    return np.swapaxes(subset_mobius(np.swapaxes(cols, -1, -2)), -1, -2)


@dataclass(frozen=True, eq=False)
class EvidentialMatrix:
    frame: Frame
    kind: str
    entries: np.ndarray

    def __post_init__(self):
        if self.kind not in ("specialization", "generalization"):
            raise ValueError(f"unknown evidential matrix kind {self.kind!r}")
        entries = np.array(self.entries, dtype=np.float64)
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    def apply(self, m: MassFunction) -> MassFunction:
        if m.frame != self.frame:
            raise FrameMismatch(f"{m.frame!r} differs from {self.frame!r}")
        return MassFunction(self.frame, self.entries @ m.values)


def specialization_matrix(m: MassFunction) -> EvidentialMatrix:
    _check_matrix_cap(m.frame)
    return EvidentialMatrix(m.frame, "specialization", specialization_entries(m.values))


def generalization_matrix(m: MassFunction) -> EvidentialMatrix:
    _check_matrix_cap(m.frame)
    return EvidentialMatrix(m.frame, "generalization", generalization_entries(m.values))


def leq_info(m1: MassFunction, m2: MassFunction, order: str) -> bool:
    """Informational ordering: ``m1`` is at least as informative as ``m2``.

    ``order="q"`` compares commonalities (``q1 <= q2``), ``order="b"``
    implicabilities (``b1 >= b2``); each comparison allows 1e-12 of slack.
    """
    same_frame(m1, m2)
    if order == "q":
        return bool(np.all(commonality_values(m1.values) <= commonality_values(m2.values) + LEQ_SLACK))
    if order == "b":
        return bool(np.all(implicability_values(m1.values) >= implicability_values(m2.values) - LEQ_SLACK))
    raise ValueError(f"unknown order {order!r}; expected 'q' or 'b'")


# Matrix files: one JSON header line, then N*N little-endian float64 in row-major order.

def save_matrix(mat: EvidentialMatrix, path: str | Path) -> None:
    header = {
        "frame": list(mat.frame.labels),
        "kind": mat.kind,
        "dtype": "<f8",
        "shape": list(mat.entries.shape),
        "order": "row-major",
    }
    with open(path, "wb") as fh:
        fh.write(json.dumps(header).encode("utf-8") + b"\n")
        fh.write(np.ascontiguousarray(mat.entries, dtype="<f8").tobytes())


def load_matrix(path: str | Path) -> EvidentialMatrix:
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode("utf-8"))
        raw = fh.read()
    shape = tuple(header["shape"])
    entries = np.frombuffer(raw, dtype=header.get("dtype", "<f8")).reshape(shape)
    return EvidentialMatrix(Frame(tuple(header["frame"])), header["kind"], entries.astype(np.float64))


def export_matrix_csv(mat: EvidentialMatrix, path: str | Path) -> None:
    np.savetxt(path, mat.entries, delimiter=",", fmt="%.17g")
