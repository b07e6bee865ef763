"""Frames of discernment, subset bitmasks and mass functions.

Subsets of a frame are plain ``int`` bitmasks: label ``i`` (0-based, in frame
order) is bit ``i``.  The empty set is ``0`` and the full frame is ``N - 1``.
A mass function is a dense vector of length ``N = 2**n`` indexed by mask.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from string import ascii_lowercase

import numpy as np

from .errors import (
    DuplicateLabel,
    FrameMismatch,
    FrameTooLarge,
    InvalidRefinement,
    InvalidSpec,
    MassSumViolation,
    NegativeMass,
    UnknownLabel,
    WeightOutOfRange,
)

DEFAULT_CAP = 20
MATRIX_CAP = 12
MASS_SUM_TOL = 1e-9
NEGATIVE_CLAMP_TOL = 1e-12
# Single threshold deciding whether a subset is a focal element.
FOCAL_EPS = 1e-12


@dataclass(frozen=True)
class Frame:
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def N(self) -> int:
        return 1 << len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"{label!r} is not an element of frame {list(self.labels)}") from None

    def __repr__(self) -> str:
        return f"Frame({list(self.labels)})"


def make_frame(labels: Iterable[str], cap: int = DEFAULT_CAP) -> Frame:
    labels = tuple(str(x) for x in labels)
    if not labels:
        raise InvalidSpec("a frame needs at least one element")
    if any(not x for x in labels):
        raise DuplicateLabel("labels must be nonempty strings")
    if len(set(labels)) != len(labels):
        dupes = sorted({x for x in labels if labels.count(x) > 1})
        raise DuplicateLabel(f"duplicate labels: {dupes}")
    if len(labels) > cap:
        raise FrameTooLarge(f"n={len(labels)} exceeds the frame cap {cap}")
    return Frame(labels)


def frame_of_size(n: int, cap: int = DEFAULT_CAP) -> Frame:
    """Frame with generated labels ``a, b, c, ...`` (``e0, e1, ...`` past 26)."""
    if n <= len(ascii_lowercase):
        return make_frame(ascii_lowercase[:n], cap=cap)
    return make_frame([f"e{i}" for i in range(n)], cap=cap)


def subset_of(frame: Frame, members: Iterable[str]) -> int:
    mask = 0
    for label in members:
        mask |= 1 << frame.index(label)
    return mask


def members_of(frame: Frame, mask: int) -> list[str]:
    return [x for i, x in enumerate(frame.labels) if mask >> i & 1]


def to_bits(frame: Frame, mask: int) -> str:
    """Binary-string display with the first element leftmost (``0011`` = last two of four)."""
    return "".join("1" if mask >> i & 1 else "0" for i in range(frame.n))


def from_bits(bits: str) -> int:
    """Inverse of :func:`to_bits`; the frame size is ``len(bits)``."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"not a binary subset string: {bits!r}")
    return sum(1 << i for i, c in enumerate(bits) if c == "1")


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def complement(frame: Frame, mask: int) -> int:
    return mask ^ frame.full


def _checked_values(values: np.ndarray) -> np.ndarray:
    low = values.min()
    if low < -NEGATIVE_CLAMP_TOL:
        raise NegativeMass(f"mass {low!r} at subset {int(values.argmin())} is negative")
    if not np.isfinite(values).all():
        raise MassSumViolation("masses must be finite")
    # + 0.0 turns clamped -0.0 into 0.0
    values = np.where(values < 0.0, 0.0, values) + 0.0
    total = values.sum()
    if abs(total - 1.0) > MASS_SUM_TOL:
        raise MassSumViolation(f"masses sum to {total!r}, not 1")
    return values


@dataclass(frozen=True, eq=False)
class MassFunction:
    """Validated, immutable mass function on ``frame``.

    Construction checks the vector length, clamps negatives within 1e-12 of
    zero and rejects sums further than 1e-9 from one.  Nothing is renormalized.
    """

    frame: Frame
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (self.frame.N,):
            raise MassSumViolation(
                f"expected {self.frame.N} masses for {self.frame!r}, got shape {values.shape}"
            )
        values = _checked_values(values)
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __getitem__(self, mask: int) -> float:
        return float(self.values[mask])

    def focal(self) -> list[tuple[int, float]]:
        idx = np.flatnonzero(self.values > FOCAL_EPS)
        return [(int(i), float(self.values[i])) for i in idx]

    def allclose(self, other: MassFunction, atol: float = 1e-12) -> bool:
        return self.frame == other.frame and bool(np.allclose(self.values, other.values, rtol=0.0, atol=atol))

    def __eq__(self, other):
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and np.array_equal(self.values, other.values)

    __hash__ = None

    def __repr__(self) -> str:
        parts = ", ".join(
            "{" + ",".join(members_of(self.frame, a)) + f"}}: {v:.6g}" for a, v in self.focal()
        )
        return f"MassFunction({parts})"


def same_frame(*masses: MassFunction) -> Frame:
    frame = masses[0].frame
    for m in masses[1:]:
        if m.frame != frame:
            raise FrameMismatch(f"{m.frame!r} differs from {frame!r}")
    return frame


def mass_from_assignments(frame: Frame, assignments: Iterable[tuple[int, float]]) -> MassFunction:
    values = np.zeros(frame.N)
    for mask, mass in assignments:
        mask = int(mask)
        if not 0 <= mask < frame.N:
            raise UnknownLabel(f"mask {mask} is outside {frame!r}")
        if mass < -NEGATIVE_CLAMP_TOL:
            raise NegativeMass(f"mass {mass!r} assigned to subset {mask}")
        values[mask] += mass
    return MassFunction(frame, values)


def categorical(frame: Frame, mask: int) -> MassFunction:
    values = np.zeros(frame.N)
    values[mask] = 1.0
    return MassFunction(frame, values)


def vacuous(frame: Frame) -> MassFunction:
    return categorical(frame, frame.full)


def total_conflict(frame: Frame) -> MassFunction:
    return categorical(frame, 0)


def simple(frame: Frame, mask: int, w: float) -> MassFunction:
    """``w * m_A + (1 - w) * m_Omega``."""
    if not 0.0 <= w <= 1.0:
        raise WeightOutOfRange(f"weight {w!r} is not in [0, 1]")
    values = np.zeros(frame.N)
    values[frame.full] += 1.0 - w
    values[mask] += w
    return MassFunction(frame, values)


def negation(m: MassFunction) -> MassFunction:
    # mask ^ (N-1) == N-1-mask, so complementing every index reverses the vector
    return MassFunction(m.frame, m.values[::-1])


def refine(
    m: MassFunction,
    theta: Frame,
    blocks: Sequence[Iterable[str]] | Mapping[str, Iterable[str]],
) -> MassFunction:
    """Push ``m`` forward to the finer frame ``theta``.

    ``blocks`` gives, for every element of ``m.frame`` (in order, or keyed by
    label), the nonempty set of ``theta`` elements it refines into.  Blocks
    must be pairwise disjoint; they need not cover ``theta``.
    """
    frame = m.frame
    if isinstance(blocks, Mapping):
        missing = set(frame.labels) - set(blocks)
        if missing:
            raise InvalidRefinement(f"no block given for {sorted(missing)}")
        blocks = [blocks[x] for x in frame.labels]
    blocks = list(blocks)
    if len(blocks) != frame.n:
        raise InvalidRefinement(f"expected {frame.n} blocks, got {len(blocks)}")
    block_masks = []
    seen = 0
    for label, block in zip(frame.labels, blocks):
        bm = subset_of(theta, block)
        if bm == 0:
            raise InvalidRefinement(f"block of {label!r} is empty")
        if bm & seen:
            raise InvalidRefinement(f"block of {label!r} overlaps an earlier block")
        seen |= bm
        block_masks.append(bm)

    image = np.zeros(frame.N, dtype=np.int64)
    for a in range(1, frame.N):
        low = (a & -a).bit_length() - 1
        image[a] = image[a & (a - 1)] | block_masks[low]
    values = np.zeros(theta.N)
    values[image] = m.values  # image is injective for disjoint nonempty blocks
    return MassFunction(theta, values)
