"""Seeded generators of random mass functions.

Streams come from numpy's PCG64 bit generator seeded through ``SeedSequence``.
Per-trial substreams use ``spawn_key=(trial,)`` so trial ``i`` of a run
depends only on ``(seed, i)``, never on scheduling or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec
from .frame import Frame, MassFunction, categorical, simple

RNG_ALGORITHM = "numpy.PCG64+SeedSequence"
RNG_VERSION = 1
KINDS = ("categorical", "simple", "general")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def substream(seed: int, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(trial),))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class GenSpec:
    kind: str = "simple"
    allow_empty_focal: bool = False
    max_focal: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")
        if self.max_focal is not None and self.max_focal < 1:
            raise InvalidSpec(f"max_focal must be >= 1, got {self.max_focal}")


def _random_subset(frame: Frame, rng: np.random.Generator, allow_empty: bool) -> int:
    return int(rng.integers(0 if allow_empty else 1, frame.N))


def random_mass(frame: Frame, rng: np.random.Generator, spec: GenSpec) -> MassFunction:
    """Draw one mass function.

    categorical: ``m_A`` with ``A`` uniform over the nonempty subsets (all
    subsets with ``allow_empty_focal``).  simple: ``w m_A + (1-w) m_Omega`` with
    ``A`` as above and ``w ~ U[0, 1]``.  general: ``K ~ U{1..max_focal}`` distinct
    focal sets drawn uniformly, masses from a flat Dirichlet (sorted-uniform
    spacings).
    """
    if spec.max_focal is not None and spec.max_focal > frame.N:
        raise InvalidSpec(f"max_focal={spec.max_focal} exceeds N={frame.N}")
    if spec.kind == "categorical":
        return categorical(frame, _random_subset(frame, rng, spec.allow_empty_focal))
    if spec.kind == "simple":
        a = _random_subset(frame, rng, spec.allow_empty_focal)
        return simple(frame, a, float(rng.random()))
    first = 0 if spec.allow_empty_focal else 1
    pool = frame.N - first
    max_focal = min(spec.max_focal or frame.N, pool)
    count = int(rng.integers(1, max_focal + 1))
    focal = rng.choice(pool, size=count, replace=False) + first
    cuts = np.sort(rng.random(count - 1))
    weights = np.diff(np.concatenate(([0.0], cuts, [1.0])))
    values = np.zeros(frame.N)
    values[focal] = weights
    return MassFunction(frame, values)


def random_masses(frame: Frame, rng: np.random.Generator, spec: GenSpec, count: int) -> list[MassFunction]:
    return [random_mass(frame, rng, spec) for _ in range(count)]
