"""Distances between mass functions and between subsets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .alpha import ALPHA_FAMILIES, alpha_values
from .errors import FrameTooLargeForMatrix, UnsupportedFamily
from .frame import MATRIX_CAP, Frame, MassFunction, popcount, same_frame
from .fusion import generalization_entries, specialization_entries
from .transforms import FAMILIES, family_values

INF = math.inf
DISTANCE_FAMILIES = FAMILIES + ("spe", "jousselme") + ALPHA_FAMILIES


def check_k(k) -> int | float:
    """Validate a norm order: a positive integer or ``math.inf``."""
    if k == INF:
        return INF
    if isinstance(k, bool) or not float(k).is_integer() or k < 1:
        raise ValueError(f"norm order must be a positive integer or inf, got {k!r}")
    return int(k)


def parse_k(text: str) -> int | float:
    text = str(text).strip().lower()
    if text in ("inf", "∞", "infinity"):
        return INF
    return check_k(int(text))


def format_k(k) -> str:
    return "inf" if k == INF else str(k)


@dataclass(frozen=True)
class DistanceSpec:
    """Which distance to use.

    ``family`` is one of ``q, pl, bel, b`` (set-function distances), ``spe``
    (entrywise norm of specialization matrices), ``jousselme`` (Jaccard
    quadratic form, ``k`` ignored) or ``aq``/``ab`` (raw L_k norm between
    alpha-commonalities / alpha-implicabilities, which needs ``alpha``).
    """

    family: str
    k: int | float = 1
    alpha: float | None = None

    def __post_init__(self):
        if self.family not in DISTANCE_FAMILIES:
            raise UnsupportedFamily(f"unknown distance family {self.family!r}")
        if self.family == "jousselme":
            object.__setattr__(self, "k", 2)
        else:
            object.__setattr__(self, "k", check_k(self.k))
        if self.family in ALPHA_FAMILIES and self.alpha is None:
            raise UnsupportedFamily(f"family {self.family!r} needs an alpha value")

    @property
    def name(self) -> str:
        if self.family == "jousselme":
            return "d_J"
        if self.family in ALPHA_FAMILIES:
            return f"d_{self.family}{self.alpha:g},{format_k(self.k)}"
        return f"d_{self.family},{format_k(self.k)}"


def lk_norm(x: np.ndarray, k, axis=-1) -> np.ndarray:
    x = np.abs(x)
    if k == INF:
        return x.max(axis=axis)
    if k == 1:
        return x.sum(axis=axis)
    return np.sum(x**k, axis=axis) ** (1.0 / k)


@lru_cache(maxsize=None)
def bel_diameter(n: int, k) -> float:
    """Max of ``||bel_A - bel_B||_k`` over categorical pairs.

    Two categorical belief vectors differ (by exactly 1) on the sets ``C``
    that contain one of ``A``, ``B`` but not the other, so the count only
    depends on ``|A - B|``, ``|B - A|`` and ``|A & B|``; every such class of
    pairs is enumerated.
    """
    if k == INF:
        return 1.0
    best = 0
    for a in range(n + 1):
        for b in range(n + 1 - a):
            for c in range(n + 1 - a - b):
                size_a, size_b = a + c, b + c
                cnt = 0
                if size_a:
                    cnt += 2 ** (n - size_a)
                if size_b:
                    cnt += 2 ** (n - size_b)
                if size_a and size_b:
                    cnt -= 2 * 2 ** (n - (a + b + c))
                best = max(best, cnt)
    return float(best) ** (1.0 / k)


def diameter_rho(spec: DistanceSpec, frame: Frame | int) -> float:
    n = frame if isinstance(frame, int) else frame.n
    N = 1 << n
    k = spec.k
    if spec.family in ("q", "pl", "b"):
        return 1.0 if k == INF else float(N - 1) ** (1.0 / k)
    if spec.family == "spe":
        return 1.0 if k == INF else float(2 * (N - 1)) ** (1.0 / k)
    if spec.family == "bel":
        return bel_diameter(n, k)
    raise UnsupportedFamily(f"no diameter constant for family {spec.family!r}")


@lru_cache(maxsize=None)
def jaccard_matrix(n: int) -> np.ndarray:
    """``D[A, B] = |A & B| / |A | B|`` with ``D[0, 0] = 1``; read-only, cached per size."""
    if n > MATRIX_CAP:
        raise FrameTooLargeForMatrix(f"n={n} exceeds the matrix cap {MATRIX_CAP}")
    idx = np.arange(1 << n, dtype=np.uint32)
    inter = np.bitwise_count(idx[:, None] & idx[None, :]).astype(np.float64)
    union = np.bitwise_count(idx[:, None] | idx[None, :]).astype(np.float64)
    union[0, 0] = 1.0
    D = inter / union
    D[0, 0] = 1.0
    D.flags.writeable = False
    return D


def _n_of(x: np.ndarray) -> int:
    return x.shape[-1].bit_length() - 1


def distance_values(x: np.ndarray, y: np.ndarray, spec: DistanceSpec) -> np.ndarray:
    """Distance between raw (batched) mass vectors, broadcasting over leading axes."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = _n_of(x)
    fam = spec.family
    if fam in FAMILIES:
        diff = family_values(x, fam) - family_values(y, fam)
        return lk_norm(diff, spec.k) / diameter_rho(spec, n)
    if fam == "spe":
        if n > MATRIX_CAP:
            raise FrameTooLargeForMatrix(f"n={n} exceeds the matrix cap {MATRIX_CAP}")
        S = specialization_entries(x - y)
        flat = S.reshape(S.shape[:-2] + (-1,))
        return lk_norm(flat, spec.k) / diameter_rho(spec, n)
    if fam == "jousselme":
        diff = x - y
        quad = np.einsum("...i,ij,...j->...", diff, jaccard_matrix(n), diff)
        return np.sqrt(np.maximum(0.5 * quad, 0.0))
    diff = alpha_values(x, spec.alpha, fam) - alpha_values(y, spec.alpha, fam)
    return lk_norm(diff, spec.k)


def distance(m1: MassFunction, m2: MassFunction, spec: DistanceSpec) -> float:
    same_frame(m1, m2)
    return float(distance_values(m1.values, m2.values, spec))


def f_distance(m1: MassFunction, m2: MassFunction, family: str, k) -> float:
    if family not in FAMILIES:
        raise UnsupportedFamily(f"f-distances are defined for {FAMILIES}, not {family!r}")
    return distance(m1, m2, DistanceSpec(family, k))


def jousselme(m1: MassFunction, m2: MassFunction) -> float:
    return distance(m1, m2, DistanceSpec("jousselme"))


def specialization_distance(m1: MassFunction, m2: MassFunction, k) -> float:
    return distance(m1, m2, DistanceSpec("spe", k))


def generalization_distance(m1: MassFunction, m2: MassFunction, k) -> float:
    """Same recipe with generalization matrices; coincides with the specialization distance."""
    frame = same_frame(m1, m2)
    if frame.n > MATRIX_CAP:
        raise FrameTooLargeForMatrix(f"n={frame.n} exceeds the matrix cap {MATRIX_CAP}")
    G = generalization_entries(m1.values - m2.values)
    return float(lk_norm(G.ravel(), check_k(k)) / diameter_rho(DistanceSpec("spe", k), frame))


def set_distance(a: int, b: int, frame: Frame | int, kind: str) -> float:
    n = frame if isinstance(frame, int) else frame.n
    sym = popcount(a ^ b)
    if kind == "hamming":
        return sym / n
    if kind == "jaccard":
        union = popcount(a | b)
        return 0.0 if union == 0 else sym / union
    raise ValueError(f"unknown set distance {kind!r}; expected 'hamming' or 'jaccard'")
