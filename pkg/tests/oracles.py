"""Direct-definition oracles: plain loops over subsets, no transforms shared with the library."""

import math

import numpy as np


def subset(a, b):
    return a & ~b == 0


def bel(m):
    N = len(m)
    return np.array([sum(m[B] for B in range(1, N) if subset(B, A)) for A in range(N)])


def b(m):
    N = len(m)
    return np.array([sum(m[B] for B in range(N) if subset(B, A)) for A in range(N)])


def pl(m):
    N = len(m)
    return np.array([sum(m[B] for B in range(N) if B & A) for A in range(N)])


def q(m):
    N = len(m)
    return np.array([sum(m[B] for B in range(N) if subset(A, B)) for A in range(N)])


def conj(m1, m2):
    out = np.zeros(len(m1))
    for A, x in enumerate(m1):
        for B, y in enumerate(m2):
            out[A & B] += x * y
    return out


def disj(m1, m2):
    out = np.zeros(len(m1))
    for A, x in enumerate(m1):
        for B, y in enumerate(m2):
            out[A | B] += x * y
    return out


def cat(N, A):
    v = np.zeros(N)
    v[A] = 1.0
    return v


def spe_matrix(m):
    """Column B is the conditioning of m on B."""
    N = len(m)
    return np.column_stack([conj(m, cat(N, B)) for B in range(N)])


def gen_matrix(m):
    N = len(m)
    return np.column_stack([disj(m, cat(N, B)) for B in range(N)])


def lk(x, k):
    x = np.abs(np.ravel(x))
    return x.max() if k == math.inf else (x**k).sum() ** (1.0 / k)


def jousselme(m1, m2):
    N = len(m1)
    d = np.asarray(m1) - np.asarray(m2)
    total = 0.0
    for A in range(N):
        for B in range(N):
            union = bin(A | B).count("1")
            sim = 1.0 if union == 0 else bin(A & B).count("1") / union
            total += d[A] * sim * d[B]
    return math.sqrt(max(0.0, total / 2))


def alpha_q(m, alpha):
    N = len(m)
    return np.array([sum(m[E] * (alpha - 1) ** bin(B & ~E).count("1") for E in range(N)) for B in range(N)])


def alpha_b(m, alpha):
    N = len(m)
    return np.array([sum(m[E] * (alpha - 1) ** bin(E & ~B).count("1") for E in range(N)) for B in range(N)])
