import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from beliefkit import MassFunction, frame_of_size, make_frame, simple, categorical, subset_of  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def masses(draw, n_min=1, n_max=5, frame=None):
    """Random mass vectors with a random support (zeros are common)."""
    if frame is None:
        frame = frame_of_size(draw(st.integers(n_min, n_max)))
    w = draw(st.lists(st.floats(0, 1), min_size=frame.N, max_size=frame.N))
    keep = draw(st.lists(st.booleans(), min_size=frame.N, max_size=frame.N))
    v = np.array([x if k else 0.0 for x, k in zip(w, keep)])
    if v.sum() <= 1e-3:
        v[draw(st.integers(0, frame.N - 1))] = 1.0
    return MassFunction(frame, v / v.sum())


@st.composite
def mass_pairs(draw, n_min=1, n_max=5, count=2):
    frame = frame_of_size(draw(st.integers(n_min, n_max)))
    return tuple(draw(masses(frame=frame)) for _ in range(count))


def random_general(rng, n):
    """Dirichlet mass vector with random support, for bulk corpora."""
    N = 1 << n
    v = rng.dirichlet(np.ones(N)) * (rng.random(N) < rng.uniform(0.2, 1.0))
    if v.sum() == 0:
        v[rng.integers(N)] = 1.0
    return MassFunction(frame_of_size(n), v / v.sum())


@pytest.fixture
def abc():
    return make_frame(["a", "b", "c"])


@pytest.fixture
def worked_conj(abc):
    """Triplet whose conjunctive combination pushes the plausibility distance up."""
    return (
        simple(abc, subset_of(abc, "ab"), 0.5),
        simple(abc, subset_of(abc, "ac"), 0.5),
        categorical(abc, subset_of(abc, "b")),
    )


@pytest.fixture
def worked_disj(abc):
    """Triplet whose disjunctive combination pushes the commonality distance up."""
    return (
        categorical(abc, subset_of(abc, "a")),
        categorical(abc, subset_of(abc, "ac")),
        categorical(abc, subset_of(abc, "b")),
    )


# Acceptance results, printed as one line per criterion at the end of the run.
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def record_criterion(number: int, title: str, ok: bool, detail: str):
    ACCEPTANCE[number] = (title, ok, detail)
    print(f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")
