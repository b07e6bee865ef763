import numpy as np
import pytest
from hypothesis import given

from beliefkit import (
    DuplicateLabel,
    FrameMismatch,
    FrameTooLarge,
    InvalidRefinement,
    InvalidSpec,
    MassFunction,
    MassSumViolation,
    NegativeMass,
    UnknownLabel,
    WeightOutOfRange,
    categorical,
    make_frame,
    mass_from_assignments,
    members_of,
    negation,
    refine,
    simple,
    subset_of,
    total_conflict,
    vacuous,
)
from beliefkit.frame import complement, frame_of_size, from_bits, popcount, same_frame, to_bits
from conftest import masses


def test_frame_sizes():
    f = make_frame(["a", "b", "c"])
    assert (f.n, f.N, f.full) == (3, 8, 7)
    assert make_frame(["x"]).N == 2


def test_frame_rejects_bad_labels():
    with pytest.raises(DuplicateLabel):
        make_frame(["a", "a"])
    with pytest.raises(DuplicateLabel):
        make_frame(["a", ""])
    with pytest.raises(InvalidSpec):
        make_frame([])
    with pytest.raises(FrameTooLarge):
        make_frame([str(i) for i in range(21)])
    assert make_frame([str(i) for i in range(21)], cap=21).n == 21


def test_frame_of_size_labels():
    assert frame_of_size(3).labels == ("a", "b", "c")
    assert frame_of_size(27, cap=27).labels[-1] == "e26"


def test_subset_encoding(abc):
    assert subset_of(abc, ["a", "b"]) == 0b011
    assert subset_of(abc, []) == 0
    assert subset_of(abc, ["a", "b", "c"]) == 7
    assert members_of(abc, 0b101) == ["a", "c"]
    with pytest.raises(UnknownLabel):
        subset_of(abc, ["z"])


def test_bit_strings_put_first_element_left():
    f4 = frame_of_size(4)
    # 0011 holds the last two elements of a four-element frame
    assert from_bits("0011") == subset_of(f4, "cd")
    assert to_bits(f4, subset_of(f4, "cd")) == "0011"
    for a in range(16):
        assert from_bits(to_bits(f4, a)) == a
    with pytest.raises(ValueError):
        from_bits("012")


def test_popcount_and_complement(abc):
    assert popcount(0b1011) == 3
    assert complement(abc, 0b001) == 0b110


def test_mass_from_assignments(abc):
    m = mass_from_assignments(abc, [(0b011, 0.5), (7, 0.5)])
    assert m[0b011] == 0.5 and m[7] == 0.5
    assert total_conflict(abc)[0] == 1.0
    with pytest.raises(MassSumViolation):
        mass_from_assignments(abc, [(0b001, 0.6), (0b010, 0.3)])
    with pytest.raises(UnknownLabel):
        mass_from_assignments(abc, [(8, 1.0)])


def test_validation_tolerances(abc):
    v = np.zeros(8)
    v[7] = 1.0 + 5e-10
    assert MassFunction(abc, v)[7] == 1.0 + 5e-10  # kept as given, not renormalized
    v[7] = 1.0 + 2e-9
    with pytest.raises(MassSumViolation):
        MassFunction(abc, v)
    v = np.zeros(8)
    v[7], v[1] = 1.0, -1e-13
    m = MassFunction(abc, v)
    assert m[1] == 0.0 and not np.signbit(m.values[1])
    v[1] = -1e-9
    with pytest.raises(NegativeMass):
        MassFunction(abc, v)
    with pytest.raises(MassSumViolation):
        MassFunction(abc, np.ones(4) / 4)


def test_mass_function_is_immutable(abc):
    m = vacuous(abc)
    with pytest.raises(ValueError):
        m.values[0] = 1.0


def test_categorical_and_simple(abc):
    assert categorical(abc, 7) == vacuous(abc)
    assert categorical(abc, 0) == total_conflict(abc)
    m = simple(abc, subset_of(abc, "ac"), 0.5)
    assert m.focal() == [(0b101, 0.5), (7, 0.5)]
    assert simple(abc, 0b001, 0.0) == vacuous(abc)
    assert simple(abc, 0b001, 1.0) == categorical(abc, 0b001)
    assert simple(abc, 7, 0.3) == vacuous(abc)
    with pytest.raises(WeightOutOfRange):
        simple(abc, 1, 1.5)


def test_negation_examples(abc):
    assert negation(vacuous(abc)) == total_conflict(abc)
    m = simple(abc, subset_of(abc, "ab"), 0.5)
    want = mass_from_assignments(abc, [(subset_of(abc, "c"), 0.5), (0, 0.5)])
    assert negation(m) == want


@given(masses())
def test_negation_is_an_involution(m):
    assert negation(negation(m)) == m
    for a in range(m.frame.N):
        assert negation(m)[m.frame.full ^ a] == m[a]


def test_same_frame():
    with pytest.raises(FrameMismatch):
        same_frame(vacuous(frame_of_size(2)), vacuous(frame_of_size(3)))


def test_refine_categorical():
    ab = make_frame(["a", "b"])
    xyz = make_frame(["x", "y", "z"])
    out = refine(categorical(ab, 0b01), xyz, [["x", "y"], ["z"]])
    assert out == categorical(xyz, subset_of(xyz, "xy"))
    out = refine(categorical(ab, 0b01), xyz, {"a": ["x", "y"], "b": ["z"]})
    assert out == categorical(xyz, subset_of(xyz, "xy"))
    assert refine(total_conflict(ab), xyz, [["x"], ["y", "z"]]) == total_conflict(xyz)


def test_refine_rejects_bad_blocks():
    ab = make_frame(["a", "b"])
    xyz = make_frame(["x", "y", "z"])
    m = vacuous(ab)
    with pytest.raises(InvalidRefinement):
        refine(m, xyz, [["x"], []])
    with pytest.raises(InvalidRefinement):
        refine(m, xyz, [["x", "y"], ["y"]])
    with pytest.raises(InvalidRefinement):
        refine(m, xyz, [["x"]])
    with pytest.raises(InvalidRefinement):
        refine(m, xyz, {"a": ["x"]})


@given(masses(n_max=3))
def test_refine_preserves_mass_values(m):
    theta = frame_of_size(m.frame.n + 2)
    blocks = [[theta.labels[i]] for i in range(m.frame.n - 1)] + [list(theta.labels[m.frame.n - 1:])]
    r = refine(m, theta, blocks)
    assert sorted(r.values[r.values > 0]) == sorted(m.values[m.values > 0])
    # each focal set lands on the union of its blocks
    for a, v in m.focal():
        image = 0
        for i in range(m.frame.n):
            if a >> i & 1:
                image |= subset_of(theta, blocks[i])
        assert r[image] == v
