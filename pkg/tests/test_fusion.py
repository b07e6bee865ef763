import numpy as np
import pytest
from hypothesis import given

import oracles
from beliefkit import (
    FrameMismatch,
    FrameTooLargeForMatrix,
    FrameTooLargeForOracle,
    categorical,
    combine_bruteforce,
    condition,
    conjunctive,
    disjunctive,
    generalization_matrix,
    leq_info,
    mass_from_assignments,
    negation,
    specialization_matrix,
    subset_of,
    to_commonality,
    to_implicability,
    total_conflict,
    vacuous,
)
from beliefkit.frame import frame_of_size
from beliefkit.fusion import EvidentialMatrix, export_matrix_csv, load_matrix, save_matrix
from conftest import mass_pairs, masses


def test_worked_conjunctions(abc, worked_conj):
    m1, m2, m3 = worked_conj
    assert conjunctive(m1, m3) == categorical(abc, subset_of(abc, "b"))
    want = mass_from_assignments(abc, [(subset_of(abc, "b"), 0.5), (0, 0.5)])
    assert conjunctive(m2, m3) == want
    assert condition(m1, subset_of(abc, "b")) == categorical(abc, subset_of(abc, "b"))


def test_worked_disjunctions(abc, worked_disj):
    m1, m2, m3 = worked_disj
    assert disjunctive(m1, m3) == categorical(abc, subset_of(abc, "ab"))
    assert disjunctive(m2, m3) == vacuous(abc)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_categorical_products_exhaustive(n):
    f = frame_of_size(n)
    for a in range(f.N):
        for b in range(f.N):
            assert conjunctive(categorical(f, a), categorical(f, b)).allclose(categorical(f, a & b), 1e-15)
            assert disjunctive(categorical(f, a), categorical(f, b)).allclose(categorical(f, a | b), 1e-15)
            assert combine_bruteforce(categorical(f, a), categorical(f, b), "∪") == categorical(f, a | b)


@given(mass_pairs(n_max=5))
def test_rules_match_double_sum(pair):
    m1, m2 = pair
    np.testing.assert_allclose(conjunctive(m1, m2).values, oracles.conj(m1.values, m2.values), atol=1e-12)
    np.testing.assert_allclose(disjunctive(m1, m2).values, oracles.disj(m1.values, m2.values), atol=1e-12)
    np.testing.assert_allclose(combine_bruteforce(m1, m2, "∩").values, oracles.conj(m1.values, m2.values), atol=1e-15)


@given(mass_pairs(n_max=5))
def test_transform_domain_products(pair):
    m1, m2 = pair
    q12 = to_commonality(conjunctive(m1, m2)).values
    np.testing.assert_allclose(q12, oracles.q(m1.values) * oracles.q(m2.values), atol=1e-12)
    b12 = to_implicability(disjunctive(m1, m2)).values
    np.testing.assert_allclose(b12, oracles.b(m1.values) * oracles.b(m2.values), atol=1e-12)


@given(mass_pairs(n_max=5, count=3))
def test_commutative_and_associative(triple):
    m1, m2, m3 = triple
    for rule in (conjunctive, disjunctive):
        assert rule(m1, m2).allclose(rule(m2, m1))
        assert rule(rule(m1, m2), m3).allclose(rule(m1, rule(m2, m3)))


@given(mass_pairs(n_max=5))
def test_de_morgan(pair):
    m1, m2 = pair
    assert negation(conjunctive(m1, m2)).allclose(disjunctive(negation(m1), negation(m2)))


@given(masses(n_max=5))
def test_identities_are_exact(m):
    assert conjunctive(m, vacuous(m.frame)) == m
    assert conjunctive(vacuous(m.frame), m) == m
    assert disjunctive(m, total_conflict(m.frame)) == m
    assert disjunctive(total_conflict(m.frame), m) == m
    assert condition(m, m.frame.full) == m


@given(masses(n_max=5))
def test_conditioning_identity(m):
    # b of m conditioned on E at A equals b of m at the complement of E \ A
    b = to_implicability(m).values
    full = m.frame.full
    for e in range(m.frame.N):
        be = to_implicability(condition(m, e)).values
        for a in range(m.frame.N):
            assert abs(be[a] - b[full ^ (e & ~a)]) <= 1e-12


@given(masses(n_max=5))
def test_conditioning_never_lowers_empty_mass(m):
    for e in range(m.frame.N):
        assert condition(m, e)[0] >= m[0] - 1e-12


@given(mass_pairs(n_max=5))
def test_informational_orders(pair):
    m1, m2 = pair
    c, d = conjunctive(m1, m2), disjunctive(m1, m2)
    assert leq_info(c, m1, "q") and leq_info(c, m2, "q")
    assert leq_info(m1, d, "b") and leq_info(m2, d, "b")
    assert leq_info(m1, m1, "q") and leq_info(m1, m1, "b")


def test_leq_info_strict_case(abc):
    assert not leq_info(vacuous(abc), categorical(abc, 1), "q")
    with pytest.raises(ValueError):
        leq_info(vacuous(abc), vacuous(abc), "x")


@given(masses(n_max=4))
def test_matrices_against_column_definitions(m):
    S = specialization_matrix(m).entries
    G = generalization_matrix(m).entries
    np.testing.assert_allclose(S, oracles.spe_matrix(m.values), atol=1e-12)
    np.testing.assert_allclose(G, oracles.gen_matrix(m.values), atol=1e-12)
    np.testing.assert_allclose(S.sum(axis=0), 1.0, atol=1e-12)
    assert S.min() >= -1e-12 and G.min() >= -1e-12


@given(mass_pairs(n_max=5))
def test_matrices_apply_the_rules(pair):
    m1, m2 = pair
    assert specialization_matrix(m1).apply(m2).allclose(conjunctive(m1, m2))
    assert generalization_matrix(m1).apply(m2).allclose(disjunctive(m1, m2))


def test_specialization_of_total_conflict(abc):
    S = specialization_matrix(total_conflict(abc)).entries
    assert np.all(S[0] == 1) and np.all(S[1:] == 0)


def test_matrix_errors():
    big = vacuous(frame_of_size(13))
    with pytest.raises(FrameTooLargeForMatrix):
        specialization_matrix(big)
    with pytest.raises(FrameTooLargeForOracle):
        combine_bruteforce(big, big, "∩")
    with pytest.raises(FrameMismatch):
        specialization_matrix(vacuous(frame_of_size(2))).apply(vacuous(frame_of_size(3)))
    with pytest.raises(FrameMismatch):
        conjunctive(vacuous(frame_of_size(2)), vacuous(frame_of_size(3)))
    with pytest.raises(ValueError):
        EvidentialMatrix(frame_of_size(1), "other", np.eye(2))
    with pytest.raises(ValueError):
        combine_bruteforce(vacuous(frame_of_size(1)), vacuous(frame_of_size(1)), "xor")


def test_matrix_file_roundtrip(tmp_path, worked_conj):
    mat = specialization_matrix(worked_conj[0])
    save_matrix(mat, tmp_path / "s.bin")
    back = load_matrix(tmp_path / "s.bin")
    assert back.kind == "specialization" and back.frame == mat.frame
    np.testing.assert_array_equal(back.entries, mat.entries)
    raw = (tmp_path / "s.bin").read_bytes()
    assert len(raw.split(b"\n", 1)[1]) == 64 * 8
    export_matrix_csv(mat, tmp_path / "s.csv")
    np.testing.assert_array_equal(np.loadtxt(tmp_path / "s.csv", delimiter=","), mat.entries)
