from fractions import Fraction

import pytest

import circuitkit as ck

A_APP = [[1, 3, 4, 3], [0, 13, 9, 10]]


def test_imbalances_of_appendix_matrix():
    r = ck.imbalances(A_APP)
    assert r["kappa"] == Fraction(25, 9)
    assert r["kappa_dot"] == 5850
    assert r["kappa_bar"] == 25
    assert len(r["circuits"]) == 4


def test_span_of_input():
    r = ck.imbalances(span_of=[[0, 1, 1, 3], [1, 0, 3, 1]])
    assert r["kappa"] == 8


def test_exact_lp_with_fractions():
    # min -x0 - x1, x0 + 2 x1 + s0 = 4, 3 x0 + x1 + s1 = 6
    r = ck.solve([[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6], [-1, -1, 0, 0])
    assert r["status"] == "optimal"
    assert r["x"][:2] == [Fraction(8, 5), Fraction(6, 5)]
    assert r["objective"] == Fraction(-14, 5)


def test_steepest_trace_passes_audit():
    A = [[-1, 0, 1], [1, -1, 0]]
    t = ck.augment(A, [0, 0], [1, 1, -3], u=[2, 1, None], rule="steepest", check=True, start=[0, 0, 0])
    assert t["steps"]
    assert t["audit"]["steps"] == len(t["steps"])
    assert t["steps"][-1]["objective"] == -1


def test_graver_and_conjecture():
    g = ck.graver([[1, 1, 0], [0, 1, 1]])
    assert g["elements"] == [[-1, 1, -1], [1, -1, 1]]
    r = ck.conjecture([[1, 2, 1]], [2, -1, 0])
    assert r["status"] == "holds"
    assert r["verified"]


def test_proximity_bound():
    r = ck.proximity(A_APP, [Fraction(-1, 2), 1, 1, 1])
    w = r["feasibility"]
    assert w["distance"] <= w["bound"]


def test_appendix_and_tu():
    r = ck.appendix()
    assert r["kappa_dot"] == 5850
    assert len(r["primitive_vectors"]) == 8
    assert ck.is_tu([[1, 1, 0], [0, 1, 1]])
    assert not ck.is_tu([[1, 1], [-1, 1]])


def test_errors_and_floats():
    with pytest.raises(ck.CircuitkitError):
        ck.solve([[1, 1]], [1, 2], [0, 0])
    with pytest.raises(TypeError):
        ck.imbalances([[0.5, 1]])
