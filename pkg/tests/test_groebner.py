import pytest

from oracles import commutator, hilbert_bruteforce
from math import comb

from hdetkit.freealg import NcPoly
from hdetkit.groebner import CapExceeded, basis_of_degree, compute_gb, hilbert_dims, normal_form
from hdetkit.presentation import parse_presentation


def gb_of(text, cap=6):
    A = parse_presentation(text)
    return A, compute_gb(A, cap)


def rules(A, gb):
    return [A.format_poly(p) for p in gb.rule_polys()]


def test_quantum_plane_rule():
    A, gb = gb_of("gen x 1; gen y 1; rel y*x - 2*x*y")
    assert rules(A, gb) == ["y*x - 2*x*y"]
    assert normal_form(NcPoly(A.field, {(1, 0): 1}), gb).terms == {(0, 1): 2}
    assert hilbert_dims(gb, 6) == [1, 2, 3, 4, 5, 6, 7]
    assert basis_of_degree(gb, 2) == [(0, 0), (0, 1), (1, 1)]


def test_commutative_three_rules():
    A, gb = gb_of("gen x 1;gen y 1;gen z 1; rel y*x-x*y; rel z*x-x*z; rel z*y-y*z")
    assert rules(A, gb) == ["y*x - x*y", "z*x - x*z", "z*y - y*z"]
    assert hilbert_dims(gb, 6) == [comb(n + 2, 2) for n in range(7)]


def test_free_algebra():
    A, gb = gb_of("gen x 1; gen y 1")
    assert gb.rules == {}
    assert hilbert_dims(gb, 5) == [1, 2, 4, 8, 16, 32]


def test_normal_form_examples():
    A, gb = gb_of("gen x 1; gen y 1; rel y*x - x*y")
    yxy = NcPoly(A.field, {(1, 0, 1): 1})
    assert normal_form(yxy, gb).terms == {(0, 1, 1): 1}
    assert normal_form(A.relations[0], gb).is_zero()
    assert basis_of_degree(gb, 0) == [()]
    assert basis_of_degree(gb, 1) == [(0,), (1,)]


def test_cap_exceeded():
    A, gb = gb_of("gen x 1; gen y 1; rel y*x - x*y", cap=3)
    with pytest.raises(CapExceeded):
        gb.basis_of_degree(4)
    with pytest.raises(CapExceeded):
        normal_form(NcPoly(A.field, {(1, 0, 1, 0): 1}), gb)


def test_completion_adds_rules():
    # the overlap yyy of yy -> xy resolves to yxy - xxy
    A, gb = gb_of("gen x 1; gen y 1; rel y*y - x*y")
    assert max(len(w) for w in gb.rules) >= 3
    rels = [{(1, 1): 1, (0, 1): -1}]
    assert hilbert_dims(gb, 6) == [hilbert_bruteforce(2, rels, n) for n in range(7)]


@pytest.mark.parametrize(
    "text, rels, ngens, top",
    [
        ("gen x 1; gen y 1; rel y*x - 2*x*y", [commutator(0, 1, 2)], 2, 7),
        ("gen x 1; gen y 1; rel y*x - x*y - x^2", [{(1, 0): 1, (0, 1): -1, (0, 0): -1}], 2, 7),
        ("gen x 1; gen y 1; rel x^2*y - y*x^2; rel x*y^2-y^2*x", [{(0, 0, 1): 1, (1, 0, 0): -1}, {(0, 1, 1): 1, (1, 1, 0): -1}], 2, 7),
        ("gen x 1;gen y 1;gen z 1; rel y*x-2*x*y; rel z*x-3*x*z; rel z*y-5*y*z", [commutator(0, 1, 2), commutator(0, 2, 3), commutator(1, 2, 5)], 3, 5),
        ("gen x 1; gen y 1; rel x*y", [{(0, 1): 1}], 2, 7),
        ("gen x 1; gen y 1; rel x*x - y*x", [{(0, 0): 1, (1, 0): -1}], 2, 7),
    ],
)
def test_hilbert_against_bruteforce(text, rels, ngens, top):
    A, gb = gb_of(text, top)
    assert hilbert_dims(gb, top) == [hilbert_bruteforce(ngens, rels, n) for n in range(top + 1)]


def test_hilbert_independent_of_generator_order():
    _, g1 = gb_of("gen x 1; gen y 1; rel y*x - x*y - x^2", 7)
    _, g2 = gb_of("gen y 1; gen x 1; rel y*x - x*y - x^2", 7)
    assert hilbert_dims(g1, 7) == hilbert_dims(g2, 7)


def test_weighted_generators():
    _, gb = gb_of("gen x 1; gen y 2; rel y*x - x*y", 6)
    # 1/((1-t)(1-t^2))
    assert hilbert_dims(gb, 6) == [1, 1, 2, 2, 3, 3, 4]
