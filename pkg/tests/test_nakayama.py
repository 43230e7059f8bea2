import random
from fractions import Fraction

import pytest

from conftest import DEGREE_ONE, REGULAR, load, pipeline
from oracles import det, skew_nakayama
from hdetkit.extalgebra import LiftError
from hdetkit.frobenius import xi_automorphism
from hdetkit.nakayama import NotAutomorphism, f_sigma, hdet, lift_automorphism, recover_mu_A, verdicts
from hdetkit.presentation import AutomorphismSpec


def objs(name):
    return pipeline(name).objects


def lift(name, sigma, rng=None):
    return lift_automorphism(sigma, objs(name)["P"], rng=rng)


def h(name, sigma):
    o = objs(name)
    return hdet(lift_automorphism(sigma, o["P"]), o["P"], o["S"]).scalar


@pytest.mark.parametrize("name", ["poly2", "qplane2", "cubic", "weighted"])
def test_xi_lift_is_scalar_by_degree(name):
    o = objs(name)
    A, P = o["A"], o["P"]
    L = lift_automorphism(AutomorphismSpec.xi(A, 2), P)
    for i in range(P.length + 1):
        m = L.constant_part(i)
        degs = P.v_degrees[i]
        assert m == [[2 ** degs[r] if r == c else 0 for c in range(len(degs))] for r in range(len(degs))]


def test_quantum_plane_top_lift():
    L = lift("qplane2", AutomorphismSpec.xi(load("qplane2"), 2))
    assert L.constant_part(2) == [[4]]


@pytest.mark.parametrize("name", REGULAR)
def test_f_identity(name):
    o = objs(name)
    f = f_sigma(lift_automorphism(AutomorphismSpec.identity(o["A"]), o["P"]), o["E"])
    assert f == xi_automorphism(1, 1, o["E"])


def test_f_xi_scales_by_internal_degree():
    o = objs("cubic")
    E = o["E"]
    f = f_sigma(lift_automorphism(AutomorphismSpec.xi(o["A"], 2), o["P"]), E)
    assert f == xi_automorphism(1, Fraction(1, 2), E)


def test_f_swap_permutes():
    o = objs("poly2")
    swap = AutomorphismSpec.linear(o["A"], [[0, 1], [1, 0]])
    f = f_sigma(lift_automorphism(swap, o["P"]), o["E"])
    assert f.blocks[(1, -1)] == [[0, 1], [1, 0]]
    assert f.blocks[(2, -2)] == [[-1]]


def test_f_is_dual_on_degree_one():
    o = objs("poly2")
    s = AutomorphismSpec.linear(o["A"], [[1, 1], [0, 1]])
    f = f_sigma(lift_automorphism(s, o["P"]), o["E"])
    assert f.blocks[(1, -1)] == [[1, 0], [1, 1]]


PAIRS = [
    ("poly2", [[1, 1], [0, 1]], [[1, 0], [1, 1]]),
    ("poly2", [[2, 0], [0, 3]], [[5, 0], [0, -1]]),
    ("qplane2", [[2, 0], [0, 3]], [[-1, 0], [0, 7]]),
    ("qspace3", [[2, 0, 0], [0, 3, 0], [0, 0, 5]], [[-1, 0, 0], [0, 1, 0], [0, 0, 2]]),
    ("jordan", [[1, 1], [0, 1]], [[3, 0], [0, 3]]),
]


@pytest.mark.parametrize("name, a, b", PAIRS)
def test_contravariance(name, a, b):
    o = objs(name)
    A, P, E = o["A"], o["P"], o["E"]
    s, t = AutomorphismSpec.linear(A, a), AutomorphismSpec.linear(A, b)
    fs, ft = (f_sigma(lift_automorphism(x, P), E) for x in (s, t))
    fst = f_sigma(lift_automorphism(s.compose(t), P), E)
    assert fst == ft.compose(fs, A.field)


@pytest.mark.parametrize("name, a, b", PAIRS)
def test_hdet_multiplicative(name, a, b):
    A = objs(name)["A"]
    s, t = AutomorphismSpec.linear(A, a), AutomorphismSpec.linear(A, b)
    assert h(name, s.compose(t)) == h(name, s) * h(name, t)


def test_hdet_is_det_on_polynomial_rings():
    rng = random.Random(2)
    for n in (1, 2, 3):
        A = objs(f"poly{n}")["A"]
        for _ in range(6):
            while True:
                m = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
                if det(m):
                    break
            assert h(f"poly{n}", AutomorphismSpec.linear(A, m)) == det(m)


def test_hdet_swap():
    A = objs("poly2")["A"]
    assert h("poly2", AutomorphismSpec.linear(A, [[0, 1], [1, 0]])) == -1


@pytest.mark.parametrize("name", REGULAR)
@pytest.mark.parametrize("c", [2, 3, -1])
def test_hdet_xi_calibration(name, c):
    o = objs(name)
    assert h(name, AutomorphismSpec.xi(o["A"], c)) == Fraction(c) ** o["S"].ell


def test_not_automorphism():
    o = objs("qplane2")
    swap = AutomorphismSpec.linear(o["A"], [[0, 1], [1, 0]])
    with pytest.raises(NotAutomorphism):
        lift_automorphism(swap, o["P"])


@pytest.mark.parametrize(
    "name, p",
    [
        ("qplane2", [[1, 2], [2, 1]]),
        ("qplane3", [[1, 3], [3, 1]]),
        ("qplane_m1", [[1, -1], [-1, 1]]),
        ("qspace3", [[1, 2, 3], [2, 1, 5], [3, 5, 1]]),
        ("poly3", [[1] * 3] * 3),
    ],
)
def test_recovered_mu_skew(name, p):
    # the oracle takes x_j x_i = p[j][i] x_i x_j; symmetric input p means q_ji = p, q_ij = 1/p
    n = len(p)
    q = [[Fraction(1) if i == j else (Fraction(p[j][i]) if j > i else 1 / Fraction(p[i][j])) for i in range(n)] for j in range(n)]
    want = skew_nakayama(q)
    o = objs(name)
    mu = recover_mu_A(o["mu_E"], o["S"].d, o["A"])
    assert [img.terms for img in mu.images] == [{(j,): want[j]} for j in range(n)]


def test_recovered_mu_jordan():
    o = objs("jordan")
    A = o["A"]
    mu = recover_mu_A(o["mu_E"], 2, A)
    assert [A.format_poly(p) for p in mu.images] == ["x", "y + 2*x"]


def test_recovered_mu_cubic_and_down_up():
    for name, want in [("cubic", ["-x", "-y"]), ("twisted_cubic", ["-(1/4)*x", "-4*y"])]:
        o = objs(name)
        A = o["A"]
        assert [A.format_poly(p) for p in recover_mu_A(o["mu_E"], 3, A).images] == want


def test_recovery_needs_degree_one():
    o = objs("weighted")
    with pytest.raises(ValueError):
        recover_mu_A(o["mu_E"], 2, o["A"])


@pytest.mark.parametrize("name", DEGREE_ONE)
def test_verdicts_recovered(name):
    o = objs(name)
    mu = recover_mu_A(o["mu_E"], o["S"].d, o["A"])
    V = verdicts(o["A"], o["P"], o["E"], o["F"], mu, o["S"])
    assert V.values["T42_deg1"] and V.values["T42_full"] and V.values["T53"]
    assert V.values["epsilon_witness"] is True
    assert V.values["graded_symmetric"] == mu.is_identity()


def test_verdicts_wrong_mu_fail():
    o = objs("qplane2")
    V = verdicts(o["A"], o["P"], o["E"], o["F"], AutomorphismSpec.xi(o["A"], 2), o["S"])
    assert V.values["T53"] is False and V.values["T42_deg1"] is False
    assert "hdet(mu_A) = 4" in V.reasons["T53"]
    assert V.values["T41"] is False


def test_verdicts_without_mu():
    o = objs("weighted")
    V = verdicts(o["A"], o["P"], o["E"], o["F"], None, o["S"])
    assert V.values["T53"] is None and "unavailable" in V.reasons["T53"]


def test_lift_independent_of_choices():
    o = objs("cubic")
    s = AutomorphismSpec.linear(o["A"], [[0, 1], [1, 0]])
    base = f_sigma(lift_automorphism(s, o["P"]), o["E"])
    rng = random.Random(9)
    for _ in range(5):
        assert f_sigma(lift_automorphism(s, o["P"], rng=rng), o["E"]) == base
