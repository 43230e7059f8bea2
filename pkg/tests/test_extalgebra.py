import random
from math import comb

import pytest

from conftest import DEGREE_ONE, REGULAR, pipeline
from hdetkit.extalgebra import check_associativity, check_unit, ext_algebra, yoneda_product


def E_of(name):
    return pipeline(name).objects["E"]


def vec(E, i, j, k=0):
    return E.blocks[(i, j)][k]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_polynomial_dims(n):
    E = E_of(f"poly{n}")
    assert E.dims() == {(i, -i): comb(n, i) for i in range(n + 1)}


@pytest.mark.parametrize("name", REGULAR)
def test_associative_and_unital(name):
    E = E_of(name)
    assert check_associativity(E) and check_unit(E)


def test_exterior_anticommutation():
    E = E_of("poly2")
    x, y = E.blocks[(1, -1)]
    top = vec(E, 2, -2)
    xy, yx = E.products[(x, y)], E.products[(y, x)]
    assert set(xy) == {top} and yx == {top: -xy[top]}
    assert E.products[(x, x)] == {} == E.products[(y, y)]


def test_quantum_plane_relation():
    # E is the quadratic dual: x* y* + q^{-1}-type relation, here yx = -(1/2) xy
    E = E_of("qplane2")
    x, y = E.blocks[(1, -1)]
    top = vec(E, 2, -2)
    assert E.products[(y, x)][top] == -E.products[(x, y)][top] / 2


def test_minus_one_plane_commutes_in_E():
    E = E_of("qplane_m1")
    x, y = E.blocks[(1, -1)]
    top = vec(E, 2, -2)
    assert E.products[(y, x)] == E.products[(x, y)] != {}
    assert E.products[(x, x)] == {}


def test_cubic_dims():
    E = E_of("cubic")
    assert E.dims() == {(0, 0): 1, (1, -1): 2, (2, -3): 2, (3, -4): 1}


@pytest.mark.parametrize("name", DEGREE_ONE)
def test_products_independent_of_lift(name):
    E = E_of(name)
    rng = random.Random(5)
    for a in range(E.dim):
        for b in range(E.dim):
            assert yoneda_product(E, a, b, rng=rng) == E.products[(a, b)]


def test_truncated_E_marked_incomplete():
    from conftest import load
    from hdetkit.groebner import compute_gb
    from hdetkit.resolution import minimal_resolution

    A = load("poly3")
    P = minimal_resolution(A, compute_gb(A, 6), 6, 2)
    E = ext_algebra(P)
    assert not E.complete
    assert max(i for i, _ in E.blocks) < 2 + 1
