import random

import pytest

from hdetkit.field import QQ, Field
from hdetkit.signs import VComplex, h1_map, h2_map, hom, is_chain_map, random_complex, sigma, t1, t2, tensor, u_map

SHAPES = [({0: 2, 1: 1}, {-1: 1, 0: 2}), ({-1: 1, 0: 2, 1: 1}, {0: 1, 1: 2, 2: 1}), ({1: 2, 2: 2}, {1: 1, 2: 1, 3: 1})]


def pairs(field=QQ, n=6):
    rng = random.Random(11)
    for k in range(n):
        dx, dy = SHAPES[k % len(SHAPES)]
        yield random_complex(rng, dx, field), random_complex(rng, dy, field)


def test_random_complexes_square_zero():
    for X, Y in pairs():
        assert X.d_squared_zero() and Y.d_squared_zero()
        assert tensor(X, Y)[0].d_squared_zero()
        assert hom(X, Y)[0].d_squared_zero()


@pytest.mark.parametrize("build", [t1, t2, u_map, h1_map, h2_map])
def test_interchange_maps_are_chain_maps(build):
    for X, Y in pairs():
        S, T, maps = build(X, Y)
        assert is_chain_map(S, T, maps)


@pytest.mark.parametrize("build", [t1, t2, u_map, h1_map, h2_map])
def test_over_finite_field(build):
    for X, Y in pairs(Field(7), 3):
        assert is_chain_map(*build(X, Y))


def _flip_odd(maps):
    return {n: (m if n % 2 == 0 else [[-x for x in row] for row in m]) for n, m in maps.items()}


def _drop_sign(maps):
    return {n: [[abs(x) if x else x for x in row] for row in m] for n, m in maps.items()}


@pytest.mark.parametrize("build", [t2, u_map, h1_map])
def test_unsigned_variant_fails(build):
    # dropping the Koszul sign breaks the chain-map property on some pair
    assert any(not is_chain_map(S, T, _drop_sign(m)) for S, T, m in (build(X, Y) for X, Y in pairs()))


@pytest.mark.parametrize("build", [t1, h2_map])
def test_alternating_sign_variant_fails(build):
    assert any(not is_chain_map(S, T, _flip_odd(m)) for S, T, m in (build(X, Y) for X, Y in pairs()))


def test_sigma_shifts_and_negates():
    X = VComplex(QQ, {0: 1, 1: 1}, {0: [[QQ(3)]]})
    S = sigma(X)
    assert S.dims == {-1: 1, 0: 1} and S.diff(-1) == [[-3]]
    assert sigma(X, 2).diff(-2) == [[3]]
    assert sigma(sigma(X), -1).diff(0) == [[3]]
