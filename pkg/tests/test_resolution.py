from math import comb

import pytest

from conftest import REGULAR, load
from oracles import koszul_betti
from hdetkit.groebner import compute_gb
from hdetkit.presentation import parse_presentation
from hdetkit.resolution import betti_table, gorenstein_signature, minimal_resolution

SIGNATURES = {
    "poly1": (1, 1),
    "poly2": (2, 2),
    "poly3": (3, 3),
    "qplane2": (2, 2),
    "qplane_m1": (2, 2),
    "qplane3": (2, 2),
    "qspace3": (3, 3),
    "jordan": (2, 2),
    "cubic": (3, 4),
    "twisted_cubic": (3, 4),
    "weighted": (2, 3),
}


def resolve(A, N=8, H=5):
    gb = compute_gb(A, N)
    return minimal_resolution(A, gb, N, H)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_polynomial_betti_binomial(n):
    P = resolve(load(f"poly{n}"))
    assert betti_table(P) == koszul_betti(n)
    assert P.terminated and P.is_minimal()


@pytest.mark.parametrize("name", REGULAR)
def test_signature(name):
    P = resolve(load(name))
    S = gorenstein_signature(P)
    assert (S.d, S.ell) == SIGNATURES[name]
    assert S.gorenstein_ok is True and S.regular is True


@pytest.mark.parametrize("name", REGULAR)
def test_euler_characteristic(name):
    # sum_i (-1)^i P_i(t) * H_A(t) = 1 up to the cap
    A = load(name)
    N = 8
    P = resolve(A, N)
    H = P.gb.hilbert_dims(N)
    poly = [0] * (N + 1)
    for (i, n), c in betti_table(P).items():
        if n <= N:
            poly[n] += (-1) ** i * c
    conv = [sum(poly[k] * H[n - k] for k in range(n + 1)) for n in range(N + 1)]
    assert conv == [1] + [0] * N


@pytest.mark.parametrize("name", REGULAR)
def test_betti_symmetry(name):
    P = resolve(load(name))
    d, ell = SIGNATURES[name]
    B = betti_table(P)
    assert B == {(d - i, ell - n): c for (i, n), c in B.items()}


def test_cubic_betti():
    P = resolve(load("cubic"))
    assert betti_table(P) == {(0, 0): 1, (1, 1): 2, (2, 3): 2, (3, 4): 1}


def test_weighted_betti():
    P = resolve(load("weighted"))
    assert betti_table(P) == {(0, 0): 1, (1, 1): 1, (1, 2): 1, (2, 3): 1}


def test_monomial_not_gorenstein():
    P = resolve(load("monomial_xy"))
    assert betti_table(P) == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    assert gorenstein_signature(P).gorenstein_ok is False


def test_free_algebra_not_gorenstein():
    P = resolve(parse_presentation("gen x 1; gen y 1"))
    assert betti_table(P) == {(0, 0): 1, (1, 1): 2}
    assert gorenstein_signature(P).gorenstein_ok is False


def test_truncated_resolution_inconclusive():
    P = resolve(load("poly3"), 8, 2)
    assert not P.terminated
    S = gorenstein_signature(P)
    assert S.gorenstein_ok is None and "inconclusive" in S.reason


def test_field_fp():
    A = parse_presentation("field F 5; gen x 1; gen y 1; gen z 1; rel y*x - 2*x*y; rel z*x - 3*x*z; rel z*y - 4*y*z")
    P = resolve(A)
    assert betti_table(P) == {(i, i): comb(3, i) for i in range(4)}
