from fractions import Fraction

from hdetkit.field import QQ, Field
from hdetkit.linalg import Echelon, kernel_of, mat_inverse, mat_mul, mat_rank, rank_of


def test_echelon_solve_and_kernel():
    e = Echelon(track=True, field=QQ)
    vs = [{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}]
    for i, v in enumerate(vs):
        e.add({k: QQ(c) for k, c in v.items()}, i)
    assert e.rank == 2
    assert len(e.kernel) == 1
    k = e.kernel[0]
    total = {}
    for i, c in k.items():
        for j, a in vs[i].items():
            total[j] = total.get(j, 0) + c * a
    assert all(v == 0 for v in total.values())
    sol = e.solve({0: QQ(2), 1: QQ(5), 2: QQ(1)})
    assert sol is not None
    assert e.solve({0: QQ(1)}) is None


def test_exact_types_survive_int_input():
    e = Echelon(track=True)
    e.add({0: 3}, "a")
    (row,) = e.rows.values()
    assert row[0] == 1 and not isinstance(row[0], float)
    assert e.combos[0]["a"] == Fraction(1, 3)


def test_tuple_keys():
    e = Echelon()
    assert e.add({(0, 1, (0,)): QQ(1), (1, 0, ()): QQ(1)})
    assert not e.add({(0, 1, (0,)): QQ(2), (1, 0, ()): QQ(2)})


def test_inverse_and_rank():
    m = [[QQ(2), QQ(1)], [QQ(1), QQ(1)]]
    inv = mat_inverse(m, QQ)
    assert mat_mul(m, inv, QQ) == [[1, 0], [0, 1]]
    assert mat_rank([[1, 2], [2, 4]]) == 1
    assert rank_of([{0: 1}, {0: 2}, {1: 1}]) == 2


def test_fp_kernel():
    F = Field(5)
    k = kernel_of([{0: F(1)}, {0: F(4)}], F)
    assert len(k) == 1 and k[0][0] * 1 + k[0][1] * 4 == 0
