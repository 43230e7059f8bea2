"""Sparse exact linear algebra: incremental echelon forms over a field.

Vectors are dicts ``index -> scalar`` with no stored zeros.  Indices must
be mutually comparable; the pivot of a stored row is its largest index,
so reduction sweeps from high to low indices.
"""

from __future__ import annotations

import heapq
from typing import Hashable, Iterable

from gmpy2 import mpq


def axpy(y: dict, a, x: dict) -> None:
    """y += a * x in place, dropping zeros."""
    for j, v in x.items():
        w = y.get(j)
        if w is None:
            y[j] = a * v
        else:
            w = w + a * v
            if w:
                y[j] = w
            else:
                del y[j]


def scaled(x: dict, a) -> dict:
    return {j: a * v for j, v in x.items()} if a else {}


def vec_add(x: dict, y: dict) -> dict:
    out = dict(x)
    axpy(out, 1, y)
    return out


def vec_sub(x: dict, y: dict) -> dict:
    out = dict(x)
    axpy(out, -1, y)
    return out


def _inverse(x):
    if isinstance(x, int):
        return mpq(1, x)
    return 1 / x


class _Desc:
    """Heap entry ordering its key from largest to smallest."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k


class Echelon:
    """Rows kept in echelon form, each optionally tagged by a combination.

    With ``track=True`` every stored row remembers which combination of
    inserted tags produced it, which makes :meth:`solve` and kernel
    extraction possible.
    """

    def __init__(self, track: bool = False, field=None):
        self.track = track
        self.one = field.one if field is not None else 1
        self.rows: dict = {}
        self.combos: dict = {}
        self.kernel: list[dict] = []

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict, want_combo: bool = False):
        """Return (remainder, combination) with v = remainder + sum(combination * rows)."""
        v = dict(v)
        rows = self.rows
        combo: dict = {}
        heap = [_Desc(k) for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap).k
            c = v.get(k)
            if not c:
                continue
            row = rows[k]
            for j, a in row.items():
                w = v.get(j)
                if w is None:
                    v[j] = -c * a
                    if j in rows:
                        heapq.heappush(heap, _Desc(j))
                else:
                    w = w - c * a
                    if w:
                        v[j] = w
                    else:
                        del v[j]
            if want_combo:
                axpy(combo, c, self.combos[k])
        return v, combo

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]

    def add(self, v: dict, tag: Hashable | None = None) -> bool:
        """Insert v; return True iff it was independent of the stored rows.

        When tracking, a dependent v contributes a kernel vector
        ``{tag: 1} - combination`` to :attr:`kernel`.
        """
        rem, combo = self.reduce(v, want_combo=self.track)
        if self.track:
            own = {tag: self.one}
            axpy(own, -1, combo)
        if not rem:
            if self.track:
                self.kernel.append(own)
            return False
        p = max(rem)
        inv = _inverse(rem[p])
        self.rows[p] = scaled(rem, inv)
        if self.track:
            self.combos[p] = scaled(own, inv)
        return True

    def solve(self, v: dict):
        """Return a combination of tags whose rows sum to v, or None."""
        if not self.track:
            raise ValueError("solve needs a tracking echelon")
        rem, combo = self.reduce(v, want_combo=True)
        if rem:
            return None
        return combo

    def pivots(self) -> list:
        return sorted(self.rows)


def rank_of(vectors: Iterable[dict]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def kernel_of(vectors: list[dict], field=None) -> list[dict]:
    """Kernel of the map sending tag i to vectors[i], as tag combinations."""
    e = Echelon(track=True, field=field)
    for i, v in enumerate(vectors):
        e.add(v, i)
    return e.kernel


def mat_inverse(m: list[list], field) -> list[list]:
    """Dense Gauss-Jordan inverse; raises ValueError when singular."""
    n = len(m)
    a = [[field(x) for x in row] + [field(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def mat_mul(a: list[list], b: list[list], field) -> list[list]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), field.zero) for j in range(cols)] for i in range(len(a))]


def transpose(a: list[list]) -> list[list]:
    return [list(r) for r in zip(*a)] if a else []


def mat_rank(a: list[list]) -> int:
    return rank_of({j: x for j, x in enumerate(row) if x} for row in a)
