"""Koszul signs for shifts of tensor products and Hom complexes.

A small model over a field: a complex of finite-dimensional vector
spaces is a dict of dimensions plus dense differential matrices acting
on column vectors, ``d[p]`` of shape dim X^{p+1} x dim X^p.  The maps
below are the standard interchange isomorphisms

    t1: Sigma X (x) Y -> Sigma (X (x) Y),       sx (x) y -> s(x (x) y)
    t2: X (x) Sigma Y -> Sigma (X (x) Y),       x (x) sy -> (-1)^|x| s(x (x) y)
    u:  X (x) Y -> Sigma^-1 X (x) Sigma Y,     x (x) y -> (-1)^|x| s^-1 x (x) sy
    h1: Hom(Sigma X, Y) -> Sigma^-1 Hom(X, Y), f -> (-1)^|f| s^-1 (f o s)
    h2: Hom(X, Sigma Y) -> Sigma Hom(X, Y),    f -> s (s^-1 o f)

each returned as a family of matrices between the relevant terms so
that the chain-map property can be checked directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import kernel_of

__all__ = ["VComplex", "tensor", "hom", "sigma", "t1", "t2", "u_map", "h1_map", "h2_map", "is_chain_map", "random_complex"]


def _zeros(r, c, F):
    return [[F.zero] * c for _ in range(r)]


def _mm(a, b, F, rows, cols):
    inner = len(b)
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), F.zero) for j in range(cols)] for i in range(rows)]


@dataclass
class VComplex:
    field: object
    dims: dict
    d: dict

    def dim(self, p: int) -> int:
        return self.dims.get(p, 0)

    def diff(self, p: int):
        m = self.d.get(p)
        if m is None:
            return _zeros(self.dim(p + 1), self.dim(p), self.field)
        return m

    def positions(self):
        return sorted(p for p, n in self.dims.items() if n)

    def d_squared_zero(self) -> bool:
        F = self.field
        for p in self.positions():
            m = _mm(self.diff(p + 1), self.diff(p), F, self.dim(p + 2), self.dim(p))
            if any(x for row in m for x in row):
                return False
        return True


def sigma(X: VComplex, k: int = 1) -> VComplex:
    """(Sigma X)^p = X^{p+1}, differential -d (sign (-1)^k in general)."""
    s = -1 if k % 2 else 1
    dims = {p - k: n for p, n in X.dims.items()}
    d = {p - k: [[s * x for x in row] for row in m] for p, m in X.d.items()}
    return VComplex(X.field, dims, d)


def _tensor_index(X: VComplex, Y: VComplex, n: int):
    """Basis of (X (x) Y)^n as ordered (p, a, q, b)."""
    out = []
    for p in X.positions():
        q = n - p
        for a in range(X.dim(p)):
            for b in range(Y.dim(q)):
                out.append((p, a, q, b))
    return out


def tensor(X: VComplex, Y: VComplex) -> tuple[VComplex, dict]:
    """X (x) Y with d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy; also returns the bases."""
    F = X.field
    lo = min(X.positions(), default=0) + min(Y.positions(), default=0)
    hi = max(X.positions(), default=0) + max(Y.positions(), default=0)
    bases = {n: _tensor_index(X, Y, n) for n in range(lo, hi + 1)}
    dims = {n: len(b) for n, b in bases.items()}
    d = {}
    for n in range(lo, hi):
        src, tgt = bases[n], bases.get(n + 1, [])
        pos = {t: i for i, t in enumerate(tgt)}
        m = _zeros(len(tgt), len(src), F)
        for j, (p, a, q, b) in enumerate(src):
            dx = X.diff(p)
            for a2 in range(X.dim(p + 1)):
                if dx[a2][a]:
                    m[pos[(p + 1, a2, q, b)]][j] += dx[a2][a]
            dy = Y.diff(q)
            sgn = -1 if p % 2 else 1
            for b2 in range(Y.dim(q + 1)):
                if dy[b2][b]:
                    m[pos[(p, a, q + 1, b2)]][j] += sgn * dy[b2][b]
        d[n] = m
    return VComplex(F, dims, d), bases


def _hom_index(X: VComplex, Y: VComplex, n: int):
    out = []
    for p in X.positions():
        for a in range(X.dim(p)):
            for b in range(Y.dim(p + n)):
                out.append((p, a, b))
    return out


def hom(X: VComplex, Y: VComplex) -> tuple[VComplex, dict]:
    """Hom(X, Y) with d(f) = d_Y f - (-1)^|f| f d_X; basis (p, a, b) is e_a -> e_b on X^p."""
    F = X.field
    xs, ys = X.positions(), Y.positions()
    if not xs or not ys:
        return VComplex(F, {}, {}), {}
    lo, hi = min(ys) - max(xs), max(ys) - min(xs)
    bases = {n: _hom_index(X, Y, n) for n in range(lo, hi + 1)}
    dims = {n: len(b) for n, b in bases.items()}
    d = {}
    for n in range(lo, hi):
        src, tgt = bases[n], bases[n + 1]
        pos = {t: i for i, t in enumerate(tgt)}
        m = _zeros(len(tgt), len(src), F)
        sgn = -1 if n % 2 else 1
        for j, (p, a, b) in enumerate(src):
            # d_Y o f: e_a -> d_Y e_b
            dy = Y.diff(p + n)
            for b2 in range(Y.dim(p + n + 1)):
                if dy[b2][b]:
                    m[pos[(p, a, b2)]][j] += dy[b2][b]
            # f o d_X on X^{p-1}: e_{a0} -> (d_X)[a][a0] e_b
            dx = X.diff(p - 1)
            for a0 in range(X.dim(p - 1)):
                if dx[a][a0]:
                    m[pos[(p - 1, a0, b)]][j] -= sgn * dx[a][a0]
        d[n] = m
    return VComplex(F, dims, d), bases


def _perm_map(src_basis, tgt_basis, image, F):
    """Matrix sending basis element t to sign * basis element image(t)."""
    pos = {t: i for i, t in enumerate(tgt_basis)}
    m = _zeros(len(tgt_basis), len(src_basis), F)
    for j, t in enumerate(src_basis):
        key, s = image(t)
        m[pos[key]][j] = F(s)
    return m


def t1(X: VComplex, Y: VComplex):
    """Returns (source, target, maps) with maps[n]: source^n -> target^n."""
    F = X.field
    S, sb = tensor(sigma(X), Y)
    T0, tb = tensor(X, Y)
    T = sigma(T0)
    maps = {}
    for n, basis in sb.items():
        # (sigma X)^p = X^{p+1}; lands in (X (x) Y)^{n+1} = (Sigma(X (x) Y))^n
        maps[n] = _perm_map(basis, tb.get(n + 1, []), lambda t: ((t[0] + 1, t[1], t[2], t[3]), 1), F)
    return S, T, maps


def t2(X: VComplex, Y: VComplex):
    F = X.field
    S, sb = tensor(X, sigma(Y))
    T0, tb = tensor(X, Y)
    T = sigma(T0)
    maps = {}
    for n, basis in sb.items():
        maps[n] = _perm_map(basis, tb.get(n + 1, []), lambda t: ((t[0], t[1], t[2] + 1, t[3]), -1 if t[0] % 2 else 1), F)
    return S, T, maps


def u_map(X: VComplex, Y: VComplex):
    F = X.field
    S, sb = tensor(X, Y)
    T, tb = tensor(sigma(X, -1), sigma(Y))
    maps = {}
    for n, basis in sb.items():
        # x in X^p sits in (Sigma^-1 X)^{p+1}; y in Y^q sits in (Sigma Y)^{q-1}
        maps[n] = _perm_map(basis, tb.get(n, []), lambda t: ((t[0] + 1, t[1], t[2] - 1, t[3]), -1 if t[0] % 2 else 1), F)
    return S, T, maps


def h1_map(X: VComplex, Y: VComplex):
    F = X.field
    S, sb = hom(sigma(X), Y)
    H, hb = hom(X, Y)
    T = sigma(H, -1)
    maps = {}
    for n, basis in sb.items():
        # f o s has degree n - 1, which is degree n of Sigma^-1 Hom
        sgn = -1 if n % 2 else 1
        maps[n] = _perm_map(basis, hb.get(n - 1, []), lambda t: ((t[0] + 1, t[1], t[2]), sgn), F)
    return S, T, maps


def h2_map(X: VComplex, Y: VComplex):
    F = X.field
    S, sb = hom(X, sigma(Y))
    H, hb = hom(X, Y)
    T = sigma(H)
    maps = {}
    for n, basis in sb.items():
        maps[n] = _perm_map(basis, hb.get(n + 1, []), lambda t: ((t[0], t[1], t[2]), 1), F)
    return S, T, maps


def is_chain_map(S: VComplex, T: VComplex, maps: dict) -> bool:
    """maps[n+1] d_S = d_T maps[n] for every n."""
    F = S.field
    for n in maps:
        if n + 1 not in maps:
            continue
        lhs = _mm(maps[n + 1], S.diff(n), F, T.dim(n + 1), S.dim(n))
        rhs = _mm(T.diff(n), maps[n], F, T.dim(n + 1), S.dim(n))
        if lhs != rhs:
            return False
    return True


def random_complex(rng: random.Random, dims: dict, field) -> VComplex:
    """Random complex with the given term dimensions (d^2 = 0 by construction)."""
    ps = sorted(dims)
    d = {}
    prev = None
    for p in ps:
        if p + 1 not in dims:
            prev = None
            continue
        rows, cols = dims[p + 1], dims[p]
        if prev is None:
            m = [[field(rng.randint(-2, 2)) for _ in range(cols)] for _ in range(rows)]
        else:
            # rows of d^p must kill the image of d^{p-1}: pick from its left kernel
            left = kernel_of([{j: prev[r][j] for j in range(len(prev[0])) if prev[r][j]} for r in range(len(prev))], field)
            m = []
            for _ in range(rows):
                v = [field.zero] * cols
                for z in left:
                    k = field(rng.randint(-2, 2))
                    for j, c in z.items():
                        v[j] += k * c
                m.append(v)
        d[p] = m
        prev = m
    return VComplex(field, dict(dims), d)
