"""The bigraded Ext-algebra E(k) = Ext_A(k, k) and its Yoneda product.

E^{i,j} is the dual of the degree -j generators of V^(-i).  A basis
element b of E^{k,l} is lifted to a chain map P -> Sigma^k T^l P whose
bottom component sends each generator to b(e) e_0; products are graded
composites of such lifts, read off modulo A_{>=1}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .complexes import ChainMap, ModuleMap, elem_add, elem_lmul, graded_compose
from .resolution import Resolution

__all__ = ["ExtAlgebra", "LiftError", "ext_basis", "lift_class", "yoneda_product", "fill_products", "check_associativity", "check_unit", "ext_algebra"]


class LiftError(ValueError):
    pass


@dataclass
class ExtAlgebra:
    P: Resolution
    elems: list  # global index -> (i, j, generator index in V^(-i))
    blocks: dict  # (i, j) -> list of global indices
    unit: int = 0
    products: dict = dc_field(default_factory=dict)
    complete: bool = True
    d: int | None = None
    ell: int | None = None

    @property
    def field(self):
        return self.P.gb.field

    @property
    def dim(self) -> int:
        return len(self.elems)

    def bidegree(self, a: int) -> tuple:
        i, j, _ = self.elems[a]
        return (i, j)

    def dims(self) -> dict:
        return {b: len(v) for b, v in sorted(self.blocks.items())}

    def mul(self, x: dict, y: dict) -> dict:
        """Product of two vectors (dicts index -> scalar) via structure constants."""
        out: dict = {}
        for a, s in x.items():
            for b, t in y.items():
                for c, u in self.products[(a, b)].items():
                    v = out.get(c, 0) + s * t * u
                    if v:
                        out[c] = v
                    else:
                        out.pop(c, None)
        return out

    def label(self, a: int) -> str:
        i, j, c = self.elems[a]
        return f"E{i},{j}[{self.blocks[(i, j)].index(a)}]"


def ext_basis(P: Resolution) -> ExtAlgebra:
    elems, blocks = [], {}
    top = P.length if P.terminated else P.length - 1
    for i in range(0, top + 1):
        for c, n in enumerate(P.v_degrees[i]):
            blocks.setdefault((i, -n), []).append(len(elems))
            elems.append((i, -n, c))
    order = sorted(range(len(elems)), key=lambda a: (elems[a][0], -elems[a][1], elems[a][2]))
    remap = {old: new for new, old in enumerate(order)}
    elems = [elems[a] for a in order]
    blocks = {b: sorted(remap[a] for a in v) for b, v in blocks.items()}
    return ExtAlgebra(P, elems, dict(sorted(blocks.items())), 0, {}, P.terminated)


def lift_class(P: Resolution, i: int, n: int, bottom: dict, depth: int | None = None, rng: random.Random | None = None) -> ChainMap:
    """Lift the cocycle ``e_c -> bottom[c]`` on V^(-i) (degree n generators) to a chain map.

    The result has shift i and internal shift -n.  With ``rng`` every
    solved component is perturbed by a random cycle, which changes the
    lift within its homotopy class.
    """
    gb = P.gb
    field = gb.field
    X = P.complex
    depth = P.length if depth is None else min(depth, P.length)
    sgn = -1 if i % 2 else 1
    comps = {}
    src = P.term(i)
    rows = []
    for c, deg in enumerate(src.degrees):
        row = {}
        v = bottom.get(c)
        if v and deg == n:
            row[0] = {(): field(v)}
        rows.append(_perturb(P, 0, deg - n, row, rng))
    comps[-i] = ModuleMap(src, P.term(0), rows)
    for s in range(1, depth - i + 1):
        p = -i - s
        src, tgt = P.term(i + s), P.term(s)
        d = P.differential(i + s)
        prev = comps[p + 1]
        rows = []
        for c, deg in enumerate(src.degrees):
            target: dict = {}
            for r, ent in d.rows[c].items():
                target = elem_add(target, elem_lmul(gb, ent, prev.rows[r]), sgn)
            x = P.solve(s, deg - n, target)
            if x is None:
                raise LiftError(f"cannot lift at position {p}, internal degree {deg - n}")
            rows.append(_perturb(P, s, deg - n, x, rng))
        comps[p] = ModuleMap(src, tgt, rows)
    return ChainMap(X, X, i, -n, comps)


def _perturb(P: Resolution, s: int, n: int, x: dict, rng):
    if rng is None:
        return x
    for z in P.kernel_basis(s, n):
        k = rng.randint(-2, 2)
        if k:
            x = elem_add(x, z, k)
    return x


def _basis_lift(E: ExtAlgebra, a: int, rng=None) -> ChainMap:
    cache = E.__dict__.setdefault("_lifts", {})
    if rng is None and a in cache:
        return cache[a]
    i, j, c = E.elems[a]
    f = lift_class(E.P, i, -j, {c: 1}, rng=rng)
    if rng is None:
        cache[a] = f
    return f


def yoneda_product(E: ExtAlgebra, a: int, b: int, rng: random.Random | None = None) -> dict:
    """a * b as a vector on the basis of E^{i_a + i_b, j_a + j_b}."""
    ia, ja, _ = E.elems[a]
    ib, jb, _ = E.elems[b]
    blk = E.blocks.get((ia + ib, ja + jb))
    if not blk:
        return {}
    alpha = _basis_lift(E, a, rng)
    beta = _basis_lift(E, b, rng)
    prod = graded_compose(E.P.gb, alpha, beta)
    m = prod.comp(-(ia + ib)).constant_part(E.field)
    out = {}
    for g in blk:
        v = m[E.elems[g][2]][0]
        if v:
            out[g] = v
    return out


def fill_products(E: ExtAlgebra) -> ExtAlgebra:
    for a in range(E.dim):
        for b in range(E.dim):
            E.products[(a, b)] = yoneda_product(E, a, b)
    return E


def ext_algebra(P: Resolution, signature=None) -> ExtAlgebra:
    E = fill_products(ext_basis(P))
    if signature is not None:
        E.d, E.ell = signature.d, signature.ell
    return E


def check_associativity(E: ExtAlgebra) -> bool:
    n = E.dim
    for a in range(n):
        for b in range(n):
            ab = E.products[(a, b)]
            for c in range(n):
                if E.mul(ab, {c: 1}) != E.mul({a: 1}, E.products[(b, c)]):
                    return False
    return True


def check_unit(E: ExtAlgebra) -> bool:
    return all(E.products[(E.unit, a)] == {a: 1} == E.products[(a, E.unit)] for a in range(E.dim))
