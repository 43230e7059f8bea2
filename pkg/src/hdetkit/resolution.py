"""Minimal graded free resolution of the trivial module k and the (d, l) signature.

The resolution is built position by position.  In each internal degree
n the images of the already chosen generators span A_{>=1} K in degree n;
the kernel vectors of the previous differential that this span misses
become new generators, so every differential entry lies in A_{>=1}.

The Gorenstein test reads Ext^i(k, A) off Hom_A(P, A) degree by degree.
Ext^i(k, A) in internal degree m is computed from maps that raise
degree by m; a class in Ext^d(k, A) = k(l) sits at m = -l.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .complexes import ChainComplex, GradedFreeModule, ModuleMap
from .groebner import GroebnerData
from .linalg import Echelon, rank_of

__all__ = ["Resolution", "GorensteinSignature", "minimal_resolution", "gorenstein_signature", "betti_table"]


def wkey(w):
    return (len(w), w)


def coords_of(elem: dict) -> dict:
    """Module element (gen -> polydict) to flat coordinates (gen, len, word)."""
    out = {}
    for r, p in elem.items():
        for w, c in p.items():
            out[(r, len(w), w)] = c
    return out


def elem_of(coords: dict) -> dict:
    out: dict = {}
    for (r, _, w), c in coords.items():
        if c:
            out.setdefault(r, {})[w] = c
    return out


@dataclass
class Resolution:
    gb: GroebnerData
    complex: ChainComplex
    v_degrees: list
    cap_internal: int
    cap_homological: int
    terminated: bool
    complete: list
    solvers: dict = dc_field(repr=False, default_factory=dict)
    kernels: dict = dc_field(repr=False, default_factory=dict)
    notes: list = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        """Largest i with V^(-i) != 0 (within the caps)."""
        return len(self.v_degrees) - 1

    def term(self, i: int) -> GradedFreeModule:
        return self.complex.term(-i)

    def differential(self, i: int) -> ModuleMap:
        """d^(-i): P^(-i) -> P^(-i+1)."""
        return self.complex.diff(-i)

    def solve(self, i: int, n: int, target: dict):
        """Element x of P^(-i) in degree n with d x = target, or None."""
        ech = self.solvers.get((i, n))
        if ech is None:
            if not target:
                return {}
            return None
        sol = ech.solve(coords_of(target))
        if sol is None:
            return None
        return elem_of(sol)

    def kernel_basis(self, i: int, n: int) -> list:
        """Basis of ker d^(-i) in internal degree n, as module elements."""
        return [elem_of(v) for v in self.kernels.get((i, n), [])]

    def is_minimal(self) -> bool:
        for p, d in self.complex.diffs.items():
            for row in d.rows:
                for poly in row.values():
                    if () in poly:
                        return False
        return True


def minimal_resolution(A, gb: GroebnerData, cap_internal: int, cap_homological: int) -> Resolution:
    N = cap_internal
    if gb.complete_to_degree < N:
        raise ValueError(f"Groebner data complete to {gb.complete_to_degree} < cap_internal {N}")
    one = gb.field.one
    terms = {0: GradedFreeModule((0,))}
    diffs = {}
    v_degrees = [[0]]
    solvers: dict = {}
    kernels: dict = {}
    notes = []
    # kernel of the augmentation P^(0) = A -> k
    prev_kernel = {n: [{(0, len(w), w): one} for w in gb.basis_of_degree(n)] for n in range(1, N + 1)}
    kernels.update({(0, n): v for n, v in prev_kernel.items()})
    terminated = False
    complete = [True]
    min_gen = min(gb.degrees, default=1)
    for i in range(1, cap_homological + 1):
        gens: list = []
        gdeg: list = []
        cur_kernel = {}
        for n in range(0, N + 1):
            ech = Echelon(track=True, field=gb.field)
            for t, img in enumerate(gens):
                for w in gb.basis_of_degree(n - gdeg[t]):
                    row: dict = {}
                    wd = {w: one}
                    for r, p in img.items():
                        for u, c in gb.mul_dict(wd, p).items():
                            row[(r, len(u), u)] = c
                    ech.add(row, (t, len(w), w))
            for kv in prev_kernel.get(n, ()):
                rem, _ = ech.reduce(kv)
                if rem:
                    t = len(gens)
                    gens.append(elem_of(rem))
                    gdeg.append(n)
                    ech.add(rem, (t, 0, ()))
            solvers[(i, n)] = ech
            cur_kernel[n] = ech.kernel
            kernels[(i, n)] = ech.kernel
        if not gens:
            terminated = True
            break
        src = GradedFreeModule(tuple(gdeg))
        terms[-i] = src
        diffs[-i] = ModuleMap(src, terms[-i + 1], gens)
        v_degrees.append(gdeg)
        ok = max(gdeg) < N and i * min_gen <= N
        complete.append(ok)
        if not ok:
            notes.append(f"position {-i}: generators reach internal degree {max(gdeg)} = cap {N}; higher syzygies may be hidden")
        prev_kernel = cur_kernel
    if not terminated:
        notes.append(f"resolution not terminated within cap_homological={cap_homological}")
    return Resolution(
        gb=gb,
        complex=ChainComplex(terms, diffs),
        v_degrees=v_degrees,
        cap_internal=N,
        cap_homological=cap_homological,
        terminated=terminated,
        complete=complete,
        solvers=solvers,
        kernels=kernels,
        notes=notes,
    )


def betti_table(P: Resolution) -> dict:
    table: dict = {}
    for i, degs in enumerate(P.v_degrees):
        for n in degs:
            table[(i, n)] = table.get((i, n), 0) + 1
    return table


# ------------------------------------------------------------------ Ext(k, A)


@dataclass
class GorensteinSignature:
    d: int | None
    ell: int | None
    regular: bool | None
    gorenstein_ok: bool | None
    ext_classes: list = dc_field(default_factory=list)
    reason: str = ""


def dual_cochain_basis(P: Resolution, i: int, m: int) -> list:
    """Basis of Hom_A(P^(-i), A) in degree m: pairs (gen c, normal word of degree n_c + m)."""
    gb = P.gb
    out = []
    for c, n in enumerate(P.term(i).degrees):
        for w in gb.basis_of_degree(n + m):
            out.append((c, len(w), w))
    return out


def dual_coboundary(P: Resolution, i: int, m: int, psi: dict) -> dict:
    """delta: Hom(P^(-i+1), A) -> Hom(P^(-i), A), (delta psi)(e_c) = sum_r d[c][r] psi(e_r)."""
    gb = P.gb
    out: dict = {}
    if i > P.length:
        return out
    d = P.differential(i)
    for c, row in enumerate(d.rows):
        for r, ent in row.items():
            val = psi.get(r)
            if not val:
                continue
            for u, a in gb.mul_dict(ent, val).items():
                key = (c, len(u), u)
                v = out.get(key, 0) + a
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def _dual_rank(P: Resolution, i: int, m: int) -> int:
    """Rank of delta into position i in degree m."""
    if i < 1 or i > P.length:
        return 0
    vecs = []
    for (r, _, w) in dual_cochain_basis(P, i - 1, m):
        vecs.append(dual_coboundary(P, i, m, {r: {w: P.gb.field.one}}))
    return rank_of(vecs)


def ext_k_A(P: Resolution) -> tuple[list, list]:
    """Nonzero Ext^i(k, A)_m, as (i, m, dim) triples, plus the honest positions."""
    N = P.cap_internal
    D = P.length
    honest = list(range(0, D + 1)) if P.terminated else list(range(0, D))
    found = []
    for i in honest:
        around = [n for k in (i - 1, i, i + 1) if 0 <= k <= D for n in P.v_degrees[k]]
        here = P.v_degrees[i]
        lo, hi = -max(here), N - max(around)
        for m in range(lo, hi + 1):
            dim_c = len(dual_cochain_basis(P, i, m))
            if not dim_c:
                continue
            h = dim_c - _dual_rank(P, i, m) - _dual_rank(P, i + 1, m)
            if h:
                found.append((i, m, h))
    return found, honest


def gorenstein_signature(P: Resolution) -> GorensteinSignature:
    found, honest = ext_k_A(P)
    if P.terminated:
        if len(found) == 1 and found[0][2] == 1:
            d, m, _ = found[0]
            regular = d == P.length and len(P.v_degrees[d]) == 1
            return GorensteinSignature(d, -m, regular, True, found)
        return GorensteinSignature(None, None, False, False, found, "Ext(k, A) not concentrated in one 1-dimensional class")
    positions = {f[0] for f in found}
    if len(positions) > 1 or any(f[2] > 1 for f in found):
        return GorensteinSignature(None, None, False, False, found, "Ext(k, A) not concentrated in one 1-dimensional class")
    reason = f"resolution does not terminate within cap_homological={P.cap_homological}; inconclusive"
    return GorensteinSignature(None, None, None, None, found, reason)
