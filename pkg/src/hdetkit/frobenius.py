"""Frobenius structure on a finite-dimensional Ext-algebra.

The form is (f, g) = e(f * g) with e dual to the basis vector of the
socle block.  Matrices of graded linear maps use the column convention:
``block[r][c]`` is the coefficient of basis vector r in the image of c.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .extalgebra import ExtAlgebra
from .linalg import kernel_of, mat_inverse, mat_mul, mat_rank, transpose

__all__ = [
    "SocleError",
    "DegeneratePairing",
    "GradedLinearMap",
    "FrobeniusData",
    "frobenius_form",
    "nakayama_of_E",
    "is_graded_symmetric",
    "xi_automorphism",
    "is_algebra_automorphism",
]


class SocleError(ValueError):
    pass


class DegeneratePairing(ValueError):
    pass


@dataclass
class GradedLinearMap:
    blocks: dict
    name: str = ""

    def compose(self, other: "GradedLinearMap", field, name: str | None = None) -> "GradedLinearMap":
        """self o other (other applied first)."""
        return GradedLinearMap({b: mat_mul(m, other.blocks[b], field) for b, m in self.blocks.items()}, name or f"{self.name}*{other.name}")

    def apply(self, E: ExtAlgebra, v: dict) -> dict:
        out: dict = {}
        for a, s in v.items():
            b = E.bidegree(a)
            blk = E.blocks[b]
            col = blk.index(a)
            for r, g in enumerate(blk):
                x = self.blocks[b][r][col]
                if x:
                    y = out.get(g, 0) + s * x
                    if y:
                        out[g] = y
                    else:
                        out.pop(g, None)
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedLinearMap):
            return NotImplemented
        return self.blocks == other.blocks


@dataclass
class FrobeniusData:
    E: ExtAlgebra
    socle_bidegree: tuple
    socle_index: int
    scale: object
    pairing: dict  # bidegree b -> matrix G_b[u][v] = (u, v), u in b, v in its complement
    nondegenerate: bool
    nakayama: GradedLinearMap | None = None
    graded_symmetric: bool | None = None
    notes: list = dc_field(default_factory=list)

    def complement(self, b: tuple) -> tuple:
        d, m = self.socle_bidegree
        return (d - b[0], m - b[1])

    def form(self, x: dict, y: dict):
        """(x, y) for arbitrary vectors."""
        v = self.E.mul(x, y).get(self.socle_index, 0)
        return self.scale * v


def _socles(E: ExtAlgebra):
    """Right and left socles: vectors killed by E^{>=1} on the right, resp. left."""
    pos = [a for a in range(E.dim) if E.elems[a][0] >= 1]
    out = []
    for side in ("right", "left"):
        vecs = []
        for v in range(E.dim):
            img = {}
            for k, x in enumerate(pos):
                prod = E.products[(v, x)] if side == "right" else E.products[(x, v)]
                for c, s in prod.items():
                    img[(k, c)] = s
            vecs.append(img)
        out.append(kernel_of(vecs, E.field))
    return out


def frobenius_form(E: ExtAlgebra, scale=1) -> FrobeniusData:
    if not E.complete:
        raise SocleError("Ext-algebra is truncated; its socle is not determined")
    right, left = _socles(E)
    if len(right) != 1 or len(left) != 1:
        raise SocleError(f"socle is not 1-dimensional (right {len(right)}, left {len(left)})")
    soc = right[0]
    if len(soc) != 1 or left[0].keys() != soc.keys():
        raise SocleError("left and right socles differ or are not spanned by a basis vector")
    (s_idx,) = soc
    sb = E.bidegree(s_idx)
    field = E.field
    scale = field(scale)
    F = FrobeniusData(E, sb, s_idx, scale, {}, True)
    for b, blk in E.blocks.items():
        cb = F.complement(b)
        other = E.blocks.get(cb, [])
        G = [[scale * E.products[(u, v)].get(s_idx, field.zero) for v in other] for u in blk]
        F.pairing[b] = G
        if len(other) != len(blk) or mat_rank(G) != len(blk):
            F.nondegenerate = False
    return F


def nakayama_of_E(F: FrobeniusData) -> GradedLinearMap:
    """The automorphism mu with (x, y) = (mu(y), x)."""
    if not F.nondegenerate:
        raise DegeneratePairing("pairing is degenerate")
    field = F.E.field
    blocks = {}
    for b in F.E.blocks:
        G = F.pairing[b]
        Gc = F.pairing[F.complement(b)]
        blocks[b] = mat_mul(mat_inverse(transpose(G), field), Gc, field)
    mu = GradedLinearMap(blocks, "mu_E")
    F.nakayama = mu
    return mu


def xi_automorphism(a, b, E: ExtAlgebra, name: str | None = None) -> GradedLinearMap:
    """x -> a^i b^j x on E^{i,j}."""
    field = E.field
    a, b = field(a), field(b)
    if not a or not b:
        raise ValueError("xi needs nonzero scalars")
    blocks = {}
    for (i, j), blk in E.blocks.items():
        s = a ** i * b ** j
        blocks[(i, j)] = [[s if r == c else field.zero for c in range(len(blk))] for r in range(len(blk))]
    return GradedLinearMap(blocks, name or f"xi_{a},{b}")


def is_graded_symmetric(mu: GradedLinearMap, d: int, E: ExtAlgebra) -> bool:
    return mu == xi_automorphism((-1) ** (d + 1), 1, E)


def is_algebra_automorphism(mu: GradedLinearMap, E: ExtAlgebra) -> bool:
    if mu.apply(E, {E.unit: 1}) != {E.unit: E.field.one}:
        return False
    images = [mu.apply(E, {a: 1}) for a in range(E.dim)]
    for a in range(E.dim):
        for b in range(E.dim):
            if mu.apply(E, E.products[(a, b)]) != E.mul(images[a], images[b]):
                return False
    return True
