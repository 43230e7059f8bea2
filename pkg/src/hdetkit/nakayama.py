"""Lifting graded automorphisms to the resolution; f_sigma, hdet, mu_A and verdicts.

A sigma-linear lift phi: P -> P satisfies phi(a x) = sigma(a) phi(x) and
commutes with the differential.  Modulo A_{>=1} it gives the action
g -> sigma^{-1} o g o phi^(-i) on E^i, which is f_sigma.

hdet(sigma) is the scalar by which psi -> sigma^{-1} o psi o phi^(-d)
acts on the one-dimensional Ext^d(k, A).  For sigma = xi_c the lift is
multiplication by c^n on degree n generators, so the scalar is c^l,
and f_{xi_c} acts on E^{i,j} by c^{-j}: j is minus the generator degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .complexes import ModuleMap, apply_map, elem_add, twist_poly
from .extalgebra import ExtAlgebra, LiftError
from .freealg import NcPoly
from .frobenius import GradedLinearMap, xi_automorphism
from .linalg import Echelon, mat_inverse, mat_rank, transpose
from .presentation import AutomorphismSpec, check_is_automorphism
from .resolution import Resolution, dual_cochain_basis, dual_coboundary

__all__ = [
    "LiftedAutomorphism",
    "HdetResult",
    "NotAutomorphism",
    "NotGorenstein",
    "lift_automorphism",
    "f_sigma",
    "hdet",
    "recover_mu_A",
    "verdicts",
]


class NotAutomorphism(ValueError):
    pass


class NotGorenstein(ValueError):
    pass


@dataclass
class LiftedAutomorphism:
    sigma: AutomorphismSpec
    P: Resolution
    phi: dict  # i -> sigma-linear ModuleMap P^(-i) -> P^(-i)

    def constant_part(self, i: int) -> list:
        return self.phi[i].constant_part(self.P.gb.field)


@dataclass
class HdetResult:
    scalar: object
    sigma: str
    position: int = 0
    degree: int = 0


def lift_automorphism(sigma: AutomorphismSpec, P: Resolution, rng: random.Random | None = None, check: bool = True) -> LiftedAutomorphism:
    gb = P.gb
    field = gb.field
    if check and not check_is_automorphism(sigma, gb.A, gb):
        raise NotAutomorphism(f"{sigma.name} is not a graded automorphism")
    phi = {0: ModuleMap(P.term(0), P.term(0), [{0: {(): field.one}}], sigma)}
    for i in range(1, P.length + 1):
        src = P.term(i)
        d = P.differential(i)
        rows = []
        for c, n in enumerate(src.degrees):
            # phi(d e_c) = sum_r sigma(d[c][r]) phi(e_r)
            target = apply_map(gb, phi[i - 1], d.rows[c])
            x = P.solve(i, n, target)
            if x is None:
                raise LiftError(f"cannot lift {sigma.name} at position {-i}, internal degree {n}")
            if rng is not None:
                for z in P.kernel_basis(i, n):
                    k = rng.randint(-2, 2)
                    if k:
                        x = elem_add(x, z, k)
            rows.append(x)
        phi[i] = ModuleMap(src, src, rows, sigma)
        if mat_rank(phi[i].constant_part(field)) != src.rank:
            raise LiftError(f"lift of {sigma.name} is not invertible at position {-i}")
    return LiftedAutomorphism(sigma, P, phi)


def f_sigma(L: LiftedAutomorphism, E: ExtAlgebra) -> GradedLinearMap:
    """Action of sigma on E: the dual of phi modulo A_{>=1}, blockwise."""
    blocks = {}
    for (i, j), blk in E.blocks.items():
        m = L.constant_part(i)
        gens = [E.elems[a][2] for a in blk]
        blocks[(i, j)] = [[m[r][c] for c in gens] for r in gens]
    return GradedLinearMap(blocks, f"f_{L.sigma.name}")


def _inverse_on_degree(gb, sigma: AutomorphismSpec, m: int) -> dict:
    """sigma^{-1} on the normal words of A_m, as word -> polydict."""
    store = gb.__dict__.setdefault("_inv_cache", {})
    key = (sigma.images, m)
    hit = store.get(key)
    if hit is not None:
        return hit
    basis = gb.basis_of_degree(m)
    idx = {w: k for k, w in enumerate(basis)}
    field = gb.field
    mat = [[field.zero] * len(basis) for _ in basis]
    for c, w in enumerate(basis):
        for u, a in twist_poly(gb, sigma, {w: field.one}).items():
            mat[idx[u]][c] = a
    inv = mat_inverse(mat, field) if basis else []
    out = {w: {basis[r]: inv[r][c] for r in range(len(basis)) if inv[r][c]} for c, w in enumerate(basis)}
    store[key] = out
    return out


def _inverse_poly(gb, sigma, p: dict) -> dict:
    out: dict = {}
    for w, a in p.items():
        for u, b in _inverse_on_degree(gb, sigma, gb.word_degree(w))[w].items():
            v = out.get(u, 0) + a * b
            if v:
                out[u] = v
            else:
                out.pop(u, None)
    return out


def hdet(L: LiftedAutomorphism, P: Resolution, signature) -> HdetResult:
    if not signature.gorenstein_ok:
        raise NotGorenstein("hdet needs a Gorenstein signature")
    gb = P.gb
    d, m = signature.d, -signature.ell
    if d > P.length:
        raise NotGorenstein("resolution shorter than the Gorenstein position")
    one = gb.field.one
    ech = Echelon()
    for (r, _, w) in dual_cochain_basis(P, d - 1, m):
        ech.add(dual_coboundary(P, d, m, {r: {w: one}}))
    psi = None
    for (c, _, w) in dual_cochain_basis(P, d, m):
        cand = {(c, len(w), w): one}
        if d + 1 <= P.length and dual_coboundary(P, d + 1, m, {c: {w: one}}):
            continue
        rem, _ = ech.reduce(cand)
        if rem:
            psi = {c: {w: one}}
            break
    if psi is None:
        raise NotGorenstein(f"no cohomology class at position {d}, degree {m}")
    # psi' = sigma^{-1} o psi o phi^(-d)
    phi = L.phi[d]
    new: dict = {}
    for c, row in enumerate(phi.rows):
        val: dict = {}
        for r, a in row.items():
            p = psi.get(r)
            if p:
                for u, b in gb.mul_dict(a, p).items():
                    val[u] = val.get(u, 0) + b
        for u, b in _inverse_poly(gb, L.sigma, {u: b for u, b in val.items() if b}).items():
            new[(c, len(u), u)] = b
    old_rem, _ = ech.reduce({(c, len(w), w): a for c, p in psi.items() for w, a in p.items()})
    new_rem, _ = ech.reduce(new)
    k = max(old_rem)
    u = new_rem.get(k, gb.field.zero) / old_rem[k]
    diff = dict(new_rem)
    for key, a in old_rem.items():
        v = diff.get(key, 0) - u * a
        if v:
            diff[key] = v
        else:
            diff.pop(key, None)
    if diff:
        raise NotGorenstein("induced action does not preserve the top class")
    return HdetResult(u, L.sigma.name, d, m)


def recover_mu_A(mu_E: GradedLinearMap, d: int, A) -> AutomorphismSpec:
    """mu_A on A_1 from the E^{1,-1} block of mu_E: mu_E|E^1 = (-1)^{d+1} (mu_A|A_1)^*."""
    if not A.generated_in_degree_one:
        raise ValueError("recovery needs an algebra generated in degree 1")
    blk = mu_E.blocks[(1, -1)]
    s = 1 if (d + 1) % 2 == 0 else -1
    m = [[s * x for x in row] for row in transpose(blk)]
    return AutomorphismSpec.linear(A, m, "mu_A")


def _mat_str(F, m):
    return [[F.format(x) for x in row] for row in m]


def _diff_blocks(lhs: GradedLinearMap, rhs: GradedLinearMap, only=None) -> list:
    bad = []
    for b, m in lhs.blocks.items():
        if only is not None and b not in only:
            continue
        if m != rhs.blocks[b]:
            bad.append(b)
    return bad


@dataclass
class Verdicts:
    values: dict = dc_field(default_factory=dict)  # name -> True / False / None (skipped)
    reasons: dict = dc_field(default_factory=dict)

    def set(self, name, value, reason=""):
        self.values[name] = value
        if reason:
            self.reasons[name] = reason

    @property
    def failed(self) -> list:
        return [k for k, v in self.values.items() if v is False]


def verdicts(A, P: Resolution, E: ExtAlgebra, F, mu_A: AutomorphismSpec | None, signature, f_mu=None, h=None) -> Verdicts:
    V = Verdicts()
    field = E.field
    d, ell = signature.d, signature.ell
    mu_E = F.nakayama
    xi = xi_automorphism((-1) ** (d + 1), 1, E)
    V.set("graded_symmetric", mu_E == xi)
    V.set("epsilon_witness", bool(P.terminated))
    if mu_A is None:
        for k in ("T42_deg1", "T42_full", "T53", "T41"):
            V.set(k, None, "mu_A unavailable (algebra not generated in degree 1 and none declared)")
        return V
    if f_mu is None:
        f_mu = f_sigma(lift_automorphism(mu_A, P), E)
    rhs = xi.compose(f_mu, field)
    bad1 = _diff_blocks(mu_E, rhs, only=[b for b in E.blocks if b[0] == 1])
    V.set("T42_deg1", not bad1, f"mismatch on blocks {bad1}" if bad1 else "")
    bad = _diff_blocks(mu_E, rhs)
    V.set("T42_full", not bad, f"mismatch on blocks {bad}" if bad else "")
    if h is None:
        h = hdet(lift_automorphism(mu_A, P), P, signature)
    V.set("T53", h.scalar == 1, "" if h.scalar == 1 else f"hdet(mu_A) = {field.format(h.scalar)}")
    c = mu_A.scalar_form(A)
    if c is None:
        V.set("T41", None, "mu_A is not of the form xi_c")
    else:
        want = xi_automorphism((-1) ** (d + 1), 1 / field(c), E)
        ok_c = field(c) ** ell == 1
        ok_mu = mu_E == want
        why = []
        if not ok_c:
            why.append(f"c^l = {field.format(field(c) ** ell)}")
        if not ok_mu:
            why.append("mu_E differs from xi_{(-1)^{d+1}, c^{-1}}")
        V.set("T41", ok_c and ok_mu, "; ".join(why))
    return V
