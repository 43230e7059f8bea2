"""Zhang graded twists A^sigma with a * b = sigma^{|b|}(a) b."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .complexes import twist_poly
from .freealg import NcPoly, deglex_key
from .groebner import CapExceeded, GroebnerData, compute_gb
from .linalg import Echelon, axpy
from .presentation import AlgebraPresentation, AutomorphismSpec, check_is_automorphism
from .resolution import betti_table, minimal_resolution

__all__ = ["TwistSpec", "graded_twist", "star_word", "twist_roundtrip_check"]


@dataclass(frozen=True)
class TwistSpec:
    base: AlgebraPresentation
    sigma: AutomorphismSpec


def _sigma_power(gb: GroebnerData, sigma: AutomorphismSpec, k: int, p: dict) -> dict:
    for _ in range(k):
        p = twist_poly(gb, sigma, p)
    return p


def star_word(gb: GroebnerData, sigma: AutomorphismSpec, w: tuple) -> dict:
    """The left-associated star product of the generators in w, in A."""
    one = gb.field.one
    degs = gb.degrees
    out = {(): one}
    rest = sum(degs[g] for g in w)
    for g in w:
        rest -= degs[g]
        out = gb.mul_dict(out, _sigma_power(gb, sigma, rest, {(g,): one}))
    return out


def _free_words(degs, n):
    """All words of weighted degree n in the free algebra."""
    if n == 0:
        return [()]
    out = []
    for g, dg in enumerate(degs):
        if dg <= n:
            out += [u + (g,) for u in _free_words(degs, n - dg)]
    return out


def graded_twist(T: TwistSpec, cap: int | None = None, gb: GroebnerData | None = None, name: str | None = None) -> AlgebraPresentation:
    A, sigma = T.base, T.sigma
    top = A.max_relation_degree
    cap = top if cap is None else cap
    if cap < top:
        raise CapExceeded(f"cap {cap} below the relation degree {top}")
    gb = gb if gb is not None else compute_gb(A, cap)
    if not check_is_automorphism(sigma, A, gb):
        raise ValueError(f"{sigma.name} is not a graded automorphism")
    field, degs = A.field, A.gen_degrees
    rels: list = []
    for n in range(2, top + 1):
        words = sorted(_free_words(degs, n), key=lambda w: deglex_key(w, degs))
        key = {w: deglex_key(w, degs) for w in words}
        # ideal generated by lower twisted relations, degree n part
        ideal = Echelon()
        for r in rels:
            dr = A.degree_of(r)
            for a in range(0, n - dr + 1):
                for u in _free_words(degs, a):
                    for v in _free_words(degs, n - dr - a):
                        ideal.add({key[u + w + v]: c for w, c in r.terms.items()})
        ker = Echelon(track=True, field=field)
        for w in words:
            img = star_word(gb, sigma, w)
            ker.add({deglex_key(u, degs): c for u, c in img.items()}, key[w])
        new = Echelon()
        for z in ker.kernel:
            rem, _ = ideal.reduce(z)
            if rem:
                new.add(rem)
        # fully reduced, monic, deglex echelon basis
        done: dict = {}
        for p in sorted(new.rows):
            row = dict(new.rows[p])
            for q in list(row):
                if q != p and q in done:
                    axpy(row, -row[q], done[q])
            done[p] = row
        for p in sorted(done, reverse=True):
            rels.append(NcPoly(field, {k[2]: c for k, c in done[p].items()}))
    return AlgebraPresentation(
        field=field,
        gen_names=A.gen_names,
        gen_degrees=degs,
        relations=rels,
        autos={},
        cap_internal=A.cap_internal,
        cap_homological=A.cap_homological,
    )


def twist_roundtrip_check(A: AlgebraPresentation, sigma: AutomorphismSpec, cap: int, cap_homological: int | None = None) -> bool:
    """Hilbert dimensions and Betti tables of A and A^sigma agree up to the caps."""
    hcap = A.cap_homological if cap_homological is None else cap_homological
    gb = compute_gb(A, cap)
    B = graded_twist(TwistSpec(A, sigma), cap=max(cap, A.max_relation_degree), gb=compute_gb(A, max(cap, A.max_relation_degree)))
    gbB = compute_gb(B, cap)
    if gb.hilbert_dims(cap) != gbB.hilbert_dims(cap):
        return False
    PA = minimal_resolution(A, gb, cap, hcap)
    PB = minimal_resolution(B, gbB, cap, hcap)
    return betti_table(PA) == betti_table(PB)
