"""Truncated two-sided Groebner bases in the free algebra, normal forms, Hilbert counts.

Completion runs degree by degree: at internal degree n the relations of
degree n and all overlap S-elements of degree n are reduced by the rules
found so far and echelonised together.  Homogeneity makes the result
complete in every degree <= cap.
"""

from __future__ import annotations

from collections import defaultdict

from .freealg import NcPoly, deglex_key, word_degree
from .linalg import Echelon, axpy
from .presentation import AlgebraPresentation

__all__ = ["GroebnerData", "CapExceeded", "compute_gb", "normal_form", "hilbert_dims", "basis_of_degree"]


class CapExceeded(ValueError):
    pass


class GroebnerData:
    """Rewrite rules ``lead -> tail`` plus cached arithmetic in A = k<x>/I."""

    def __init__(self, A: AlgebraPresentation, rules: dict, complete_to_degree: int):
        self.A = A
        self.field = A.field
        self.degrees = A.gen_degrees
        self.rules = rules
        self.complete_to_degree = complete_to_degree
        self._lens = sorted({len(w) for w in rules})
        self._nf_cache: dict = {}
        self._basis: dict = {}
        self._index: dict = {}

    # ---- words

    def word_degree(self, w) -> int:
        return word_degree(w, self.degrees)

    def _find_lead(self, w):
        rules = self.rules
        L = len(w)
        for m in self._lens:
            if m > L:
                break
            for i in range(L - m + 1):
                if w[i:i + m] in rules:
                    return i, m
        return None

    def is_normal(self, w) -> bool:
        return self._find_lead(w) is None

    def nf_word(self, w) -> dict:
        """Normal form of a single word as a dict (shared; do not mutate)."""
        hit = self._nf_cache.get(w)
        if hit is not None:
            return hit
        loc = self._find_lead(w)
        if loc is None:
            out = {w: self.field.one}
        else:
            i, m = loc
            pre, post = w[:i], w[i + m:]
            out = {}
            for t, c in self.rules[w[i:i + m]].items():
                axpy(out, c, self.nf_word(pre + t + post))
        self._nf_cache[w] = out
        return out

    def _check_degree(self, d: int):
        if d > self.complete_to_degree:
            raise CapExceeded(f"degree {d} exceeds Groebner completion degree {self.complete_to_degree}")

    def reduce_dict(self, p: dict) -> dict:
        out: dict = {}
        for w, c in p.items():
            self._check_degree(self.word_degree(w))
            axpy(out, c, self.nf_word(w))
        return out

    def normal_form(self, p: NcPoly) -> NcPoly:
        return NcPoly._raw(self.field, self.reduce_dict(p.terms))

    def mul_dict(self, p: dict, q: dict) -> dict:
        """Normal form of p*q for dicts of words."""
        out: dict = {}
        for u, a in p.items():
            for v, b in q.items():
                w = u + v
                self._check_degree(self.word_degree(w))
                axpy(out, a * b, self.nf_word(w))
        return out

    def mul(self, p: NcPoly, q: NcPoly) -> NcPoly:
        return NcPoly._raw(self.field, self.mul_dict(p.terms, q.terms))

    # ---- bases

    def basis_of_degree(self, n: int) -> list:
        """Deglex-ordered normal words of internal degree n."""
        if n < 0:
            return []
        self._check_degree(n)
        hit = self._basis.get(n)
        if hit is not None:
            return hit
        if n == 0:
            out = [()]
        else:
            found = set()
            for g, dg in enumerate(self.degrees):
                if dg > n:
                    continue
                for u in self.basis_of_degree(n - dg):
                    w = u + (g,)
                    if self.is_normal(w):
                        found.add(w)
            out = sorted(found, key=lambda w: deglex_key(w, self.degrees))
        self._basis[n] = out
        self._index[n] = {w: k for k, w in enumerate(out)}
        return out

    def index_in_degree(self, n: int) -> dict:
        self.basis_of_degree(n)
        return self._index[n]

    def dim(self, n: int) -> int:
        return len(self.basis_of_degree(n))

    def hilbert_dims(self, cap: int) -> list[int]:
        self._check_degree(cap)
        return [self.dim(n) for n in range(cap + 1)]

    def rule_polys(self) -> list[NcPoly]:
        """Each rule as the monic polynomial lead - tail, deglex ordered."""
        out = []
        for lead in sorted(self.rules, key=lambda w: deglex_key(w, self.degrees)):
            d = {lead: self.field.one}
            axpy(d, -1, self.rules[lead])
            out.append(NcPoly._raw(self.field, d))
        return out


def compute_gb(A: AlgebraPresentation, cap: int) -> GroebnerData:
    field, degs = A.field, A.gen_degrees
    rels_by_deg = defaultdict(list)
    for r in A.relations:
        rels_by_deg[A.degree_of(r)].append(dict(r.terms))
    overlaps = defaultdict(list)
    gb = GroebnerData(A, {}, 0)

    def add_overlaps(new_lead, leads):
        for l1 in leads:
            for a, b in ((l1, new_lead), (new_lead, l1)) if l1 != new_lead else ((l1, l1),):
                for k in range(1, min(len(a), len(b))):
                    if a[-k:] == b[:k]:
                        w = a + b[k:]
                        d = word_degree(w, degs)
                        if d <= cap:
                            overlaps[d].append((a, b, k))

    for n in range(1, cap + 1):
        gb.complete_to_degree = n - 1
        cands = list(rels_by_deg.get(n, ()))
        for a, b, k in overlaps.pop(n, ()):
            s: dict = {}
            for t, c in gb.rules[a].items():
                axpy(s, c, {t + b[k:]: 1})
            for t, c in gb.rules[b].items():
                axpy(s, -c, {a[:-k] + t: 1})
            cands.append(s)
        gb.complete_to_degree = n
        if not cands:
            continue
        ech = Echelon()
        for s in cands:
            red = {}
            for w, c in s.items():
                axpy(red, c, gb.nf_word(w))
            ech.add({deglex_key(w, degs): c for w, c in red.items()})
        if not ech.rows:
            continue
        # back-substitute so no tail mentions another new lead
        piv = sorted(ech.rows)
        done: dict = {}
        for p in piv:
            row = dict(ech.rows[p])
            for q in list(row):
                if q != p and q in done:
                    axpy(row, -row[q], done[q])
            done[p] = row
        old_leads = list(gb.rules)
        new_leads = []
        for p, row in done.items():
            lead = p[2]
            tail = {k[2]: -c for k, c in row.items() if k != p}
            gb.rules[lead] = tail
            new_leads.append(lead)
        gb._lens = sorted({len(w) for w in gb.rules})
        gb._nf_cache.clear()
        gb._basis.clear()
        gb._index.clear()
        for lead in new_leads:
            old_leads.append(lead)
            add_overlaps(lead, old_leads)
    gb.complete_to_degree = cap
    return gb


def normal_form(p: NcPoly, gb: GroebnerData) -> NcPoly:
    return gb.normal_form(p)


def hilbert_dims(gb: GroebnerData, cap: int) -> list[int]:
    return gb.hilbert_dims(cap)


def basis_of_degree(gb: GroebnerData, n: int) -> list:
    return gb.basis_of_degree(n)
