"""Bounded complexes of graded free left A-modules and maps between them.

Conventions
-----------
* An element of a free module ``A e_0 + ... + A e_{r-1}`` is a dict
  ``r -> polydict`` (polydict: normal word -> scalar).
* A :class:`ModuleMap` stores one row per source generator:
  ``rows[c][r]`` is the coefficient of ``e'_r`` in the image of ``e_c``.
  Elements are row vectors, so ``g o f`` has matrix ``F . G``.
* A sigma-twisted map satisfies ``phi(a x) = sigma(a) phi(x)``.
* Complexes are cohomological: ``diffs[p]`` maps position p to p + 1.
* A :class:`ChainMap` of bidegree (n, j) is an element of
  ``Hom(X, Sigma^n T^j Y)`` stored by its raw components
  ``X^p -> Y^{p+n}``; it satisfies ``d_Y f = (-1)^n f d_X``.
* ``Sigma`` on a map of cohomological degree n multiplies it by (-1)^n
  (so the differential of ``Sigma X`` is ``-d``); ``T`` never adds signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .freealg import NcPoly
from .linalg import Echelon, axpy, scaled
from .presentation import AutomorphismSpec, apply_automorphism

__all__ = [
    "GradedFreeModule",
    "ModuleMap",
    "ChainComplex",
    "ChainMap",
    "elem_lmul",
    "apply_map",
    "compose_maps",
    "shift_sigma",
    "shift_sigma_map",
    "shift_T",
    "shift_T_map",
    "compose",
    "graded_compose",
    "identity_map",
    "suspension",
    "desuspension",
    "h1",
    "h2",
    "homotopy_equal",
    "ComposeError",
]


class ComposeError(ValueError):
    pass


@dataclass(frozen=True)
class GradedFreeModule:
    degrees: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def shifted(self, j: int) -> "GradedFreeModule":
        return GradedFreeModule(tuple(d - j for d in self.degrees))


def _clean_row(row: dict) -> dict:
    return {r: p for r, p in row.items() if p}


class ModuleMap:
    __slots__ = ("source", "target", "rows", "twist")

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule, rows, twist: AutomorphismSpec | None = None):
        self.source = source
        self.target = target
        self.rows = [_clean_row(r) for r in rows]
        self.twist = twist
        if len(self.rows) != source.rank:
            raise ValueError("one row per source generator")

    @classmethod
    def zero(cls, source, target, twist=None) -> "ModuleMap":
        return cls(source, target, [{} for _ in source.degrees], twist)

    @classmethod
    def identity(cls, module: GradedFreeModule, field) -> "ModuleMap":
        return cls(module, module, [{c: {(): field.one}} for c in range(module.rank)])

    def image(self, c: int) -> dict:
        return self.rows[c]

    def is_zero(self) -> bool:
        return not any(self.rows)

    def scale(self, s) -> "ModuleMap":
        rows = [{r: scaled(p, s) for r, p in row.items()} for row in self.rows]
        return ModuleMap(self.source, self.target, rows, self.twist)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        rows = []
        for a, b in zip(self.rows, other.rows):
            row = {r: dict(p) for r, p in a.items()}
            for r, p in b.items():
                q = row.setdefault(r, {})
                axpy(q, 1, p)
            rows.append(row)
        return ModuleMap(self.source, self.target, rows, self.twist)

    def __sub__(self, other):
        return self + (-other)

    def with_modules(self, source, target) -> "ModuleMap":
        return ModuleMap(source, target, self.rows, self.twist)

    def constant_part(self, field) -> list[list]:
        """Dense matrix of degree-0 coefficients (the map modulo A_{>=1})."""
        out = [[field.zero] * self.target.rank for _ in range(self.source.rank)]
        for c, row in enumerate(self.rows):
            for r, p in row.items():
                v = p.get(())
                if v:
                    out[c][r] = v
        return out

    def entry_degrees_ok(self, degrees_of) -> bool:
        """Every entry (c, r) homogeneous of degree src_deg(c) - tgt_deg(r)."""
        for c, row in enumerate(self.rows):
            for r, p in row.items():
                want = self.source.degrees[c] - self.target.degrees[r]
                if any(degrees_of(w) != want for w in p):
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.rows == other.rows
            and _twist_key(self.twist) == _twist_key(other.twist)
        )

    def __repr__(self):
        return f"ModuleMap({self.source.degrees} -> {self.target.degrees}, rows={self.rows})"


def _twist_key(t):
    return None if t is None or t.is_identity() else t.images


# ------------------------------------------------------------------ arithmetic


def twist_poly(gb, sigma: AutomorphismSpec | None, p: dict) -> dict:
    """Normal form of sigma(p); images of words are cached on the Groebner data."""
    if sigma is None:
        return p
    store = gb.__dict__.setdefault("_twist_cache", {})
    per = store.setdefault(id(sigma), (sigma, {}))[1]
    out: dict = {}
    for w, c in p.items():
        img = per.get(w)
        if img is None:
            img = gb.reduce_dict(apply_automorphism(sigma, NcPoly._raw(gb.field, {w: gb.field.one})).terms)
            per[w] = img
        axpy(out, c, img)
    return out


def elem_lmul(gb, a: dict, v: dict) -> dict:
    """a * v for a polydict a and a module element v."""
    out = {}
    for r, p in v.items():
        q = gb.mul_dict(a, p)
        if q:
            out[r] = q
    return out


def elem_add(v: dict, w: dict, s=1) -> dict:
    out = {r: dict(p) for r, p in v.items()}
    for r, p in w.items():
        q = out.setdefault(r, {})
        axpy(q, s, p)
        if not q:
            del out[r]
    return out


def apply_map(gb, M: ModuleMap, v: dict) -> dict:
    """Image of the element v under M (honours M's twist)."""
    out: dict = {}
    for c, a in v.items():
        a = twist_poly(gb, M.twist, a)
        for r, p in M.rows[c].items():
            q = out.setdefault(r, {})
            axpy(q, 1, gb.mul_dict(a, p))
            if not q:
                del out[r]
    return out


def compose_maps(gb, g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g o f (f applied first)."""
    if f.target.rank != g.source.rank:
        raise ComposeError("module maps not composable")
    rows = [apply_map(gb, g, row) for row in f.rows]
    if f.twist is None:
        tw = g.twist
    elif g.twist is None:
        tw = f.twist
    else:
        tw = g.twist.compose(f.twist)
    return ModuleMap(f.source, g.target, rows, tw)


# ------------------------------------------------------------------ complexes


@dataclass
class ChainComplex:
    terms: dict
    diffs: dict = dc_field(default_factory=dict)

    def term(self, p: int) -> GradedFreeModule:
        return self.terms.get(p, GradedFreeModule())

    def diff(self, p: int) -> ModuleMap:
        d = self.diffs.get(p)
        if d is None:
            return ModuleMap.zero(self.term(p), self.term(p + 1))
        return d

    def positions(self) -> list[int]:
        return sorted(p for p, m in self.terms.items() if m.rank)

    def d_squared_zero(self, gb) -> bool:
        for p in self.diffs:
            if p + 1 in self.diffs and not compose_maps(gb, self.diffs[p + 1], self.diffs[p]).is_zero():
                return False
        return True


def shift_sigma(X: ChainComplex, k: int = 1) -> ChainComplex:
    """Sigma^k X: (Sigma X)^p = X^{p+1} with differential -d."""
    s = -1 if k % 2 else 1
    terms = {p - k: m for p, m in X.terms.items()}
    diffs = {p - k: (d if s == 1 else -d) for p, d in X.diffs.items()}
    return ChainComplex(terms, diffs)


def shift_T(X: ChainComplex, j: int) -> ChainComplex:
    """T^j X: every generator degree lowered by j, so that M(1)_i = M_{i+1}."""
    terms = {p: m.shifted(j) for p, m in X.terms.items()}
    diffs = {p: d.with_modules(terms[p], terms[p + 1]) for p, d in X.diffs.items()}
    return ChainComplex(terms, diffs)


@dataclass
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    shift: int
    internal: int
    comps: dict

    def comp(self, p: int) -> ModuleMap:
        m = self.comps.get(p)
        if m is None:
            return ModuleMap.zero(self.source.term(p), self.target.term(p + self.shift))
        return m

    def is_chain_map(self, gb) -> bool:
        """d_Y f^p = (-1)^n f^{p+1} d_X^p wherever both components are known."""
        n = self.shift
        sgn = -1 if n % 2 else 1
        for p in self.comps:
            if p + 1 not in self.comps and self.source.term(p + 1).rank:
                continue
            lhs = compose_maps(gb, self.target.diff(p + n), self.comp(p))
            rhs = compose_maps(gb, self.comp(p + 1), self.source.diff(p))
            if not (lhs - rhs.scale(sgn)).is_zero():
                return False
        return True

    def scale(self, s) -> "ChainMap":
        return ChainMap(self.source, self.target, self.shift, self.internal, {p: m.scale(s) for p, m in self.comps.items()})

    def __add__(self, other: "ChainMap") -> "ChainMap":
        _same_shape(self, other)
        keys = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target, self.shift, self.internal, {p: self.comp(p) + other.comp(p) for p in keys})

    def __sub__(self, other):
        return self + other.scale(-1)

    def equals(self, other: "ChainMap") -> bool:
        _same_shape(self, other)
        return all((self.comp(p) - other.comp(p)).is_zero() for p in set(self.comps) | set(other.comps))


def _same_shape(f: ChainMap, g: ChainMap):
    if (f.shift, f.internal) != (g.shift, g.internal) or f.source != g.source or f.target != g.target:
        raise ComposeError("chain maps have different endpoints or shifts")


def identity_map(X: ChainComplex, field) -> ChainMap:
    return ChainMap(X, X, 0, 0, {p: ModuleMap.identity(m, field) for p, m in X.terms.items()})


def shift_sigma_map(f: ChainMap) -> ChainMap:
    """Sigma(f) = (-1)^{|f|} s o f o s^{-1}."""
    s = -1 if f.shift % 2 else 1
    src, tgt = shift_sigma(f.source), shift_sigma(f.target)
    comps = {}
    for p, m in f.comps.items():
        mm = m if s == 1 else -m
        comps[p - 1] = mm.with_modules(src.term(p - 1), tgt.term(p - 1 + f.shift))
    return ChainMap(src, tgt, f.shift, f.internal, comps)


def shift_T_map(f: ChainMap, j: int) -> ChainMap:
    src, tgt = shift_T(f.source, j), shift_T(f.target, j)
    comps = {p: m.with_modules(src.term(p), tgt.term(p + f.shift)) for p, m in f.comps.items()}
    return ChainMap(src, tgt, f.shift, f.internal, comps)


def compose(gb, g: ChainMap, f: ChainMap) -> ChainMap:
    """Plain composite g o f of Hom-complex elements (degrees add, no signs)."""
    if f.target != g.source:
        raise ComposeError("target of f is not the source of g")
    comps = {}
    for p, m in f.comps.items():
        q = p + f.shift
        if q in g.comps:
            comps[p] = compose_maps(gb, g.comps[q], m)
    return ChainMap(f.source, g.target, f.shift + g.shift, f.internal + g.internal, comps)


def graded_compose(gb, g: ChainMap, f: ChainMap) -> ChainMap:
    """g * f = Sigma^i T^j(g) o f for f of bidegree (i, j).

    Sigma^i contributes (-1)^{i |g|}; T^j contributes nothing, so the
    composite's raw components are (-1)^{i k} g^{p+i} o f^p.
    """
    if f.target != g.source:
        raise ComposeError("target of f is not the source of g")
    out = compose(gb, g, f)
    if (f.shift * g.shift) % 2:
        out = out.scale(-1)
    return out


def suspension(X: ChainComplex, field) -> ChainMap:
    """s: X -> Sigma X, the identity on elements (cohomological degree -1)."""
    SX = shift_sigma(X)
    return ChainMap(X, SX, -1, 0, {p: ModuleMap.identity(m, field) for p, m in X.terms.items()})


def desuspension(X: ChainComplex, field) -> ChainMap:
    """s^{-1}: Sigma X -> X."""
    SX = shift_sigma(X)
    return ChainMap(SX, X, 1, 0, {p - 1: ModuleMap.identity(m, field) for p, m in X.terms.items()})


def h1(gb, f: ChainMap, X: ChainComplex) -> ChainMap:
    """Hom(Sigma X, Y) -> Sigma^{-1} Hom(X, Y): f -> (-1)^{|f|} s^{-1}(f o s).

    Returns the underlying element f o s of Hom(X, Y) with the sign applied.
    """
    out = compose(gb, f, suspension(X, gb.field))
    return out.scale(-1) if f.shift % 2 else out


def h2(gb, f: ChainMap, Y: ChainComplex) -> ChainMap:
    """Hom(X, Sigma Y) -> Sigma Hom(X, Y): f -> s(s^{-1} o f)."""
    return compose(gb, desuspension(Y, gb.field), f)


# ------------------------------------------------------------------ homotopies


def homotopy_equal(gb, f: ChainMap, g: ChainMap):
    """Decide whether f - g = d_Y h + (-1)^n h d_X for some h of degree n - 1.

    Returns ``(True, h)`` with a witness, or ``(False, None)``.  Only the
    positions where f or g have components enter the system.
    """
    _same_shape(f, g)
    X, Y, n, j = f.source, f.target, f.shift, f.internal
    sgn = -1 if n % 2 else 1
    diff = f - g
    positions = sorted(set(f.comps) | set(g.comps))
    hpos = sorted(set(positions) | {p + 1 for p in positions})

    def unknown_words(p, c, r):
        deg = X.term(p).degrees[c] + j - Y.term(p + n - 1).degrees[r]
        return gb.basis_of_degree(deg) if deg >= 0 else []

    ech = Echelon(track=True, field=gb.field)
    for p in hpos:
        src, tgt = X.term(p), Y.term(p + n - 1)
        for c in range(src.rank):
            for r in range(tgt.rank):
                for w in unknown_words(p, c, r):
                    tag = (p, c, r, w)
                    img: dict = {}
                    wd = {w: gb.field.one}
                    if p in positions:
                        # h^p followed by d_Y
                        for s_, ent in Y.diff(p + n - 1).rows[r].items():
                            for u, a in gb.mul_dict(wd, ent).items():
                                img[(p, c, s_, u)] = img.get((p, c, s_, u), 0) + a
                    if p - 1 in positions:
                        # d_X^{p-1} followed by h^p
                        for c0, row in enumerate(X.diff(p - 1).rows):
                            ent = row.get(c)
                            if not ent:
                                continue
                            for u, a in gb.mul_dict(ent, wd).items():
                                key = (p - 1, c0, r, u)
                                img[key] = img.get(key, 0) + sgn * a
                    ech.add(_index_vec(img), tag)
    target: dict = {}
    for p in positions:
        for c, row in enumerate(diff.comp(p).rows):
            for r, poly in row.items():
                for u, a in poly.items():
                    target[(p, c, r, u)] = a
    sol = ech.solve(_index_vec(target))
    if sol is None:
        return False, None
    comps = {}
    for p in hpos:
        src, tgt = X.term(p), Y.term(p + n - 1)
        rows = [dict() for _ in range(src.rank)]
        for (pp, c, r, w), a in sol.items():
            if pp == p and a:
                rows[c].setdefault(r, {})[w] = rows[c].get(r, {}).get(w, 0) + a
        comps[p] = ModuleMap(src, tgt, rows)
    return True, ChainMap(X, Y, n - 1, j, comps)


def _index_vec(d: dict) -> dict:
    """Make keys totally ordered for the echelon (positions, gens, deglex words)."""
    return {(k[0], k[1], k[2], len(k[3]), k[3]): v for k, v in d.items() if v}
