"""Words and noncommutative polynomials in the free algebra k<x_0, ..., x_{g-1}>.

A word is a tuple of generator indices.  Its internal degree is the sum
of the generator degrees, which the caller supplies (a tuple indexed by
generator); with no degrees given every generator has degree 1.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .field import Field, FieldMismatch

__all__ = [
    "Word",
    "NcPoly",
    "word_degree",
    "deglex_key",
    "deglex_compare",
    "poly_add",
    "poly_mul",
]

Word = tuple


def word_degree(w: Word, degrees: Sequence[int] | None = None) -> int:
    if degrees is None:
        return len(w)
    return sum(degrees[a] for a in w)


def deglex_key(w: Word, degrees: Sequence[int] | None = None):
    """Sort key: internal degree, then length, then lexicographic on indices."""
    return (word_degree(w, degrees), len(w), w)


def deglex_compare(u: Word, v: Word, degrees: Sequence[int] | None = None) -> int:
    ku, kv = deglex_key(u, degrees), deglex_key(v, degrees)
    return (ku > kv) - (ku < kv)


class NcPoly:
    """Finite linear combination of words with exact coefficients."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping[Word, object] | Iterable = ()):
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for w, c in items:
            w = tuple(w)
            acc[w] = acc.get(w, field.zero) + field(c)
        self.terms = {w: c for w, c in acc.items() if c}

    @classmethod
    def _raw(cls, field: Field, terms: dict) -> "NcPoly":
        p = cls.__new__(cls)
        p.field = field
        p.terms = terms
        return p

    @classmethod
    def word(cls, field: Field, w: Word, coeff=1) -> "NcPoly":
        return cls(field, {tuple(w): coeff})

    @classmethod
    def gen(cls, field: Field, i: int) -> "NcPoly":
        return cls(field, {(i,): 1})

    @classmethod
    def constant(cls, field: Field, c=1) -> "NcPoly":
        return cls(field, {(): c})

    @classmethod
    def zero(cls, field: Field) -> "NcPoly":
        return cls._raw(field, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "NcPoly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.constant(self.field, other)
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw(self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.constant(self.field, other)
        return poly_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "NcPoly":
        c = self.field(c)
        if not c:
            return NcPoly.zero(self.field)
        return NcPoly._raw(self.field, {w: c * v for w, v in self.terms.items()})

    def __pow__(self, n: int):
        out = NcPoly.constant(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.field == other.field and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degrees(self, degrees: Sequence[int] | None = None) -> set:
        return {word_degree(w, degrees) for w in self.terms}

    def homogeneous_degree(self, degrees: Sequence[int] | None = None) -> int | None:
        """Common internal degree of all words, or None (also for the zero poly)."""
        ds = self.degrees(degrees)
        return ds.pop() if len(ds) == 1 else None

    def leading_word(self, degrees: Sequence[int] | None = None) -> Word:
        return max(self.terms, key=lambda w: deglex_key(w, degrees))

    def sorted_terms(self, degrees: Sequence[int] | None = None, reverse=True):
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0], degrees), reverse=reverse)

    def format(self, names: Sequence[str] | None = None, degrees=None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms(degrees):
            mono = "*".join(names[a] if names else f"x{a}" for a in w)
            neg = _is_negative(c)
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_paren(mag)}*{mono}"
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"NcPoly({self.format()})"


def _is_negative(c) -> bool:
    try:
        return c < 0
    except TypeError:
        return False


def _paren(c) -> str:
    s = str(c)
    return f"({s})" if "/" in s else s


def poly_add(p: NcPoly, q: NcPoly) -> NcPoly:
    p._check(q)
    out = dict(p.terms)
    for w, c in q.terms.items():
        v = out.get(w)
        if v is None:
            out[w] = c
        else:
            v = v + c
            if v:
                out[w] = v
            else:
                del out[w]
    return NcPoly._raw(p.field, out)


def poly_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    p._check(q)
    out: dict = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            w = u + v
            out[w] = out.get(w, 0) + a * b
    return NcPoly._raw(p.field, {w: c for w, c in out.items() if c})
