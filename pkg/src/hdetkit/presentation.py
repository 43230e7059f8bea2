"""Graded algebra presentations, graded automorphisms, and the ``.alg`` file format.

File format, one statement per line (``;`` also separates statements,
except after ``aut`` where it separates generator images)::

    # comment
    field Q            | field F 101
    gen x 1
    rel y*x - 2*x*y
    aut mu : x -> 2*x ; y -> (1/2)*y
    cap internal 10
    cap homological 5

Generators not mentioned in an ``aut`` line are fixed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .field import QQ, Field
from .freealg import NcPoly

__all__ = [
    "AlgebraPresentation",
    "AutomorphismSpec",
    "PresentationError",
    "parse_presentation",
    "format_presentation",
    "apply_automorphism",
    "check_is_automorphism",
]

DEFAULT_CAP_INTERNAL = 10
DEFAULT_CAP_HOMOLOGICAL = 5


class PresentationError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.msg, self.line, self.col = msg, line, col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)


@dataclass(frozen=True)
class AutomorphismSpec:
    """A graded algebra endomorphism given by the images of the generators."""

    images: tuple
    name: str = "sigma"

    @property
    def field(self) -> Field:
        return self.images[0].field

    @classmethod
    def identity(cls, A: "AlgebraPresentation", name: str = "id") -> "AutomorphismSpec":
        return cls(tuple(NcPoly.gen(A.field, i) for i in range(A.ngens)), name)

    @classmethod
    def xi(cls, A: "AlgebraPresentation", c, name: str | None = None) -> "AutomorphismSpec":
        """x -> c^{|x|} x on homogeneous elements."""
        c = A.field(c)
        if not c:
            raise ValueError("xi_c needs c != 0")
        imgs = tuple(NcPoly.gen(A.field, i).scale(c ** A.gen_degrees[i]) for i in range(A.ngens))
        return cls(imgs, name or f"xi_{c}")

    @classmethod
    def diagonal(cls, A: "AlgebraPresentation", scalars: Sequence, name: str = "diag") -> "AutomorphismSpec":
        if len(scalars) != A.ngens:
            raise ValueError("one scalar per generator")
        return cls(tuple(NcPoly.gen(A.field, i).scale(s) for i, s in enumerate(scalars)), name)

    @classmethod
    def linear(cls, A: "AlgebraPresentation", matrix: Sequence[Sequence], name: str = "sigma") -> "AutomorphismSpec":
        """Degree-1 generators only: column r holds the coordinates of sigma(x_r)."""
        n = A.ngens
        imgs = []
        for r in range(n):
            imgs.append(NcPoly(A.field, {(c,): matrix[c][r] for c in range(n) if matrix[c][r]}))
        return cls(tuple(imgs), name)

    def apply(self, p: NcPoly) -> NcPoly:
        return apply_automorphism(self, p)

    def compose(self, other: "AutomorphismSpec", name: str | None = None) -> "AutomorphismSpec":
        """self o other: x -> self(other(x))."""
        return AutomorphismSpec(tuple(self.apply(q) for q in other.images), name or f"{self.name}*{other.name}")

    def degree_one_matrix(self, A: "AlgebraPresentation") -> list[list]:
        """Matrix on the span of the degree-1 generators (column convention)."""
        ones = [i for i in range(A.ngens) if A.gen_degrees[i] == 1]
        pos = {g: k for k, g in enumerate(ones)}
        m = [[A.field.zero] * len(ones) for _ in ones]
        for r, g in enumerate(ones):
            for w, c in self.images[g].terms.items():
                m[pos[w[0]]][r] = c
        return m

    def is_identity(self) -> bool:
        return all(img.terms == {(i,): 1} for i, img in enumerate(self.images))

    def scalar_form(self, A: "AlgebraPresentation"):
        """Return c if this is xi_c, else None."""
        c = None
        for i, img in enumerate(self.images):
            if set(img.terms) != {(i,)}:
                return None
            v = img.terms[(i,)]
            deg = A.gen_degrees[i]
            if c is None:
                if deg != 1:
                    return None
                c = v
            if c ** deg != v:
                return None
        return c


@dataclass
class AlgebraPresentation:
    field: Field
    gen_names: tuple
    gen_degrees: tuple
    relations: list
    autos: dict = dc_field(default_factory=dict)
    cap_internal: int = DEFAULT_CAP_INTERNAL
    cap_homological: int = DEFAULT_CAP_HOMOLOGICAL

    def __post_init__(self):
        self.gen_names = tuple(self.gen_names)
        self.gen_degrees = tuple(self.gen_degrees)
        if len(set(self.gen_names)) != len(self.gen_names):
            raise PresentationError("generator names must be unique")
        for n, d in zip(self.gen_names, self.gen_degrees):
            if d < 1:
                raise PresentationError(f"generator {n} has degree {d}; degrees must be >= 1")
        for r in self.relations:
            self._check_relation(r)
        for a in self.autos.values():
            self._check_auto(a)

    @property
    def ngens(self) -> int:
        return len(self.gen_names)

    @property
    def generated_in_degree_one(self) -> bool:
        return all(d == 1 for d in self.gen_degrees)

    @property
    def max_relation_degree(self) -> int:
        return max((self.degree_of(r) for r in self.relations), default=0)

    def degree_of(self, p: NcPoly) -> int | None:
        return p.homogeneous_degree(self.gen_degrees)

    def gen(self, name: str) -> NcPoly:
        return NcPoly.gen(self.field, self.gen_names.index(name))

    def _check_relation(self, r: NcPoly):
        if r.is_zero():
            raise PresentationError("relation is zero")
        d = self.degree_of(r)
        if d is None:
            raise PresentationError(f"inhomogeneous relation {r.format(self.gen_names)}")
        if d < 2:
            raise PresentationError(f"relation {r.format(self.gen_names)} has degree {d} < 2")

    def _check_auto(self, a: AutomorphismSpec):
        if len(a.images) != self.ngens:
            raise PresentationError(f"automorphism {a.name} needs one image per generator")
        for i, img in enumerate(a.images):
            if img.is_zero() or self.degree_of(img) != self.gen_degrees[i]:
                raise PresentationError(
                    f"automorphism {a.name}: image of {self.gen_names[i]} is not homogeneous of degree {self.gen_degrees[i]}"
                )

    def format_poly(self, p: NcPoly) -> str:
        return p.format(self.gen_names, self.gen_degrees)

    def with_field(self, field: Field) -> "AlgebraPresentation":
        """Re-read this presentation over another field (via its canonical text)."""
        return parse_presentation(format_presentation(self), field=field)


def apply_automorphism(sigma: AutomorphismSpec, p: NcPoly) -> NcPoly:
    field = p.field
    out = NcPoly.zero(field)
    cache: dict = {}
    for w, c in p.terms.items():
        img = cache.get(w)
        if img is None:
            img = NcPoly.constant(field, 1)
            for a in w:
                img = img * sigma.images[a]
            cache[w] = img
        out = out + img.scale(c)
    return out


def check_is_automorphism(sigma: AutomorphismSpec, A: AlgebraPresentation, gb) -> bool:
    """sigma preserves the relation ideal and is bijective in generator degrees."""
    from .groebner import CapExceeded
    from .linalg import rank_of

    need = max(A.max_relation_degree, max(A.gen_degrees, default=0))
    if gb.complete_to_degree < need:
        raise CapExceeded(f"Groebner data complete to {gb.complete_to_degree}, need {need}")
    for r in A.relations:
        if not gb.normal_form(apply_automorphism(sigma, r)).is_zero():
            return False
    for n in sorted(set(A.gen_degrees)):
        basis = gb.basis_of_degree(n)
        idx = {w: k for k, w in enumerate(basis)}
        vecs = []
        for w in basis:
            img = gb.normal_form(apply_automorphism(sigma, NcPoly.word(A.field, w)))
            vecs.append({idx[u]: c for u, c in img.terms.items()})
        if rank_of(vecs) != len(basis):
            return False
    return True


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(.))")


class _PolyParser:
    def __init__(self, text: str, A_names: Sequence[str], field: Field, line: int, col0: int):
        self.text, self.names, self.field = text, list(A_names), field
        self.line, self.col0 = line, col0
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            if m.group(0).strip():
                start = m.start(m.lastindex)
                kind = ("num", "name", "op")[m.lastindex - 1]
                self.toks.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.i = 0

    def err(self, msg, tok=None):
        col = self.col0 + (tok[2] if tok else len(self.text)) + 1
        raise PresentationError(msg, self.line, col)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> NcPoly:
        if not self.toks:
            self.err("empty polynomial")
        p = self.expr()
        if self.peek() is not None:
            self.err(f"unexpected {self.peek()[1]!r}", self.peek())
        return p

    def expr(self):
        p = self.term()
        while (t := self.peek()) and t[1] in "+-" and t[0] == "op":
            self.take()
            q = self.term()
            p = p + q if t[1] == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while (t := self.peek()) and t[0] == "op" and t[1] in "*/":
            self.take()
            q = self.factor()
            if t[1] == "*":
                p = p * q
            else:
                if set(q.terms) - {()} or not q.terms:
                    self.err("division only by a nonzero scalar", t)
                p = p.scale(1 / q.terms[()])
        return p

    def factor(self):
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.take()
            f = self.factor()
            return -f if t[1] == "-" else f
        base = self.atom()
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e is None or e[0] != "num":
                self.err("exponent must be a nonnegative integer", e)
            base = base ** int(e[1])
        return base

    def atom(self):
        t = self.take()
        if t is None:
            self.err("unexpected end of polynomial")
        kind, val, _ = t
        if kind == "num":
            return NcPoly.constant(self.field, int(val))
        if kind == "name":
            if val not in self.names:
                self.err(f"unknown generator {val!r}", t)
            return NcPoly.gen(self.field, self.names.index(val))
        if val == "(":
            p = self.expr()
            c = self.take()
            if c is None or c[1] != ")":
                self.err("expected ')'", c)
            return p
        self.err(f"unexpected {val!r}", t)


def _split_statements(text: str):
    """Yield (line_no, column_offset, statement) triples."""
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        while line.strip():
            stripped = line.lstrip()
            offset += len(line) - len(stripped)
            line = stripped
            if line.startswith("aut ") or line == "aut":
                yield ln, offset, line.rstrip()
                break
            head, sep, rest = line.partition(";")
            if head.strip():
                yield ln, offset, head.rstrip()
            offset += len(head) + len(sep)
            line = rest


def parse_presentation(text: str, field: Field | None = None) -> AlgebraPresentation:
    """Parse ``.alg`` text; ``field`` overrides the file's field statement."""
    stmts = list(_split_statements(text))
    fld = None
    for ln, off, s in stmts:
        words = s.split()
        if words[0] == "field":
            if words[1:] == ["Q"]:
                fld = QQ
            elif len(words) == 3 and words[1] == "F" and words[2].isdigit():
                try:
                    fld = Field(int(words[2]))
                except ValueError as e:
                    raise PresentationError(str(e), ln, off + 1) from None
            else:
                raise PresentationError(f"bad field statement {s!r}", ln, off + 1)
    fld = field or fld or QQ

    names, degs, rel_src, aut_src = [], [], [], []
    caps = {}
    for ln, off, s in stmts:
        words = s.split()
        kw = words[0]
        if kw == "field":
            continue
        if kw == "gen":
            if len(words) != 3 or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*", words[1]):
                raise PresentationError("expected 'gen <name> <degree>'", ln, off + 1)
            try:
                d = int(words[2])
            except ValueError:
                raise PresentationError(f"bad degree {words[2]!r}", ln, off + 1) from None
            if d < 1:
                raise PresentationError(f"generator {words[1]} has degree {d}; degrees must be >= 1", ln, off + 1)
            if words[1] in names:
                raise PresentationError(f"duplicate generator {words[1]}", ln, off + 1)
            names.append(words[1])
            degs.append(d)
        elif kw == "rel":
            rel_src.append((ln, off + s.index("rel") + 3, s[s.index("rel") + 3:]))
        elif kw == "aut":
            aut_src.append((ln, off, s))
        elif kw == "cap":
            if len(words) != 3 or words[1] not in ("internal", "homological") or not words[2].isdigit():
                raise PresentationError("expected 'cap internal|homological <n>'", ln, off + 1)
            if int(words[2]) < 1:
                raise PresentationError("caps must be >= 1", ln, off + 1)
            caps[words[1]] = int(words[2])
        else:
            raise PresentationError(f"unknown statement {kw!r}", ln, off + 1)

    rels = []
    for ln, col, src in rel_src:
        p = _PolyParser(src, names, fld, ln, col).parse()
        d = p.homogeneous_degree(degs)
        if p.is_zero():
            raise PresentationError("relation is zero", ln, col + 1)
        if d is None:
            raise PresentationError(f"inhomogeneous relation {p.format(names, degs)}", ln, col + 1)
        if d < 2:
            raise PresentationError(f"relation of degree {d} < 2", ln, col + 1)
        rels.append(p)

    autos = {}
    for ln, off, s in aut_src:
        m = re.match(r"aut\s+([A-Za-z_][A-Za-z_0-9]*)\s*:(.*)$", s)
        if not m:
            raise PresentationError("expected 'aut <name> : <gen> -> <poly> ; ...'", ln, off + 1)
        name, body = m.group(1), m.group(2)
        body_col = off + m.start(2)
        images = [NcPoly.gen(fld, i) for i in range(len(names))]
        seen = set()
        pos = 0
        for part in body.split(";"):
            col = body_col + pos
            pos += len(part) + 1
            if not part.strip():
                continue
            lhs, arrow, rhs = part.partition("->")
            g = lhs.strip()
            if not arrow:
                raise PresentationError("expected '<gen> -> <poly>'", ln, col + 1)
            if g not in names:
                raise PresentationError(f"unknown generator {g!r}", ln, col + 1)
            if g in seen:
                raise PresentationError(f"generator {g} mapped twice", ln, col + 1)
            seen.add(g)
            i = names.index(g)
            img = _PolyParser(rhs, names, fld, ln, col + len(lhs) + 2).parse()
            if img.is_zero() or img.homogeneous_degree(degs) != degs[i]:
                raise PresentationError(f"image of {g} must be homogeneous of degree {degs[i]}", ln, col + 1)
            images[i] = img
        if name in autos:
            raise PresentationError(f"duplicate automorphism {name}", ln, off + 1)
        autos[name] = AutomorphismSpec(tuple(images), name)

    return AlgebraPresentation(
        field=fld,
        gen_names=tuple(names),
        gen_degrees=tuple(degs),
        relations=rels,
        autos=autos,
        cap_internal=caps.get("internal", DEFAULT_CAP_INTERNAL),
        cap_homological=caps.get("homological", DEFAULT_CAP_HOMOLOGICAL),
    )


def format_presentation(A: AlgebraPresentation) -> str:
    """Canonical text form; parse_presentation(format_presentation(A)) == A."""
    out = [f"field {A.field.name}"]
    out += [f"gen {n} {d}" for n, d in zip(A.gen_names, A.gen_degrees)]
    out += [f"rel {A.format_poly(r)}" for r in A.relations]
    for name, a in A.autos.items():
        maps = " ; ".join(f"{A.gen_names[i]} -> {A.format_poly(img)}" for i, img in enumerate(a.images))
        out.append(f"aut {name} : {maps}")
    out.append(f"cap internal {A.cap_internal}")
    out.append(f"cap homological {A.cap_homological}")
    return "\n".join(out) + "\n"

