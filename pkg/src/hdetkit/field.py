"""Exact scalar fields: the rationals and prime fields F_p.

Rational scalars are ``gmpy2.mpq`` values (always reduced, positive
denominator).  Prime-field scalars are :class:`Mod` values whose
representative lies in ``[0, p)``.  Both support the usual arithmetic
operators and mix freely with Python ints, so the rest of the package
never branches on the field.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2

__all__ = ["Field", "Mod", "QQ", "FieldMismatch"]


class FieldMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p))


class Mod:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = int(v) % p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Mod":
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Mod(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """Either ``Field(0)`` (the rationals) or ``Field(p)`` for a prime p."""

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"F_{characteristic}: characteristic must be 0 or prime")
        self.characteristic = characteristic
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x):
        p = self.characteristic
        if p == 0:
            if isinstance(x, Mod):
                raise FieldMismatch("cannot coerce an F_p scalar into Q")
            if isinstance(x, str):
                return gmpy2.mpq(x.strip())
            if isinstance(x, Fraction):
                return gmpy2.mpq(x.numerator, x.denominator)
            return gmpy2.mpq(x)
        if isinstance(x, Mod):
            if x.p != p:
                raise FieldMismatch(f"F_{x.p} scalar used in F_{p}")
            return x
        q = gmpy2.mpq(x.strip()) if isinstance(x, str) else gmpy2.mpq(x)
        den = int(q.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes in F_{p}")
        return Mod(int(q.numerator) * pow(den, -1, p), p)

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F {self.characteristic}"

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)
