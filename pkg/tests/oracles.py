"""Independent reference computations used to freeze expected values.

Nothing here imports the package's linear algebra or Groebner code:
dimensions come from brute-force spans of u*r*v in the free algebra,
resolution data from closed forms.
"""

from fractions import Fraction
from itertools import product
from math import comb


def words(ngens, n):
    return list(product(range(ngens), repeat=n))


def _rank(rows):
    """Rank of sparse Fraction rows by plain Gaussian elimination."""
    pivots = {}
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            k = min(row)
            if k not in pivots:
                pivots[k] = row
                break
            p = pivots[k]
            f = row[k] / p[k]
            for j, v in p.items():
                w = row.get(j, 0) - f * v
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return len(pivots)


def hilbert_bruteforce(ngens, relations, n):
    """dim A_n for degree-1 generators and homogeneous relations given as {word: coeff}."""
    total = ngens ** n
    idx = {w: i for i, w in enumerate(words(ngens, n))}
    rows = []
    for r in relations:
        dr = len(next(iter(r)))
        if dr > n:
            continue
        for a in range(n - dr + 1):
            for u in words(ngens, a):
                for v in words(ngens, n - dr - a):
                    rows.append({idx[u + w + v]: c for w, c in r.items()})
    return total - _rank(rows)


def commutator(i, j, q=1):
    """x_j x_i - q x_i x_j for i < j."""
    return {(j, i): 1, (i, j): -q}


def koszul_betti(n):
    return {(i, i): comb(n, i) for i in range(n + 1)}


def skew_nakayama(p):
    """Diagonal mu for x_j x_i = p[j][i] x_i x_j: mu(x_j) = prod_i p[j][i] x_j."""
    n = len(p)
    out = []
    for j in range(n):
        c = Fraction(1)
        for i in range(n):
            if i != j:
                c *= Fraction(p[j][i])
        out.append(c)
    return out


def det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    s = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            s = -s
        s *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return s
