"""Exact rational Gaussian elimination."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = to_fractions(rows)
    if not m:
        return m, []
    n_cols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], n_cols: int) -> Matrix:
    """Basis of {x : rows @ x = 0}, one basis vector per free column."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    red, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -red[r][f]
        basis.append(x)
    return basis


def primitive(vec: Sequence[Fraction]) -> list[int]:
    """The integer vector on the same line with coprime entries, sign preserved."""
    den = 1
    for x in vec:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g else ints


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def parallel(u: Sequence, v: Sequence) -> bool:
    """True when u and v are linearly dependent (all 2x2 minors vanish)."""
    k = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(k) for j in range(i + 1, k))


def det(rows: Sequence[Sequence]) -> Fraction:
    m = to_fractions(rows)
    n = len(m)
    sign, acc = 1, Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        acc *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * acc


def integer_kernel(rows: Sequence[Sequence[int]], n_cols: int) -> list[list[int]]:
    """LLL-reduced basis of the integer lattice {x in Z^n : rows @ x = 0}.

    Uses the embedding [I | K * rows^T]: with K large, LLL moves the kernel to
    the rows whose tail vanishes. The result is checked against the rational
    nullspace dimension and falls back to scaled rref vectors if they disagree.
    """
    if not rows:
        return [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    from sympy import ZZ
    from sympy.polys.matrices import DomainMatrix

    expected = len(nullspace(rows, n_cols))
    if expected == 0:
        return []
    bits = sum(max(abs(x) for x in r).bit_length() + 3 for r in rows)
    scale = 1 << (bits + n_cols + 8)
    lattice = [[ZZ(int(i == j)) for j in range(n_cols)]
               + [ZZ(scale * r[i]) for r in rows] for i in range(n_cols)]
    reduced = DomainMatrix(lattice, (n_cols, n_cols + len(rows)), ZZ).lll().to_list()
    kernel = [[int(x) for x in row[:n_cols]] for row in reduced
              if all(x == 0 for x in row[n_cols:])]
    if len(kernel) != expected or any(dot(k, r) for k in kernel for r in rows):
        return [primitive(b) for b in nullspace(rows, n_cols)]
    return kernel
