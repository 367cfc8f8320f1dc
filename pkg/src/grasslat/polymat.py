"""Exact univariate polynomials over Q and fraction-free polynomial matrix algebra.

Everything here is exact: coefficients are `fractions.Fraction`, identities
like "this minor vanishes" mean vanishing as a polynomial, and ranks are
ranks over the rational function field Q(s).
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


class Poly:
    """Univariate polynomial with Fraction coefficients, index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> "Poly":
        return Poly([_frac(c)])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def divexact(self, other: "Poly") -> "Poly":
        """Exact polynomial division; raises if the remainder is nonzero."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        q = [Fraction(0)] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c / lead
            q[i - d] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - d + j] -= f * oc
        if any(c != 0 for c in rem[:d]):
            raise ArithmeticError("inexact polynomial division")
        return Poly(q)

    def __call__(self, x):
        """Evaluate by Horner; exact for Fraction/int input, float otherwise."""
        acc = 0 if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_series(self) -> list["Poly"]:
        """Coefficients q_j(s) of p(s + xi) = sum_j q_j(s) xi^j."""
        n = len(self.coeffs)
        out = [Poly() for _ in range(max(n, 1))]
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            for j in range(i + 1):
                term = [Fraction(0)] * (i - j) + [c * math.comb(i, j)]
                out[j] = out[j] + Poly(term)
        return out

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                s = "s" if i == 1 else f"s^{i}"
                if c == 1:
                    parts.append(s)
                elif c == -1:
                    parts.append(f"-{s}")
                else:
                    parts.append(f"{c}*{s}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = Poly()
ONE = Poly([1])


# --- matrices of polynomials (tuples of row tuples) ---------------------------


def mat_from_rows(rows) -> tuple:
    return tuple(tuple(e if isinstance(e, Poly) else Poly.const(e) for e in row)
                 for row in rows)


def mat_identity(n: int) -> tuple:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_mul(a, b) -> tuple:
    rows, inner, cols = len(a), len(b), len(b[0])
    assert len(a[0]) == inner
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(inner)), ZERO) for j in range(cols))
        for i in range(rows)
    )


def mat_eval(a, x):
    return [[e(x) for e in row] for row in a]


def mat_is_zero(a) -> bool:
    return all(e.is_zero() for row in a for e in row)


def mat_det(a) -> Poly:
    """Determinant by Bareiss fraction-free elimination (exact divisions)."""
    n = len(a)
    if n == 0:
        return ONE
    m = [list(row) for row in a]
    prev = ONE
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divexact(prev)
            m[i][k] = ZERO
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def mat_rank(a) -> int:
    """Rank over Q(s), by fraction-free elimination with column pivoting."""
    if not a:
        return 0
    m = [list(row) for row in a]
    rows, cols = len(m), len(m[0])
    prev = ONE
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if not m[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]).divexact(prev)
            m[i][c] = ZERO
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def mat_minor(a, row_idx, col_idx) -> Poly:
    sub = [[a[i][j] for j in col_idx] for i in row_idx]
    return mat_det(sub)


def mat_adjugate(a) -> tuple:
    """Adjugate; equals the inverse when det == 1."""
    n = len(a)
    all_idx = range(n)
    adj = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        ri = [k for k in all_idx if k != i]
        for j in range(n):
            cj = [k for k in all_idx if k != j]
            cof = mat_minor(a, ri, cj)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof
    return tuple(tuple(row) for row in adj)


def maximal_minors(a, size: int) -> list[tuple[tuple[int, ...], Poly]]:
    """All size x size minors of a wide matrix, column subsets in lex order."""
    rows = range(len(a))
    return [(cols, mat_minor(a, rows, cols))
            for cols in combinations(range(len(a[0])), size)]
