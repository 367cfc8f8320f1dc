"""Exact polynomial matrix curves and their expansion behavior under a(t).

A curve is a matrix of univariate polynomials with rational coefficients on
a rational interval.  An m x n curve phi embeds into SL_{m+n} as the
unipotent block matrix [[I, phi], [0, I]], whose row space traces a curve
of m-planes; `plucker_coords` and `pencil_membership` describe that curve
exactly.  For a square curve into SL_N, `leading_direction` extracts the
nilpotent limit Y of  Ad a(t) . log(phi(s + t^-kappa) phi(s)^-1)  together
with the critical exponent kappa, all in exact arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .polymat import (ONE, ZERO, Poly, mat_adjugate, mat_det, mat_from_rows,
                      mat_identity, mat_is_zero, mat_mul, mat_rank,
                      maximal_minors)


@dataclass(frozen=True)
class PolynomialMatrixCurve:
    rows: int
    cols: int
    entries: tuple[tuple[Poly, ...], ...]
    interval: tuple[Fraction, Fraction]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match declared shape")
        a, b = self.interval
        if not a < b:
            raise ValueError("interval must satisfy a < b")

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def at(self, s):
        """Evaluate entrywise; exact for rational s."""
        return [[e(s) for e in row] for row in self.entries]


def curve(rows: int, cols: int, entries, interval=(0, 1)) -> PolynomialMatrixCurve:
    """Build a curve from Poly / coefficient-list / scalar entries."""
    grid = tuple(
        tuple(e if isinstance(e, Poly) else
              Poly(e) if isinstance(e, (list, tuple)) else Poly.const(e)
              for e in row)
        for row in entries)
    a, b = (Fraction(x) for x in interval)
    return PolynomialMatrixCurve(rows, cols, grid, (a, b))


def unipotent_embed(psi: PolynomialMatrixCurve) -> PolynomialMatrixCurve:
    """[[I_m, psi], [0, I_n]]; unimodular by construction."""
    m, n = psi.rows, psi.cols
    dim = m + n
    grid = []
    for i in range(m):
        grid.append(tuple(ONE if j == i else ZERO for j in range(m)) + psi.entries[i])
    for i in range(n):
        grid.append(tuple(ONE if j == m + i else ZERO for j in range(dim)))
    return PolynomialMatrixCurve(dim, dim, tuple(grid), psi.interval)


def plucker_coords(phi: PolynomialMatrixCurve) -> list[Poly]:
    """All m x m minors of [I_m | phi(s)], column subsets in lex order.

    The first coordinate (columns 1..m) is identically 1, so these are
    affine coordinates of the traced m-plane.
    """
    m = phi.rows
    rows = [tuple(ONE if j == i else ZERO for j in range(m)) + phi.entries[i]
            for i in range(m)]
    return [minor for _, minor in maximal_minors(rows, m)]


def pencil_membership(phi: PolynomialMatrixCurve, w_basis, r: int) -> bool:
    """Does dim(V_phi(s) /\ span(w_basis)) >= r hold identically in s?

    Decided as a rank condition over Q(s): the stacked matrix of the m rows
    of [I | phi(s)] and the basis of W has rank <= m + dim W - r exactly
    when the intersection is at least r-dimensional for every s.
    """
    m, dim = phi.rows, phi.rows + phi.cols
    basis = mat_from_rows([[Fraction(x) for x in vec] for vec in w_basis])
    if basis and len(basis[0]) != dim:
        raise ValueError(f"basis vectors must have length {dim}")
    if mat_rank(basis) != len(basis):
        raise ValueError("w_basis is linearly dependent")
    if r < 0 or r > min(m, len(basis)):
        raise ValueError("r must lie in [0, min(m, dim W)]")
    if r == 0:
        return True
    stacked = [tuple(ONE if j == i else ZERO for j in range(m)) + phi.entries[i]
               for i in range(m)]
    stacked.extend(basis)
    return mat_rank(stacked) <= m + len(basis) - r


# --- leading direction of the expanded local expansion ---------------------------


@dataclass(frozen=True)
class LeadingDirection:
    """Limit data: exponent kappa, nilpotent matrix Y(s), decay gap, order used."""

    kappa: Fraction
    y: tuple[tuple[Poly, ...], ...]
    gap: Fraction | None
    order: int


def log_xi_series(phi: PolynomialMatrixCurve, order: int) -> list:
    """Matrices psi_i with log(phi(s+xi) phi(s)^-1) = sum_i xi^i psi_i(s) + O(xi^{order+1}).

    phi must have determinant identically 1 (then its inverse is the
    adjugate and everything stays polynomial).
    """
    if not phi.is_square:
        raise ValueError("curve must be square")
    if mat_det(phi.entries) != ONE:
        raise ValueError("curve is not unimodular (det != 1)")
    dim = phi.rows
    inv = mat_adjugate(phi.entries)
    shifted = [[e.shift_series() for e in row] for row in phi.entries]
    # x[k] = xi^k coefficient matrix of phi(s+xi) phi(s)^-1 - I
    x = []
    for k in range(order + 1):
        coef = [[ZERO] * dim for _ in range(dim)]
        for i in range(dim):
            for l in range(dim):
                sl = shifted[i][l]
                if k >= len(sl) or sl[k].is_zero():
                    continue
                for j in range(dim):
                    coef[i][j] = coef[i][j] + sl[k] * inv[l][j]
        x.append(tuple(tuple(rw) for rw in coef))
    x[0] = tuple(tuple(e - (ONE if i == j else ZERO) for j, e in enumerate(row))
                 for i, row in enumerate(x[0]))
    if not mat_is_zero(x[0]):
        raise AssertionError("inverse failed: phi(s)phi(s)^-1 != I")
    log = [_zero_mat(dim) for _ in range(order + 1)]
    power = x
    sign = 1
    for j in range(1, order + 1):
        if j > 1:
            power = _series_mul(power, x, order)
        c = Fraction(sign, j)
        for k in range(j, order + 1):
            log[k] = tuple(tuple(a + b * c for a, b in zip(ra, rb))
                           for ra, rb in zip(log[k], power[k]))
        sign = -sign
    return log


def leading_direction(phi: PolynomialMatrixCurve, a_exponents, order: int = 8) -> LeadingDirection:
    """Exponent kappa and limit Y of Ad a(t) applied to the local expansion.

    Writing log(phi(s+xi) phi(s)^-1) = sum xi^i psi_i(s) and splitting each
    psi_i by eigenweight of Ad a(t) (entry (k,l) has weight a_k - a_l),
    kappa = max_i m_i / i for m_i the top nonvanishing weight in psi_i, and
    Y collects the components achieving the max.  The truncation order must
    satisfy (max weight)/order < kappa so that discarded terms cannot win.
    """
    a = tuple(int(v) for v in a_exponents)
    if len(a) != phi.rows:
        raise ValueError("a_exponents length must match the curve size")
    if sum(a) != 0:
        raise ValueError("a_exponents must sum to zero")
    series = log_xi_series(phi, order)
    dim = phi.rows
    top = []  # (i, m_i) for nonzero psi_i
    for i in range(1, order + 1):
        weights = [a[k] - a[l] for k in range(dim) for l in range(dim)
                   if not series[i][k][l].is_zero()]
        if weights:
            top.append((i, max(weights)))
    if not any(mi > 0 for _, mi in top):
        raise ValueError("curve projection is trivial: no expanding component")
    kappa = max(Fraction(mi, i) for i, mi in top)
    max_weight = max(a) - min(a)
    if not Fraction(max_weight, order) < kappa:
        raise ValueError(
            f"truncation order {order} too small: need (max weight)/K < kappa, "
            f"i.e. K > {Fraction(max_weight, kappa)}")
    y = [[ZERO] * dim for _ in range(dim)]
    gap = None
    for i, mi in top:
        lead = Fraction(mi, i) == kappa
        for k in range(dim):
            for l in range(dim):
                if series[i][k][l].is_zero():
                    continue
                weight = a[k] - a[l]
                if lead and weight == mi:
                    y[k][l] = y[k][l] + series[i][k][l]
                else:
                    decay = i * kappa - weight
                    if gap is None or decay < gap:
                        gap = decay
    y = tuple(tuple(row) for row in y)
    if mat_is_zero(y):
        raise AssertionError("leading component cancelled to zero")
    if not mat_is_zero(_mat_power(y, dim)):
        raise AssertionError("leading direction is not nilpotent")
    return LeadingDirection(kappa=kappa, y=y, gap=gap, order=order)


def verify_leading_convergence(ld: LeadingDirection, phi: PolynomialMatrixCurve,
                               a_exponents, t_samples, s_samples) -> float:
    """Max over samples of || Ad a(t) Psi(s, t^-kappa) - Y(s) ||_inf, in floats."""
    a = tuple(int(v) for v in a_exponents)
    series = log_xi_series(phi, ld.order)
    dim = phi.rows
    worst = 0.0
    for s in s_samples:
        sf = float(s)
        y_vals = [[float(e(sf)) for e in row] for row in ld.y]
        psi_vals = [[[float(e(sf)) for e in row] for row in series[i]]
                    for i in range(ld.order + 1)]
        for t in t_samples:
            tf = float(t)
            xi = tf ** float(-ld.kappa)
            for k in range(dim):
                for l in range(dim):
                    acc = 0.0
                    p = xi
                    for i in range(1, ld.order + 1):
                        acc += p * psi_vals[i][k][l]
                        p *= xi
                    acc *= tf ** (a[k] - a[l])
                    worst = max(worst, abs(acc - y_vals[k][l]))
    return worst


# --- curve files ------------------------------------------------------------------


def curve_to_json(phi: PolynomialMatrixCurve) -> str:
    doc = {}
    if phi.is_square:
        doc["N"] = phi.rows
    else:
        doc["m"], doc["n"] = phi.rows, phi.cols
    doc["interval"] = [str(phi.interval[0]), str(phi.interval[1])]
    doc["entries"] = [[str(c) for c in e.coeffs] for row in phi.entries for e in row]
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def curve_from_json(text: str) -> PolynomialMatrixCurve:
    doc = json.loads(text)
    if "N" in doc:
        rows = cols = int(doc["N"])
    else:
        rows, cols = int(doc["m"]), int(doc["n"])
    flat = [Poly([Fraction(c) for c in coeffs]) for coeffs in doc["entries"]]
    if len(flat) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
    grid = tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows))
    a, b = (Fraction(x) for x in doc["interval"])
    return PolynomialMatrixCurve(rows, cols, grid, (a, b))


def load_curve(path) -> PolynomialMatrixCurve:
    with open(path, encoding="utf-8") as fh:
        return curve_from_json(fh.read())


def save_curve(phi: PolynomialMatrixCurve, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(curve_to_json(phi))


# --- helpers ----------------------------------------------------------------------


def _zero_mat(dim):
    return tuple(tuple(ZERO for _ in range(dim)) for _ in range(dim))


def _series_mul(a, b, order):
    """Product of xi-truncated series of matrices."""
    dim = len(a[0])
    out = []
    for k in range(order + 1):
        acc = [[ZERO] * dim for _ in range(dim)]
        for i in range(k + 1):
            ai, bj = a[i], b[k - i]
            if mat_is_zero(ai) or mat_is_zero(bj):
                continue
            prod = mat_mul(ai, bj)
            acc = [[x + y for x, y in zip(ra, rp)] for ra, rp in zip(acc, prod)]
        out.append(tuple(tuple(row) for row in acc))
    return out


def _mat_power(a, k):
    out = mat_identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out
