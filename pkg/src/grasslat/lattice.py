"""Translated unimodular lattices and their shortest-vector statistics.

The lattice attached to an m x n curve phi at parameters (s, t) is spanned
by the columns of diag(t^n I_m, t^-m I_n) . [[I, phi(s)], [0, I]].  Its
sup-norm systole delta_sup (smallest sup norm of a nonzero vector) measures
how deep the lattice sits in the cusp; Siegel counts measure how equidistributed
it looks.  Basis arithmetic runs at 96-bit precision; shortest vectors and
point counts are exact enumerations over integer coefficient vectors,
with all norm comparisons padded by 1e-9 relative slack.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from mpmath import mp, mpf

from .curves import PolynomialMatrixCurve, load_curve

PRECISION = 96
PAD = 1e-9
MAX_DIM = 8


@dataclass(frozen=True)
class LatticeBasis:
    """Columns of a full-rank basis, high-precision entries."""

    dim: int
    columns: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.columns) != self.dim or any(len(c) != self.dim for c in self.columns):
            raise ValueError("basis must be a square column collection")

    def vector(self, coeffs):
        """The lattice vector with the given integer coefficients."""
        with mp.workprec(PRECISION):
            return tuple(
                sum(c * col[i] for c, col in zip(coeffs, self.columns))
                for i in range(self.dim))

    def det(self):
        with mp.workprec(PRECISION):
            _, bstar_sq = _gram_schmidt([list(c) for c in self.columns])
            out = mpf(1)
            for v in bstar_sq:
                out *= mp.sqrt(v)
            return out  # |det|


@dataclass(frozen=True)
class SimulationRecord:
    s: Fraction
    t: float
    delta_sup: float
    shortest: tuple[int, ...]
    siegel_counts: dict


def basis_from_columns(columns) -> LatticeBasis:
    with mp.workprec(PRECISION):
        cols = tuple(tuple(_to_mpf(x) for x in col) for col in columns)
    return LatticeBasis(len(cols), cols)


def translated_basis(phi: PolynomialMatrixCurve, s, t) -> LatticeBasis:
    """Columns of a(t) . [[I, phi(s)], [0, I]] at exact rational s."""
    s = Fraction(s)
    lo, hi = phi.interval
    if not lo <= s <= hi:
        raise ValueError(f"s = {s} outside the curve interval [{lo}, {hi}]")
    m, n = phi.rows, phi.cols
    vals = phi.at(s)
    with mp.workprec(PRECISION):
        t = _to_mpf(t)
        if not t > 0:
            raise ValueError("t must be positive")
        tn, tm = t ** n, t ** (-m)
        cols = []
        for j in range(m):
            cols.append(tuple(tn if i == j else mpf(0) for i in range(m))
                        + tuple(mpf(0) for _ in range(n)))
        for j in range(n):
            top = tuple(tn * _to_mpf(vals[i][j]) for i in range(m))
            cols.append(top + tuple(tm if i == j else mpf(0) for i in range(n)))
    return LatticeBasis(m + n, tuple(cols))


def lll_reduce(basis: LatticeBasis, delta: float = 0.99) -> LatticeBasis:
    """Lovasz-reduced basis of the same lattice."""
    with mp.workprec(PRECISION):
        cols, _ = _lll([list(c) for c in basis.columns], delta)
    return LatticeBasis(basis.dim, tuple(tuple(c) for c in cols))


def shortest_sup(basis: LatticeBasis):
    """(delta_sup, coefficients) of a sup-norm-shortest nonzero vector.

    Exact over integer coefficient vectors: every candidate with
    ||v||_2 <= sqrt(N) * (best known sup norm) is enumerated.  Ties are
    broken by lexicographically smallest coefficients after normalizing
    the sign so the first nonzero coefficient is positive.
    """
    _check_dim(basis.dim)
    with mp.workprec(PRECISION):
        cols, u = _lll([list(c) for c in basis.columns])
        return _shortest_from_reduced(cols, u)


def siegel_count(basis: LatticeBasis, radius) -> int:
    """Number of nonzero lattice vectors of sup norm <= radius, by enumeration."""
    _check_dim(basis.dim)
    if not radius > 0:
        raise ValueError("radius must be positive")
    with mp.workprec(PRECISION):
        cols, _ = _lll([list(c) for c in basis.columns])
        return _count_from_reduced(cols, _to_mpf(radius))


def simulate(phi: PolynomialMatrixCurve, s_grid, t_grid, radii=()) -> list[SimulationRecord]:
    """One record per (s, t), ordered by (s index, t index)."""
    if not s_grid or not t_grid:
        raise ValueError("grids must be non-empty")
    records = []
    for s in s_grid:
        for t in t_grid:
            basis = translated_basis(phi, s, t)
            with mp.workprec(PRECISION):
                cols, u = _lll([list(c) for c in basis.columns])
                dsup, coeffs = _shortest_from_reduced(cols, u)
                counts = {r: _count_from_reduced(cols, _to_mpf(r)) for r in radii}
            records.append(SimulationRecord(
                s=Fraction(s), t=float(t), delta_sup=dsup,
                shortest=coeffs, siegel_counts=counts))
    return records


def nondivergence_statistic(records, epsilon) -> dict:
    """Per-t fraction of s samples with delta_sup >= epsilon (exact fractions)."""
    by_t = {}
    for rec in records:
        by_t.setdefault(rec.t, []).append(rec.delta_sup)
    return {t: Fraction(sum(1 for d in vals if d >= epsilon), len(vals))
            for t, vals in sorted(by_t.items())}


def dt_statistic(records, mu, mu_prime=None) -> Fraction:
    """Fraction of s judged not improvable at threshold mu'.

    A sample s counts when delta_sup(s, t) > mu' for at least one t in the
    top half of the t-grid (finite-horizon stand-in for "arbitrarily large
    scales").  Samples whose best value ties mu' exactly are boundary cases
    and are excluded from the denominator.
    """
    if not 0 < mu < 1:
        raise ValueError("mu must lie in (0, 1)")
    thr = float(mu if mu_prime is None else mu_prime)
    ts = sorted({rec.t for rec in records})
    top = set(ts[len(ts) // 2:])
    best = {}
    for rec in records:
        if rec.t in top:
            cur = best.get(rec.s)
            best[rec.s] = rec.delta_sup if cur is None else max(cur, rec.delta_sup)
    hits = considered = 0
    tol = 1e-12 * max(1.0, abs(thr))
    for val in best.values():
        if abs(val - thr) <= tol:
            continue  # boundary: exactly at the threshold
        considered += 1
        if val > thr:
            hits += 1
    return Fraction(hits, considered) if considered else Fraction(0)


# --- grids, config, report -------------------------------------------------------


def s_grid_linear(a, b, count: int) -> list[Fraction]:
    a, b = Fraction(a), Fraction(b)
    if count < 1:
        raise ValueError("count must be >= 1")
    if count == 1:
        return [a]
    step = (b - a) / (count - 1)
    return [a + k * step for k in range(count)]


def t_grid_geometric(start, ratio, count: int) -> list[float]:
    if count < 1:
        raise ValueError("count must be >= 1")
    if not (start > 0 and ratio > 0):
        raise ValueError("start and ratio must be positive")
    return [float(start) * float(ratio) ** k for k in range(count)]


@dataclass(frozen=True)
class SimulationConfig:
    curve_path: str
    s_grid: list[Fraction]
    t_grid: list[float]
    radii: tuple
    mu: float
    mu_prime: float
    epsilon: float

    def load_curve(self) -> PolynomialMatrixCurve:
        return load_curve(self.curve_path)


def load_config(path) -> SimulationConfig:
    path = Path(path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    sg = doc["s_grid"]
    tg = doc["t_grid"]
    mu = float(doc.get("mu", 0.5))
    return SimulationConfig(
        curve_path=str((path.parent / doc["curve"])),
        s_grid=s_grid_linear(Fraction(sg["from"]), Fraction(sg["to"]), int(sg["count"])),
        t_grid=t_grid_geometric(float(tg["from"]), float(tg["ratio"]), int(tg["count"])),
        radii=tuple(float(r) for r in doc.get("radii", ())),
        mu=mu,
        mu_prime=float(doc.get("mu_prime", mu)),
        epsilon=float(doc.get("epsilon", 0.01)),
    )


def report_csv(records, radii) -> str:
    header = ["s", "t", "delta_sup", "shortest_coeffs"]
    header += [f"count_R{i + 1}" for i in range(len(radii))]
    lines = [",".join(header)]
    for rec in records:
        row = [_sig12(float(rec.s)), _sig12(rec.t), _sig12(rec.delta_sup),
               ";".join(str(c) for c in rec.shortest)]
        row += [str(rec.siegel_counts[r]) for r in radii]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _sig12(x: float) -> str:
    return format(x, ".12g")


# --- numerical core ---------------------------------------------------------------


def _check_dim(dim: int):
    if dim > MAX_DIM:
        raise ValueError(f"dimension {dim} too large (enumeration supports <= {MAX_DIM})")


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def _gram_schmidt(cols):
    """Returns (mu, bstar_sq); raises on numerically rank-deficient input."""
    n = len(cols)
    scale = max(max(abs(x) for x in c) for c in cols)
    bstar = []
    bstar_sq = []
    mu = [[mpf(0)] * n for _ in range(n)]
    for i in range(n):
        v = list(cols[i])
        for j in range(i):
            mu[i][j] = _dot(cols[i], bstar[j]) / bstar_sq[j]
            v = [a - mu[i][j] * b for a, b in zip(v, bstar[j])]
        sq = _dot(v, v)
        if sq <= (scale * mpf(1e-24)) ** 2:
            raise ValueError("basis is rank-deficient")
        bstar.append(v)
        bstar_sq.append(sq)
    return mu, bstar_sq


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _lll(cols, delta: float = 0.99):
    """LLL reduction of the column list; returns (reduced, U) with cols . U = reduced.

    U is an exact integer matrix (rows indexed like the input columns) so
    reduced[j] = sum_i U[i][j] * cols[i].
    """
    n = len(cols)
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    mu, bstar_sq = _gram_schmidt(cols)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = int(mp.nint(mu[k][j]))
            if q:
                cols[k] = [a - q * b for a, b in zip(cols[k], cols[j])]
                for i in range(n):
                    u[i][k] -= q * u[i][j]
                for l in range(j + 1):
                    mu[k][l] -= q * mu[j][l] if l < j else q
        if bstar_sq[k] >= (delta - mu[k][k - 1] ** 2) * bstar_sq[k - 1]:
            k += 1
        else:
            cols[k], cols[k - 1] = cols[k - 1], cols[k]
            for i in range(n):
                u[i][k], u[i][k - 1] = u[i][k - 1], u[i][k]
            mu, bstar_sq = _gram_schmidt(cols)
            k = max(k - 1, 1)
    return cols, u


def _enumerate_half_ball(cols, radius):
    """Integer coefficient vectors c != 0 with ||cols . c||_2 <= radius.

    Exactly one of each +-c pair is produced (the highest-index nonzero
    coefficient is positive).
    """
    n = len(cols)
    mu, bstar_sq = _gram_schmidt(cols)
    r_sq = radius * radius
    coeffs = [0] * n
    out = []

    def descend(level, used, all_zero_above):
        if level < 0:
            if not all_zero_above:
                out.append(tuple(coeffs))
            return
        center = -sum(mu[i][level] * coeffs[i] for i in range(level + 1, n))
        budget = r_sq - used
        if budget < 0:
            return
        half_width = mp.sqrt(budget / bstar_sq[level])
        lo = int(mp.ceil(center - half_width))
        hi = int(mp.floor(center + half_width))
        if all_zero_above:
            lo = max(lo, 0)
        for c in range(lo, hi + 1):
            coeffs[level] = c
            d = c - center
            descend(level - 1, used + d * d * bstar_sq[level],
                    all_zero_above and c == 0)
        coeffs[level] = 0

    descend(n - 1, mpf(0), True)
    return out


def _sup(vec):
    return max(abs(x) for x in vec)


def _apply(cols, coeffs):
    n = len(cols)
    return [sum(coeffs[j] * cols[j][i] for j in range(n)) for i in range(n)]


def _shortest_from_reduced(cols, u):
    n = len(cols)
    bound = min(_sup(c) for c in cols)
    radius = mp.sqrt(n) * bound * (1 + PAD)
    best = None
    for c in _enumerate_half_ball(cols, radius):
        sup = _sup(_apply(cols, c))
        if sup > bound * (1 + PAD):
            continue
        orig = tuple(sum(u[i][j] * c[j] for j in range(n)) for i in range(n))
        for cand in (orig, tuple(-x for x in orig)):
            key = (sup, cand)
            if best is None or key < best:
                best = key
    sup, coeffs = best
    return float(sup), coeffs


def _count_from_reduced(cols, radius):
    n = len(cols)
    ball = mp.sqrt(n) * radius * (1 + PAD)
    cutoff = radius * (1 + PAD)
    count = 0
    for c in _enumerate_half_ball(cols, ball):
        if _sup(_apply(cols, c)) <= cutoff:
            count += 2
    return count
