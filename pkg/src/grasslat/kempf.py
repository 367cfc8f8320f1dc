"""Numerical instability of torus weight configurations (Kempf's optimization).

A vector with active weight set {chi} is destabilized by the diagonal
one-parameter subgroup delta minimizing

    max_chi <chi, delta>  /  ||delta||,     ||delta|| = sqrt(N * sum delta_i^2),

over nontrivial sum-zero delta.  Projecting the weights onto the sum-zero
hyperplane turns this into a nearest-point problem: the minimum equals
-dist(0, hull) / sqrt(N) and the optimal direction is minus the nearest
point.  The nearest point is found exactly in rational arithmetic.

The optimization here is over the fixed diagonal torus only; conjugating
into general position is out of scope, so the result is exact for
torus-stable weight configurations and torus-relative otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .stability import Cocharacter


@dataclass(frozen=True)
class WeightedVector:
    """Active integer weight support of a vector in a torus representation."""

    dim: int
    active_weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.active_weights:
            raise ValueError("active weight set must be non-empty")
        if len(set(self.active_weights)) != len(self.active_weights):
            raise ValueError("duplicate weights")
        for chi in self.active_weights:
            if len(chi) != self.dim:
                raise ValueError("weight length does not match dim")

    @staticmethod
    def of(dim: int, weights) -> "WeightedVector":
        return WeightedVector(dim, tuple(sorted(tuple(w) for w in weights)))


class DestabilizerStatus(Enum):
    SEMISTABLE = "SEMISTABLE"
    UNSTABLE = "UNSTABLE"


@dataclass(frozen=True)
class DestabilizerResult:
    status: DestabilizerStatus
    # negative of the squared optimum: b_value = -sqrt(b_squared); exact
    b_squared: Fraction | None
    delta_star: Cocharacter | None

    @property
    def b_value(self) -> float | None:
        if self.b_squared is None:
            return None
        return -math.sqrt(self.b_squared)

    @property
    def b_exact(self) -> Fraction | None:
        """The optimum as an exact rational, when the square root is rational."""
        if self.b_squared is None:
            return None
        p, q = self.b_squared.numerator, self.b_squared.denominator
        rp, rq = math.isqrt(p), math.isqrt(q)
        if rp * rp == p and rq * rq == q:
            return Fraction(-rp, rq)
        return None


def pairing(chi, delta) -> int:
    """<chi, delta> = sum chi_i delta_i (delta must be sum-zero)."""
    d = _entries(delta)
    if len(chi) != len(d):
        raise ValueError("dimension mismatch")
    return sum(c * t for c, t in zip(chi, d))


def killing_norm(delta) -> float:
    """sqrt(N * sum delta_i^2), from Trace(ad^2) = 2N sum delta_i^2 on sl_N."""
    d = _entries(delta)
    return math.sqrt(len(d) * sum(x * x for x in d))


def numerical_m(v: WeightedVector, delta) -> int:
    """Largest weight pairing over the active support."""
    return max(pairing(chi, delta) for chi in v.active_weights)


def in_v_minus(v: WeightedVector, a) -> bool:
    """All active weights strictly contracted by a(t) as t -> infinity."""
    return all(pairing(chi, a) < 0 for chi in v.active_weights)


def in_v_zero_minus(v: WeightedVector, a) -> bool:
    """No active weight expanded by a(t): the limit along a(t) exists."""
    return all(pairing(chi, a) <= 0 for chi in v.active_weights)


def optimal_destabilizer(v: WeightedVector) -> DestabilizerResult:
    """Best torus destabilizer of v, with an exact certificate.

    SEMISTABLE iff the origin lies in the convex hull of the projected
    weights; otherwise b_squared = ||p*||^2 / N for the nearest point p*
    and delta_star is the primitive integer vector along -p*, satisfying
    numerical_m(v, delta_star) / killing_norm(delta_star) = -sqrt(b_squared)
    exactly.
    """
    n = v.dim
    projected = []
    for chi in v.active_weights:
        mean = Fraction(sum(chi), n)
        projected.append(tuple(Fraction(c) - mean for c in chi))
    p_star = min_norm_point(projected)
    norm_sq = sum(x * x for x in p_star)
    if norm_sq == 0:
        return DestabilizerResult(DestabilizerStatus.SEMISTABLE, None, None)
    scale = math.lcm(*(x.denominator for x in p_star))
    ints = [-(x * scale) for x in p_star]
    g = math.gcd(*(x.numerator for x in ints))
    delta = Cocharacter(tuple(int(x / g) for x in ints))
    return DestabilizerResult(DestabilizerStatus.UNSTABLE,
                              Fraction(norm_sq, n), delta)


# --- exact nearest point of the origin in a convex hull -------------------------


def min_norm_point(points: list[tuple[Fraction, ...]]) -> tuple[Fraction, ...]:
    """Euclidean-nearest point to the origin in conv(points), exactly.

    The optimum lies in the convex hull of some affinely independent subset
    S and is the orthogonal projection of the origin onto aff(S); a candidate
    is the global optimum iff <p, candidate> >= ||candidate||^2 for every
    input point.  Subsets are searched smallest-first, seeded by a floating
    point Gilbert iteration that usually names the right support at once.
    """
    dim = len(points[0])
    max_size = min(len(points), dim + 1)

    for idx in _support_guesses(points, max_size):
        cand = _project_origin(points, idx)
        if cand is not None and _is_global(points, cand):
            return cand
    for size in range(1, max_size + 1):
        for idx in combinations(range(len(points)), size):
            cand = _project_origin(points, idx)
            if cand is not None and _is_global(points, cand):
                return cand
    raise AssertionError("nearest-point search exhausted without a certificate")


def _support_guesses(points, max_size):
    approx = _gilbert(points)
    if approx is None:
        return
    vals = [sum(float(c) * a for c, a in zip(p, approx)) for p in points]
    lo = min(vals)
    spread = max(max(vals) - lo, 1.0)
    active = [i for i, t in enumerate(vals) if t <= lo + 1e-9 * spread + 1e-12]
    if len(active) > max_size + 3:
        return
    for size in range(1, min(len(active), max_size) + 1):
        yield from combinations(active, size)


def _gilbert(points, iters: int = 200):
    """Float Frank-Wolfe pre-filter for the support of the nearest point."""
    pts = [[float(c) for c in p] for p in points]
    x = min(pts, key=lambda p: sum(c * c for c in p))[:]
    for _ in range(iters):
        p = min(pts, key=lambda q: sum(a * b for a, b in zip(q, x)))
        d = [a - b for a, b in zip(p, x)]
        dd = sum(c * c for c in d)
        if dd < 1e-30:
            break
        gamma = -sum(a * b for a, b in zip(x, d)) / dd
        if gamma <= 0:
            break
        gamma = min(gamma, 1.0)
        x = [a + gamma * b for a, b in zip(x, d)]
    return x


def _project_origin(points, idx):
    """Projection of 0 onto aff(points[idx]) if it lies in conv(points[idx])."""
    base = points[idx[0]]
    diffs = [tuple(a - b for a, b in zip(points[i], base)) for i in idx[1:]]
    k = len(diffs)
    if k == 0:
        return base
    gram = [[sum(a * b for a, b in zip(diffs[i], diffs[j])) for j in range(k)]
            for i in range(k)]
    rhs = [-sum(a * b for a, b in zip(base, diffs[i])) for i in range(k)]
    coeffs = _solve_fraction(gram, rhs)
    if coeffs is None:  # affinely dependent subset: redundant, skip
        return None
    if any(c < 0 for c in coeffs) or sum(coeffs) > 1:
        return None
    out = list(base)
    for c, d in zip(coeffs, diffs):
        for i in range(len(out)):
            out[i] += c * d[i]
    return tuple(out)


def _is_global(points, cand):
    bound = sum(x * x for x in cand)
    return all(sum(a * b for a, b in zip(p, cand)) >= bound for p in points)


def _solve_fraction(mat, rhs):
    """Gaussian elimination over Fractions; None when singular."""
    n = len(mat)
    aug = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _entries(delta):
    if isinstance(delta, Cocharacter):
        return delta.entries
    t = tuple(delta)
    if sum(t) != 0:
        raise ValueError("vector must sum to zero")
    return t
