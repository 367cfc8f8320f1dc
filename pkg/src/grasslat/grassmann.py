"""Combinatorics of the Grassmannian Gr(m, m+n).

Schubert varieties are indexed by m-element subsets of {1, ..., m+n}
(minimal coset representatives, kept as sorted index tuples), ordered
componentwise (Bruhat order).  Pencils are the subvarieties

    P_{W,r} = { V : dim(V /\ W) >= r },

stored as (d, r) with W standardized to the coordinate subspace F_d;
a pencil is constraining when d/r < (m+n)/m and weakly constraining
at equality.  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from itertools import combinations


@dataclass(frozen=True)
class GrassSignature:
    """The (m, n) of Gr(m, m+n): m-planes in (m+n)-space."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def dim(self) -> int:
        return self.m + self.n


@dataclass(frozen=True)
class GrassPermutation:
    """Sorted index tuple (w_1 < ... < w_m) labelling a Schubert variety."""

    signature: GrassSignature
    indices: tuple[int, ...]

    def __post_init__(self):
        w = self.indices
        if len(w) != self.signature.m:
            raise ValueError(f"expected {self.signature.m} indices, got {len(w)}")
        if any(w[i] >= w[i + 1] for i in range(len(w) - 1)):
            raise ValueError("indices must be strictly increasing")
        if w[0] < 1 or w[-1] > self.signature.dim:
            raise ValueError(f"indices must lie in [1, {self.signature.dim}]")

    def label(self) -> str:
        sep = "" if self.signature.dim < 10 else ","
        return sep.join(str(i) for i in self.indices)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing parts fitting in the m x n box."""

    signature: GrassSignature
    parts: tuple[int, ...]

    def __post_init__(self):
        p = self.parts
        if len(p) != self.signature.m:
            raise ValueError(f"expected {self.signature.m} parts, got {len(p)}")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError("parts must weakly decrease")
        if p and (p[-1] < 0 or p[0] > self.signature.n):
            raise ValueError(f"parts must lie in [0, {self.signature.n}]")

    @property
    def size(self) -> int:
        return sum(self.parts)


class PencilKind(Enum):
    CONSTRAINING = "CONSTRAINING"
    WEAKLY_CONSTRAINING_ONLY = "WEAKLY_CONSTRAINING_ONLY"
    NOT_CONSTRAINING = "NOT_CONSTRAINING"


class NodeClass(Enum):
    UNSTABLE = "UNSTABLE"
    WEAKLY = "WEAKLY"
    NEITHER = "NEITHER"


@dataclass(frozen=True)
class Pencil:
    """P_{F_d, r}: m-planes meeting the d-dimensional coordinate subspace in >= r dims."""

    signature: GrassSignature
    d: int
    r: int

    def __post_init__(self):
        if not 1 <= self.d <= self.signature.dim - 1:
            raise ValueError(f"d must lie in [1, {self.signature.dim - 1}]")
        if not 1 <= self.r <= min(self.signature.m, self.d):
            raise ValueError("r must lie in [1, min(m, d)]")


def enumerate_wp(sig: GrassSignature) -> list[GrassPermutation]:
    """All C(m+n, m) index tuples, lexicographically."""
    return [GrassPermutation(sig, c)
            for c in combinations(range(1, sig.dim + 1), sig.m)]


def bruhat_leq(w: GrassPermutation, v: GrassPermutation) -> bool:
    """Componentwise order on sorted tuples (closure order of Schubert cells)."""
    if w.signature != v.signature:
        raise ValueError("signature mismatch")
    return all(a <= b for a, b in zip(w.indices, v.indices))


def dimension(w: GrassPermutation) -> int:
    """dim X_w = sum (w_k - k)."""
    return sum(wk - k for k, wk in enumerate(w.indices, start=1))


def to_partition(w: GrassPermutation) -> Partition:
    """lambda_i = n + i - w_i (codimension shape inside the m x n box)."""
    n = w.signature.n
    return Partition(w.signature,
                     tuple(n + i - wi for i, wi in enumerate(w.indices, start=1)))


def from_partition(lam: Partition) -> GrassPermutation:
    n = lam.signature.n
    return GrassPermutation(lam.signature,
                            tuple(n + i - li for i, li in enumerate(lam.parts, start=1)))


def outside_corners(lam: Partition) -> list[tuple[int, int]]:
    """Boxes (row i, column lambda_i) whose removal leaves a Young diagram."""
    p = lam.parts
    m = len(p)
    corners = []
    for i in range(m):
        nxt = p[i + 1] if i + 1 < m else 0
        if p[i] > 0 and p[i] > nxt:
            corners.append((i + 1, p[i]))
    return corners


def is_pencil(lam: Partition) -> bool:
    """A Schubert variety is a pencil iff its diagram has exactly one outside corner."""
    return len(outside_corners(lam)) == 1


def classify_pencil(p: Pencil) -> PencilKind:
    """Exact comparison of m*d against (m+n)*r."""
    lhs = p.signature.m * p.d
    rhs = p.signature.dim * p.r
    if lhs < rhs:
        return PencilKind.CONSTRAINING
    if lhs == rhs:
        return PencilKind.WEAKLY_CONSTRAINING_ONLY
    return PencilKind.NOT_CONSTRAINING


def pencil_to_permutation(p: Pencil) -> GrassPermutation:
    """Index tuple of the Schubert variety equal to P_{F_d, r}.

    The diagram is a (n + r - d) x r rectangle, i.e. the tuple
    (d-r+1, ..., d, n+r+1, ..., m+n).  When d >= n + r the membership
    condition holds for every m-plane and the result is the top cell.
    """
    sig = p.signature
    c = max(sig.n + p.r - p.d, 0)
    lam = Partition(sig, (c,) * p.r + (0,) * (sig.m - p.r))
    return from_partition(lam)


def best_pencil(w: GrassPermutation) -> tuple[Pencil, PencilKind] | None:
    """Standard pencil of minimal slope containing X_w.

    Among k with w_k < m+n, minimize w_k / k (ties to the smallest k) and
    return P_{F_{w_k}, k}.  For the top cell (n+1, ..., m+n) no slope
    minimizer yields a proper containing pencil and None is returned.
    """
    sig = w.signature
    top = tuple(range(sig.n + 1, sig.dim + 1))
    if w.indices == top:
        return None
    best_k = None
    for k, wk in enumerate(w.indices, start=1):
        if wk >= sig.dim:
            continue
        if best_k is None or wk * best_k[0] < best_k[1] * k:
            best_k = (k, wk)
    k, d = best_k
    p = Pencil(sig, d=d, r=k)
    return p, classify_pencil(p)


def list_pencils(sig: GrassSignature,
                 kind: PencilKind | None = None,
                 maximal_only: bool = False) -> list[tuple[Pencil, GrassPermutation]]:
    """Enumerate the standard pencils (d, r), optionally filtered and pruned.

    With maximal_only, entries whose Schubert variety sits strictly below
    another listed one in Bruhat order are dropped.
    """
    items = []
    for d in range(1, sig.dim):
        for r in range(1, min(sig.m, d) + 1):
            p = Pencil(sig, d, r)
            if kind is not None and classify_pencil(p) != kind:
                continue
            items.append((p, pencil_to_permutation(p)))
    if maximal_only:
        items = [
            (p, w) for (p, w) in items
            if not any(w != v and bruhat_leq(w, v) for (_, v) in items)
        ]
    return items


def dual_pencil(p: Pencil) -> Pencil:
    """The annihilator pencil (m+n-d, m-r) in the dual Grassmannian.

    Swaps the two slope conventions: the dual is constraining exactly
    when m*d > (m+n)*r.  Undefined at r = m.
    """
    if p.r >= p.signature.m:
        raise ValueError("dual_pencil requires r < m")
    return Pencil(p.signature, d=p.signature.dim - p.d, r=p.signature.m - p.r)


def hasse_edges(sig: GrassSignature) -> list[tuple[GrassPermutation, GrassPermutation]]:
    """Covering pairs (w', w) of the Bruhat order.

    In the componentwise order on index tuples, w covers w' exactly when w
    is w' with a single index bumped by one.
    """
    edges = []
    for w in enumerate_wp(sig):
        idx = set(w.indices)
        for pos, wi in enumerate(w.indices):
            if wi + 1 <= sig.dim and wi + 1 not in idx:
                upper = list(w.indices)
                upper[pos] = wi + 1
                edges.append((w, GrassPermutation(sig, tuple(upper))))
    edges.sort(key=lambda e: (e[0].indices, e[1].indices))
    return edges


def node_grid(sig: GrassSignature) -> list[list[NodeClass]]:
    """Classes of the lattice nodes of the m x n box, as grid[y][x].

    x runs left to right in [0, n], y top to bottom in [0, m]; the diagonal
    joins (n, 0) to (0, m).  A node is UNSTABLE strictly below the diagonal
    (m*x + n*y > m*n) and WEAKLY on it.
    """
    m, n = sig.m, sig.n
    grid = []
    for y in range(m + 1):
        row = []
        for x in range(n + 1):
            v = m * x + n * y - m * n
            row.append(NodeClass.UNSTABLE if v > 0
                       else NodeClass.WEAKLY if v == 0
                       else NodeClass.NEITHER)
        grid.append(row)
    return grid


# --- exports -------------------------------------------------------------------


def hasse_dot(sig: GrassSignature, annotate_class=None) -> str:
    """DOT digraph of the covering relation, edges from lower to higher.

    annotate_class, if given, maps a GrassPermutation to a string appended
    to its node label.
    """
    lines = ["digraph bruhat {"]
    for w in enumerate_wp(sig):
        label = f"X_{{{w.label()}}} [dim={dimension(w)}]"
        if annotate_class is not None:
            label += f" [{annotate_class(w)}]"
        lines.append(f'  "{w.label()}" [label="{label}"];')
    for lo, hi in hasse_edges(sig):
        lines.append(f'  "{lo.label()}" -> "{hi.label()}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


CSV_COLUMNS = ("m", "n", "w", "lambda", "dimension",
               "pencil_d", "pencil_r", "pencil_kind")


def classification_rows(sig: GrassSignature) -> list[dict]:
    """One row per Schubert variety with its best containing standard pencil."""
    rows = []
    for w in enumerate_wp(sig):
        bp = best_pencil(w)
        rows.append(_row(w, *(bp if bp is not None else (None, None))))
    return rows


def pencil_rows(sig: GrassSignature,
                kind: PencilKind | None = None,
                maximal_only: bool = False) -> list[dict]:
    """One row per enumerated pencil."""
    return [_row(w, p, classify_pencil(p))
            for p, w in list_pencils(sig, kind, maximal_only)]


def _row(w: GrassPermutation, p: Pencil | None, kind: PencilKind | None) -> dict:
    lam = to_partition(w)
    return {
        "m": w.signature.m,
        "n": w.signature.n,
        "w": ";".join(str(i) for i in w.indices),
        "lambda": ";".join(str(i) for i in lam.parts),
        "dimension": dimension(w),
        "pencil_d": p.d if p is not None else "",
        "pencil_r": p.r if p is not None else "",
        "pencil_kind": kind.value if kind is not None else "",
    }


def rows_to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
