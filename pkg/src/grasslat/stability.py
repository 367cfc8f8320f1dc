"""Unstable / weakly unstable Schubert varieties for a(t) = diag(t^n,...,t^-m,...).

X_w is unstable when some dominant sum-zero integer vector (t_1 >= ... >= t_N,
sum 0) has sum_{j} t_{w_j} > 0, and weakly unstable when a nontrivial such
vector achieves >= 0.  Three procedures decide this independently:

  * classify_combinatorial -- the slope test  m * w_i  vs  (m+n) * i;
  * classify_by_rays       -- feasibility over the generating rays of the
                              dominant sum-zero cone;
  * classify_brute_force   -- finite search of the integer box, the oracle.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum

from .grassmann import GrassPermutation, GrassSignature, bruhat_leq, enumerate_wp


@dataclass(frozen=True)
class Cocharacter:
    """Integer vector with entry sum zero (a one-parameter diagonal subgroup)."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if sum(self.entries) != 0:
            raise ValueError("cocharacter entries must sum to zero")

    @property
    def is_dominant(self) -> bool:
        e = self.entries
        return all(e[i] >= e[i + 1] for i in range(len(e) - 1))

    @property
    def is_trivial(self) -> bool:
        return all(x == 0 for x in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


class StabilityClass(Enum):
    UNSTABLE = "UNSTABLE"
    WEAKLY_UNSTABLE_ONLY = "WEAKLY_UNSTABLE_ONLY"
    NOT_WEAKLY_UNSTABLE = "NOT_WEAKLY_UNSTABLE"


class CertificateMethod(Enum):
    COMBINATORIAL = "COMBINATORIAL"
    EXTREME_RAY = "EXTREME_RAY"
    BRUTE_FORCE = "BRUTE_FORCE"


@dataclass(frozen=True)
class StabilityCertificate:
    status: StabilityClass
    witness: Cocharacter | None
    method: CertificateMethod


def a_weight_vector(sig: GrassSignature) -> tuple[int, ...]:
    """(n, ..., n, -m, ..., -m): the exponents of the expanding flow."""
    return (sig.n,) * sig.m + (-sig.m,) * sig.n


def pairing_with_aw(delta: Cocharacter, w: GrassPermutation) -> int:
    """sum of delta over the index set of w; same sign as (delta, a^w).

    The invariant pairing of delta with the permuted weight vector a^w is
    (m+n)^2 * sum_{i in I_w} delta_i once sum delta_i = 0, so the sign is
    all that survives and the bare sum is returned.
    """
    if len(delta) != w.signature.dim:
        raise ValueError("cocharacter length does not match the signature")
    return sum(delta.entries[i - 1] for i in w.indices)


def extreme_ray(k: int, dim: int) -> Cocharacter:
    """Generator ((N-k)^k, (-k)^(N-k)) of the k-th edge of the dominant cone."""
    if not 1 <= k <= dim - 1:
        raise ValueError(f"k must lie in [1, {dim - 1}]")
    return Cocharacter(((dim - k),) * k + ((-k),) * (dim - k))


def witness_satisfies(w: GrassPermutation, delta: Cocharacter, strict: bool) -> bool:
    """Direct substitution into the feasibility system for X_w."""
    if not delta.is_dominant or delta.is_trivial:
        return False
    val = pairing_with_aw(delta, w)
    return val > 0 if strict else val >= 0


def classify_by_rays(w: GrassPermutation) -> StabilityCertificate:
    """Decide by maximizing the pairing over the cone's generating rays.

    Every dominant sum-zero vector is a nonnegative combination of the rays,
    and the pairing is linear, so positivity (resp. nonnegativity) is
    achieved on the cone iff it is achieved on a ray.
    """
    dim = w.signature.dim
    best_val = None
    best_ray = None
    for k in range(1, dim):
        ray = extreme_ray(k, dim)
        val = pairing_with_aw(ray, w)
        if best_val is None or val > best_val:
            best_val, best_ray = val, ray
    if best_val > 0:
        status = StabilityClass.UNSTABLE
    elif best_val == 0:
        status = StabilityClass.WEAKLY_UNSTABLE_ONLY
    else:
        status = StabilityClass.NOT_WEAKLY_UNSTABLE
        best_ray = None
    return StabilityCertificate(status, best_ray, CertificateMethod.EXTREME_RAY)


def classify_combinatorial(w: GrassPermutation) -> StabilityClass:
    """Slope test: unstable iff m*w_i < (m+n)*i for some i.

    The weak test additionally requires w_i < m+n; without that restriction
    the top cell would be misclassified through the vacuous equality at i = m.
    """
    m, dim = w.signature.m, w.signature.dim
    strict = any(m * wi < dim * i for i, wi in enumerate(w.indices, start=1))
    if strict:
        return StabilityClass.UNSTABLE
    weak = any(wi < dim and m * wi <= dim * i
               for i, wi in enumerate(w.indices, start=1))
    return (StabilityClass.WEAKLY_UNSTABLE_ONLY if weak
            else StabilityClass.NOT_WEAKLY_UNSTABLE)


def dominant_sum_zero_vectors(dim: int, bound: int):
    """Yield all weakly decreasing integer tuples in [-bound, bound]^dim, sum 0."""

    def rec(prefix, remaining, total):
        if remaining == 0:
            if total == 0:
                yield tuple(prefix)
            return
        hi = min(prefix[-1] if prefix else bound, -total + bound * (remaining - 1))
        for t in range(hi, -bound - 1, -1):
            # remaining-1 entries each in [-bound, t] must sum to -(total + t)
            rest = -(total + t)
            if rest > t * (remaining - 1) or rest < -bound * (remaining - 1):
                continue
            prefix.append(t)
            yield from rec(prefix, remaining - 1, total + t)
            prefix.pop()

    yield from rec([], dim, 0)


def classify_brute_force(w: GrassPermutation, bound: int) -> StabilityCertificate:
    """Exhaustive search of the dominant sum-zero box [-bound, bound]^N.

    Complete for the searched box only; bound = m+n always suffices for a
    correct class because the ray witnesses live in that box.  Returns the
    first strict witness in enumeration order, else the first weak one.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    weak_witness = None
    for entries in dominant_sum_zero_vectors(w.signature.dim, bound):
        if all(x == 0 for x in entries):
            continue
        delta = Cocharacter(entries)
        val = pairing_with_aw(delta, w)
        if val > 0:
            return StabilityCertificate(StabilityClass.UNSTABLE, delta,
                                        CertificateMethod.BRUTE_FORCE)
        if val == 0 and weak_witness is None:
            weak_witness = delta
    if weak_witness is not None:
        return StabilityCertificate(StabilityClass.WEAKLY_UNSTABLE_ONLY,
                                    weak_witness, CertificateMethod.BRUTE_FORCE)
    return StabilityCertificate(StabilityClass.NOT_WEAKLY_UNSTABLE, None,
                                CertificateMethod.BRUTE_FORCE)


def check_lemma_monotonicity(sig: GrassSignature, delta: Cocharacter) -> bool:
    """Pairing is antitone along Bruhat order: w' <= w forces (delta,a^w') >= (delta,a^w)."""
    if not delta.is_dominant:
        raise ValueError("delta must be dominant")
    wp = enumerate_wp(sig)
    vals = {w: pairing_with_aw(delta, w) for w in wp}
    for w in wp:
        for v in wp:
            if bruhat_leq(w, v) and vals[w] < vals[v]:
                return False
    return True


SWEEP_COLUMNS = ("m", "n", "w", "class", "witness", "method")


def sweep_rows(sig: GrassSignature) -> list[dict]:
    """Classification of every Schubert variety, with certificates."""
    rows = []
    for w in enumerate_wp(sig):
        cert = classify_by_rays(w)
        rows.append({
            "m": sig.m,
            "n": sig.n,
            "w": ";".join(str(i) for i in w.indices),
            "class": cert.status.value,
            "witness": (";".join(str(x) for x in cert.witness.entries)
                        if cert.witness is not None else ""),
            "method": cert.method.value,
        })
    return rows


def sweep_csv(sig: GrassSignature) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(SWEEP_COLUMNS), lineterminator="\n")
    writer.writeheader()
    writer.writerows(sweep_rows(sig))
    return buf.getvalue()
